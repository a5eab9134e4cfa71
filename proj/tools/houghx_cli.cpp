// Command-line pipeline driver: every stage of the oriented Hough pipeline
// is exposed as a subcommand so intermediates can be inspected on disk.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "houghx/gradient.hpp"
#include "houghx/hough.hpp"
#include "houghx/peaks.hpp"
#include "houghx/raster.hpp"
#include "houghx/rect.hpp"

namespace {

using namespace houghx;

struct PipelineOpts {
    double smooth_sigma = 0.0;
    double canny_high = 210.0;
    double canny_low = 0.0;        // 0 -> low_ratio * high
    double canny_low_ratio = 0.4;
    HoughParams hough;
    std::string mode = "extended"; // regular | oriented-regular | extended
    double peak_threshold = 0.5;
    double nms_theta = 5.0;
    double nms_rho = 5.0;
};

void add_edge_flags(CLI::App* cmd, PipelineOpts& o) {
    cmd->add_option("--sigma", o.smooth_sigma, "Gaussian pre-smoothing sigma (0 = off)");
    cmd->add_option("--canny-high", o.canny_high, "Canny upper threshold")->capture_default_str();
    cmd->add_option("--canny-low", o.canny_low, "Canny lower threshold (default 0.4 * high)");
    cmd->add_option("--canny-low-ratio", o.canny_low_ratio, "Lower threshold as a fraction of the upper")
        ->capture_default_str();
}

void add_hough_flags(CLI::App* cmd, PipelineOpts& o) {
    cmd->add_option("--delta-rho", o.hough.delta_rho, "rho bin width, px")->capture_default_str();
    cmd->add_option("--delta-theta", o.hough.delta_theta, "theta bin width, deg")->capture_default_str();
    cmd->add_option("--theta-window", o.hough.theta_window, "half-range around the gradient orientation, deg")
        ->capture_default_str();
    cmd->add_option("--mode", o.mode, "regular | oriented-regular | extended")->capture_default_str();
    cmd->add_flag_callback("--weight-magnitude",
                           [&o] { o.hough.weight_mode = WeightMode::magnitude; },
                           "weight votes by gradient magnitude instead of 1");
}

void add_peak_flags(CLI::App* cmd, PipelineOpts& o) {
    cmd->add_option("--peak-threshold", o.peak_threshold, "fraction of the accumulator maximum")
        ->capture_default_str();
    cmd->add_option("--nms-theta", o.nms_theta, "peak suppression half-width, deg")->capture_default_str();
    cmd->add_option("--nms-rho", o.nms_rho, "peak suppression half-width, px")->capture_default_str();
}

double low_threshold(const PipelineOpts& o) {
    return o.canny_low > 0 ? o.canny_low : o.canny_low_ratio * o.canny_high;
}

struct PipelineData {
    GrayImage img;
    GradientField grad;
    EdgeMap edges;
};

PipelineData run_edges(const std::string& input, const PipelineOpts& o) {
    GrayImage img = read_pgm_file(input);
    GradientField grad = sobel(img, o.smooth_sigma);
    EdgeMap edges = canny_edges(grad, o.canny_high, low_threshold(o));
    return {std::move(img), std::move(grad), std::move(edges)};
}

Accumulator run_hough(const PipelineData& d, const PipelineOpts& o) {
    if (o.mode == "regular") {
        const auto geom = AccumulatorGeometry::for_image(d.img.width(), d.img.height(),
                                                         HoughMode::regular, o.hough);
        return accumulate_full(d.edges, geom, o.hough, &d.grad);
    }
    const HoughMode mode = o.mode == "extended" ? HoughMode::extended : HoughMode::regular;
    if (o.mode != "extended" && o.mode != "oriented-regular")
        throw std::invalid_argument("unknown --mode '" + o.mode + "'");
    const auto geom = AccumulatorGeometry::for_image(d.img.width(), d.img.height(), mode, o.hough);
    return accumulate_oriented(d.edges, d.grad, geom, o.hough);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line and rectangle detection via the gradient-oriented extended Hough transform"};
    app.require_subcommand(1);

    PipelineOpts opts;

    // synth
    SceneSpec spec;
    spec.width = 200;
    spec.height = 200;
    std::string scene_kind = "stripe";
    std::vector<std::vector<double>> rect_args;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "generate a synthetic test scene PGM");
    synth->add_option("--kind", scene_kind, "stripe | rectangle | step | dot")->capture_default_str();
    synth->add_option("--width", spec.width)->capture_default_str();
    synth->add_option("--height", spec.height)->capture_default_str();
    synth->add_option("--angle", spec.angle_deg, "stripe/step direction, deg");
    synth->add_option("--thickness", spec.thickness, "stripe thickness, px")->capture_default_str();
    synth->add_option("--offset", spec.offset, "stripe offset from center along its normal, px");
    synth->add_option("--bright", spec.bright)->default_str("255");
    synth->add_option("--dark", spec.dark)->default_str("0");
    synth->add_option("--rect", rect_args, "cx cy a b alpha intensity (repeatable)")->expected(-6);
    synth->add_option("--dot-x", spec.dot.x);
    synth->add_option("--dot-y", spec.dot.y);
    synth->add_option("--seed", spec.noise_seed);
    synth->add_option("--noise-sigma", spec.noise_sigma);
    synth->add_option("output", synth_out, "output PGM")->required();

    // gradient
    std::string grad_in, grad_gx, grad_gy;
    auto* gradient_cmd = app.add_subcommand("gradient", "write Sobel gx/gy as mid-gray PGMs");
    add_edge_flags(gradient_cmd, opts);
    gradient_cmd->add_option("input", grad_in)->required();
    gradient_cmd->add_option("gx_out", grad_gx)->required();
    gradient_cmd->add_option("gy_out", grad_gy)->required();

    // edges
    std::string edges_in, edges_out;
    auto* edges_cmd = app.add_subcommand("edges", "write the Canny edge map as a PGM");
    add_edge_flags(edges_cmd, opts);
    edges_cmd->add_option("input", edges_in)->required();
    edges_cmd->add_option("output", edges_out)->required();

    // hough
    std::string hough_in, hough_pgm, hough_csv;
    auto* hough_cmd = app.add_subcommand("hough", "write the rendered accumulator and its CSV dump");
    add_edge_flags(hough_cmd, opts);
    add_hough_flags(hough_cmd, opts);
    hough_cmd->add_option("input", hough_in)->required();
    hough_cmd->add_option("render_out", hough_pgm)->required();
    hough_cmd->add_option("csv_out", hough_csv)->required();

    // peaks
    std::string peaks_in, peaks_csv;
    auto* peaks_cmd = app.add_subcommand("peaks", "write detected accumulator peaks as CSV");
    add_edge_flags(peaks_cmd, opts);
    add_hough_flags(peaks_cmd, opts);
    add_peak_flags(peaks_cmd, opts);
    peaks_cmd->add_option("input", peaks_in)->required();
    peaks_cmd->add_option("csv_out", peaks_csv)->required();

    // lines
    std::string lines_in, lines_csv, lines_overlay;
    auto* lines_cmd = app.add_subcommand("lines", "write detected line segments and an overlay PGM");
    add_edge_flags(lines_cmd, opts);
    add_hough_flags(lines_cmd, opts);
    add_peak_flags(lines_cmd, opts);
    lines_cmd->add_option("input", lines_in)->required();
    lines_cmd->add_option("csv_out", lines_csv)->required();
    lines_cmd->add_option("overlay_out", lines_overlay)->required();

    // rect
    std::string rect_in, rect_json, rect_rules = "extended";
    ScanParams scan_params;
    scan_params.window_size = 65;
    scan_params.stride = 8;
    auto* rect_cmd = app.add_subcommand("rect", "sliding-window rectangle detection, JSON output");
    add_edge_flags(rect_cmd, opts);
    add_hough_flags(rect_cmd, opts);
    add_peak_flags(rect_cmd, opts);
    rect_cmd->add_option("--rules", rect_rules, "regular | extended")->capture_default_str();
    rect_cmd->add_option("--window", scan_params.window_size, "window side, odd px")->capture_default_str();
    rect_cmd->add_option("--stride", scan_params.stride)->capture_default_str();
    rect_cmd->add_option("--tol-theta", scan_params.tol.tol_theta)->capture_default_str();
    rect_cmd->add_option("--tol-orth", scan_params.tol.tol_orth)->capture_default_str();
    rect_cmd->add_option("--tol-rho", scan_params.tol.tol_rho)->capture_default_str();
    rect_cmd->add_option("--tol-height", scan_params.tol.tol_height)->capture_default_str();
    rect_cmd->add_flag("--strict-height-length", scan_params.tol.strict_height_length,
                       "check peak heights against the opposite side length");
    rect_cmd->add_option("input", rect_in)->required();
    rect_cmd->add_option("json_out", rect_json)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*synth) {
            if (scene_kind == "stripe") spec.kind = SceneKind::stripe;
            else if (scene_kind == "rectangle") spec.kind = SceneKind::rectangle_scene;
            else if (scene_kind == "step") spec.kind = SceneKind::step_edge;
            else if (scene_kind == "dot") spec.kind = SceneKind::single_dot;
            else throw std::invalid_argument("unknown --kind '" + scene_kind + "'");
            for (const auto& ra : rect_args) {
                if (ra.size() != 6)
                    throw std::invalid_argument("--rect needs 6 values: cx cy a b alpha intensity");
                spec.rects.push_back({{ra[0], ra[1]}, ra[2], ra[3], ra[4],
                                      static_cast<std::uint8_t>(ra[5])});
            }
            write_pgm_file(generate(spec), synth_out);
        } else if (*gradient_cmd) {
            const GradientField grad = sobel(read_pgm_file(grad_in), opts.smooth_sigma);
            write_pgm_file(render_gradient_component(grad, false), grad_gx);
            write_pgm_file(render_gradient_component(grad, true), grad_gy);
        } else if (*edges_cmd) {
            const PipelineData d = run_edges(edges_in, opts);
            GrayImage out(d.edges.width, d.edges.height, 0);
            for (int r = 0; r < d.edges.height; ++r)
                for (int c = 0; c < d.edges.width; ++c)
                    if (d.edges.at(c, r)) out.at(c, r) = 255;
            write_pgm_file(out, edges_out);
        } else if (*hough_cmd) {
            const PipelineData d = run_edges(hough_in, opts);
            const Accumulator acc = run_hough(d, opts);
            write_pgm_file(render_accumulator(acc), hough_pgm);
            std::ofstream csv = open_out(hough_csv);
            dump_csv(acc, csv);
        } else if (*peaks_cmd) {
            const PipelineData d = run_edges(peaks_in, opts);
            const Accumulator acc = run_hough(d, opts);
            std::ofstream csv = open_out(peaks_csv);
            csv << "theta_deg,rho_px,votes\n";
            char line[96];
            for (const Peak& p : find_peaks(acc, opts.peak_threshold, opts.nms_theta, opts.nms_rho)) {
                std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g\n", p.theta_deg, p.rho_px, p.votes);
                csv << line;
            }
        } else if (*lines_cmd) {
            const PipelineData d = run_edges(lines_in, opts);
            const Accumulator acc = run_hough(d, opts);
            std::ofstream csv = open_out(lines_csv);
            csv << "theta_deg,rho_px,votes,x0,y0,x1,y1,col0,row0,col1,row1\n";
            std::vector<Segment> segs;
            char line[256];
            for (const Peak& p : find_peaks(acc, opts.peak_threshold, opts.nms_theta, opts.nms_rho)) {
                const auto seg = clip_to_image(line_of_peak(p), d.img.width(), d.img.height());
                if (!seg) continue;
                segs.push_back(*seg);
                const double cw = (d.img.width() - 1) / 2.0;
                const double ch = (d.img.height() - 1) / 2.0;
                std::snprintf(line, sizeof(line),
                              "%.10g,%.10g,%.10g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                              p.theta_deg, p.rho_px, p.votes, seg->p0.x, seg->p0.y, seg->p1.x, seg->p1.y,
                              seg->p0.x + cw, ch - seg->p0.y, seg->p1.x + cw, ch - seg->p1.y);
                csv << line;
            }
            write_pgm_file(draw_segments(d.img, segs, 0), lines_overlay);
        } else if (*rect_cmd) {
            if (rect_rules == "regular") scan_params.rules = RuleSet::regular;
            else if (rect_rules == "extended") scan_params.rules = RuleSet::extended;
            else throw std::invalid_argument("unknown --rules '" + rect_rules + "'");
            scan_params.hough = opts.hough;
            scan_params.peak_threshold = opts.peak_threshold;
            scan_params.nms_theta_deg = opts.nms_theta;
            scan_params.nms_rho_px = opts.nms_rho;
            const PipelineData d = run_edges(rect_in, opts);
            nlohmann::json out = nlohmann::json::array();
            for (const RectangleHit& h : scan(d.grad, d.edges, scan_params)) {
                nlohmann::json peaks = nlohmann::json::array();
                for (const Peak& p : h.peaks)
                    peaks.push_back({{"theta_deg", p.theta_deg}, {"rho_px", p.rho_px}, {"votes", p.votes}});
                out.push_back({{"center", {h.center_col, h.center_row}},
                               {"alpha_deg", h.alpha_deg},
                               {"a_px", h.a},
                               {"b_px", h.b},
                               {"rule_set", h.rule_set == RuleSet::extended ? "extended" : "regular"},
                               {"peaks", peaks}});
            }
            std::ofstream js = open_out(rect_json);
            js << out.dump(2) << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
