#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <stdexcept>

#include "houghx/gradient.hpp"
#include "houghx/hough.hpp"
#include "houghx/peaks.hpp"
#include "houghx/raster.hpp"
#include "houghx/rect.hpp"

namespace py = pybind11;
using namespace houghx;

namespace {

GrayImage image_from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("image must be a 2-d uint8 array");
    const int h = static_cast<int>(arr.shape(0));
    const int w = static_cast<int>(arr.shape(1));
    std::vector<std::uint8_t> samples(arr.data(), arr.data() + static_cast<std::size_t>(w) * h);
    return GrayImage(w, h, std::move(samples));
}

py::array_t<std::uint8_t> image_to_array(const GrayImage& img) {
    py::array_t<std::uint8_t> arr({img.height(), img.width()});
    std::memcpy(arr.mutable_data(), img.samples().data(), img.samples().size());
    return arr;
}

GradientField gradient_from_arrays(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& gx,
    const py::array_t<double, py::array::c_style | py::array::forcecast>& gy) {
    if (gx.ndim() != 2 || gy.ndim() != 2 || gx.shape(0) != gy.shape(0) || gx.shape(1) != gy.shape(1))
        throw std::invalid_argument("gx and gy must be 2-d arrays of the same shape");
    GradientField g;
    g.height = static_cast<int>(gx.shape(0));
    g.width = static_cast<int>(gx.shape(1));
    const std::size_t n = static_cast<std::size_t>(g.width) * g.height;
    g.gx.assign(gx.data(), gx.data() + n);
    g.gy.assign(gy.data(), gy.data() + n);
    return g;
}

EdgeMap edges_from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("edge mask must be a 2-d uint8 array");
    EdgeMap e;
    e.height = static_cast<int>(arr.shape(0));
    e.width = static_cast<int>(arr.shape(1));
    const std::size_t n = static_cast<std::size_t>(e.width) * e.height;
    e.mask.assign(arr.data(), arr.data() + n);
    for (auto& m : e.mask) m = m ? 1 : 0;
    return e;
}

py::array_t<double> votes_to_array(const Accumulator& acc) {
    const auto& g = acc.geometry();
    py::array_t<double> arr({g.n_theta, g.n_rho});
    std::memcpy(arr.mutable_data(), acc.votes().data(), acc.votes().size() * sizeof(double));
    return arr;
}

HoughParams params_of(double delta_rho, double delta_theta, double theta_window) {
    HoughParams p;
    p.delta_rho = delta_rho;
    p.delta_theta = delta_theta;
    p.theta_window = theta_window;
    return p;
}

HoughMode mode_of(const std::string& name) {
    if (name == "regular") return HoughMode::regular;
    if (name == "extended") return HoughMode::extended;
    throw std::invalid_argument("mode must be 'regular' or 'extended'");
}

} // namespace

PYBIND11_MODULE(_houghx, m) {
    m.doc() = "Gradient-oriented Hough transform over the full [-180, 180) "
              "orientation range, with line and rectangle detection";

    py::class_<AccumulatorGeometry>(m, "AccumulatorGeometry")
        .def_property_readonly("mode",
                               [](const AccumulatorGeometry& g) {
                                   return g.mode == HoughMode::extended ? "extended" : "regular";
                               })
        .def_readonly("theta_min", &AccumulatorGeometry::theta_min)
        .def_readonly("theta_max", &AccumulatorGeometry::theta_max)
        .def_readonly("delta_theta", &AccumulatorGeometry::delta_theta)
        .def_readonly("delta_rho", &AccumulatorGeometry::delta_rho)
        .def_readonly("rho_max", &AccumulatorGeometry::rho_max)
        .def_readonly("n_theta", &AccumulatorGeometry::n_theta)
        .def_readonly("n_rho", &AccumulatorGeometry::n_rho)
        .def("theta_center", &AccumulatorGeometry::theta_center, py::arg("i"))
        .def("rho_center", &AccumulatorGeometry::rho_center, py::arg("j"));

    py::class_<Accumulator>(m, "Accumulator")
        .def_property_readonly("geometry", &Accumulator::geometry,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("votes", &votes_to_array,
                               "vote grid as an (n_theta, n_rho) float array")
        .def("max_votes", &Accumulator::max_votes)
        .def("total_votes", &Accumulator::total_votes);

    py::class_<Peak>(m, "Peak")
        .def_readonly("theta_deg", &Peak::theta_deg)
        .def_readonly("rho_px", &Peak::rho_px)
        .def_readonly("votes", &Peak::votes)
        .def_readonly("theta_bin", &Peak::theta_bin)
        .def_readonly("rho_bin", &Peak::rho_bin)
        .def("__repr__", [](const Peak& p) {
            return "Peak(theta_deg=" + std::to_string(p.theta_deg) +
                   ", rho_px=" + std::to_string(p.rho_px) + ", votes=" + std::to_string(p.votes) + ")";
        });

    py::class_<RectangleHit>(m, "RectangleHit")
        .def_readonly("center_col", &RectangleHit::center_col)
        .def_readonly("center_row", &RectangleHit::center_row)
        .def_readonly("alpha_deg", &RectangleHit::alpha_deg)
        .def_readonly("a", &RectangleHit::a)
        .def_readonly("b", &RectangleHit::b)
        .def_property_readonly("peaks",
                               [](const RectangleHit& h) {
                                   return std::vector<Peak>(h.peaks.begin(), h.peaks.end());
                               })
        .def_property_readonly("rule_set",
                               [](const RectangleHit& h) {
                                   return h.rule_set == RuleSet::extended ? "extended" : "regular";
                               })
        .def("__repr__", [](const RectangleHit& h) {
            return "RectangleHit(center=(" + std::to_string(h.center_col) + ", " +
                   std::to_string(h.center_row) + "), a=" + std::to_string(h.a) +
                   ", b=" + std::to_string(h.b) + ", alpha_deg=" + std::to_string(h.alpha_deg) + ")";
        });

    m.def("read_pgm", [](const std::string& path) { return image_to_array(read_pgm_file(path)); },
          py::arg("path"), "Load a binary (P5) PGM file as an (H, W) uint8 array");

    m.def("write_pgm",
          [](const std::string& path,
             const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& img) {
              write_pgm_file(image_from_array(img), path);
          },
          py::arg("path"), py::arg("image"), "Write an (H, W) uint8 array as a binary PGM file");

    m.def("sobel",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& img,
             double sigma) {
              const GradientField g = sobel(image_from_array(img), sigma);
              py::array_t<double> gx({g.height, g.width});
              py::array_t<double> gy({g.height, g.width});
              std::memcpy(gx.mutable_data(), g.gx.data(), g.gx.size() * sizeof(double));
              std::memcpy(gy.mutable_data(), g.gy.data(), g.gy.size() * sizeof(double));
              return py::make_tuple(gx, gy);
          },
          py::arg("image"), py::arg("sigma") = 0.0,
          "3x3 Sobel gradient (y axis pointing up); returns (gx, gy). sigma > 0 "
          "applies a Gaussian blur first");

    m.def("canny",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& gx,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& gy,
             double high, double low) {
              const EdgeMap e = canny_edges(gradient_from_arrays(gx, gy), high, low);
              py::array_t<std::uint8_t> arr({e.height, e.width});
              std::memcpy(arr.mutable_data(), e.mask.data(), e.mask.size());
              return arr;
          },
          py::arg("gx"), py::arg("gy"), py::arg("high"), py::arg("low"),
          "Non-maximum suppression plus hysteresis thresholding of a gradient field");

    m.def("orientation_full", &orientation_full, py::arg("gx"), py::arg("gy"),
          "Gradient orientation in degrees over the full [-180, 180) range");

    m.def("hough",
          [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& edges,
             const py::object& gx, const py::object& gy, const std::string& mode,
             double delta_rho, double delta_theta, double theta_window) {
              const EdgeMap e = edges_from_array(edges);
              const HoughParams p = params_of(delta_rho, delta_theta, theta_window);
              const auto geom =
                  AccumulatorGeometry::for_image(e.width, e.height, mode_of(mode), p);
              if (gx.is_none() != gy.is_none())
                  throw std::invalid_argument("pass both gx and gy or neither");
              if (gx.is_none()) {
                  if (mode_of(mode) == HoughMode::extended)
                      throw std::invalid_argument("extended mode needs gx and gy");
                  return accumulate_full(e, geom, p);
              }
              const GradientField g = gradient_from_arrays(
                  gx.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>(),
                  gy.cast<py::array_t<double, py::array::c_style | py::array::forcecast>>());
              return accumulate_oriented(e, g, geom, p);
          },
          py::arg("edges"), py::arg("gx") = py::none(), py::arg("gy") = py::none(),
          py::arg("mode") = "extended", py::arg("delta_rho") = 1.0, py::arg("delta_theta") = 0.5,
          py::arg("theta_window") = 22.5,
          "Hough transform of an edge mask. Without a gradient this is the "
          "classical full-sinusoid transform (regular mode only); with one, "
          "votes are restricted to the window around the gradient orientation");

    m.def("fold", &fold_extended, py::arg("accumulator"),
          "Fold an extended accumulator onto the regular [-90, 90) half-space");

    m.def("find_peaks", &find_peaks, py::arg("accumulator"), py::arg("threshold_frac") = 0.5,
          py::arg("nms_theta_deg") = 5.0, py::arg("nms_rho_px") = 5.0,
          "Local maxima above threshold_frac * max, non-maximum suppressed");

    m.def("clip_line",
          [](double theta_deg, double rho, int width, int height) -> py::object {
              const auto seg = clip_to_image({theta_deg, rho}, width, height);
              if (!seg) return py::none();
              return py::make_tuple(py::make_tuple(seg->p0.x, seg->p0.y),
                                    py::make_tuple(seg->p1.x, seg->p1.y));
          },
          py::arg("theta_deg"), py::arg("rho"), py::arg("width"), py::arg("height"),
          "Clip the line x cos(theta) + y sin(theta) = rho to a centered "
          "width x height image; returns ((x0, y0), (x1, y1)) or None");

    m.def("detect_rectangles",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& gx,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& gy,
             const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& edges,
             int window_size, int stride, const std::string& rules, double peak_threshold,
             double delta_rho, double delta_theta, double theta_window) {
              ScanParams sp;
              sp.window_size = window_size;
              sp.stride = stride;
              sp.hough = params_of(delta_rho, delta_theta, theta_window);
              sp.peak_threshold = peak_threshold;
              if (rules == "regular") sp.rules = RuleSet::regular;
              else if (rules == "extended") sp.rules = RuleSet::extended;
              else throw std::invalid_argument("rules must be 'regular' or 'extended'");
              return scan(gradient_from_arrays(gx, gy), edges_from_array(edges), sp);
          },
          py::arg("gx"), py::arg("gy"), py::arg("edges"), py::arg("window_size"),
          py::arg("stride") = 8, py::arg("rules") = "extended", py::arg("peak_threshold") = 0.5,
          py::arg("delta_rho") = 1.0, py::arg("delta_theta") = 0.5, py::arg("theta_window") = 22.5,
          "Sliding-window rectangle detection over the whole image");

    m.def("generate_scene",
          [](const std::string& kind, int width, int height, double angle_deg, double thickness,
             double offset, const std::vector<std::tuple<double, double, double, double, double>>& rects,
             std::uint8_t bright, std::uint8_t dark, unsigned noise_seed, double noise_sigma) {
              SceneSpec spec;
              if (kind == "stripe") spec.kind = SceneKind::stripe;
              else if (kind == "rectangles") spec.kind = SceneKind::rectangle_scene;
              else if (kind == "step") spec.kind = SceneKind::step_edge;
              else if (kind == "dot") spec.kind = SceneKind::single_dot;
              else throw std::invalid_argument("unknown scene kind '" + kind + "'");
              spec.width = width;
              spec.height = height;
              spec.angle_deg = angle_deg;
              spec.thickness = thickness;
              spec.offset = offset;
              spec.bright = bright;
              spec.dark = dark;
              spec.noise_seed = noise_seed;
              spec.noise_sigma = noise_sigma;
              for (const auto& [cx, cy, a, b, alpha] : rects) {
                  RectSpec r;
                  r.center = {cx, cy};
                  r.a = a;
                  r.b = b;
                  r.alpha_deg = alpha;
                  r.intensity = bright;
                  spec.rects.push_back(r);
              }
              return image_to_array(generate(spec));
          },
          py::arg("kind"), py::arg("width"), py::arg("height"), py::arg("angle_deg") = 0.0,
          py::arg("thickness") = 0.0, py::arg("offset") = 0.0,
          py::arg("rects") = std::vector<std::tuple<double, double, double, double, double>>{},
          py::arg("bright") = 255, py::arg("dark") = 0, py::arg("noise_seed") = 0,
          py::arg("noise_sigma") = 0.0,
          "Deterministic synthetic test scene; rects entries are "
          "(center_x, center_y, a, b, alpha_deg) in centered coordinates");
}
