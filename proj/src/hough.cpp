#include "houghx/hough.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace houghx {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool divides(double span, double step) {
    const double q = span / step;
    return std::abs(q - std::round(q)) < 1e-9;
}

AccumulatorGeometry make_geometry(double raw_rho_max, HoughMode mode, const HoughParams& params) {
    if (params.delta_rho <= 0 || params.delta_theta <= 0)
        throw std::invalid_argument("AccumulatorGeometry: bin widths must be positive");
    if (!divides(90.0, params.delta_theta))
        throw std::invalid_argument("AccumulatorGeometry: delta_theta must divide 90 degrees evenly");
    if (raw_rho_max <= 0)
        throw std::invalid_argument("AccumulatorGeometry: empty source extent");

    AccumulatorGeometry g;
    g.mode = mode;
    g.delta_theta = params.delta_theta;
    g.delta_rho = params.delta_rho;
    if (mode == HoughMode::regular) {
        g.theta_min = -90.0;
        g.theta_max = 90.0;
    } else {
        g.theta_min = -180.0;
        g.theta_max = 180.0;
    }
    g.n_theta = static_cast<int>(std::round((g.theta_max - g.theta_min) / params.delta_theta));
    // Inflate rho_max to a whole, odd number of bins: centers mirror about 0
    // and rho = 0 is itself a bin center, so integer-lattice rho values do not
    // straddle bin boundaries in odd-sized images.
    g.n_rho = static_cast<int>(std::ceil(2.0 * raw_rho_max / params.delta_rho - 1e-9));
    if (g.n_rho % 2 == 0) ++g.n_rho;
    g.rho_max = g.n_rho * params.delta_rho / 2.0;
    return g;
}

} // namespace

AccumulatorGeometry AccumulatorGeometry::for_image(int width, int height, HoughMode mode,
                                                   const HoughParams& params) {
    return for_extent(width / 2.0, height / 2.0, mode, params);
}

AccumulatorGeometry AccumulatorGeometry::for_extent(double half_x, double half_y, HoughMode mode,
                                                    const HoughParams& params) {
    return make_geometry(std::hypot(half_x, half_y), mode, params);
}

int AccumulatorGeometry::rho_bin(double rho) const {
    const int j = static_cast<int>(std::floor((rho + rho_max) / delta_rho));
    return std::clamp(j, 0, n_rho - 1);
}

Accumulator::Accumulator(AccumulatorGeometry geometry)
    : geom_(geometry),
      votes_(static_cast<std::size_t>(geometry.n_theta) * geometry.n_rho, 0.0) {}

double Accumulator::max_votes() const {
    return *std::max_element(votes_.begin(), votes_.end());
}

double Accumulator::total_votes() const {
    double s = 0.0;
    for (double v : votes_) s += v;
    return s;
}

double rho_of(const CenteredPoint& p, double theta_deg) {
    const double t = theta_deg * kDegToRad;
    return p.x * std::cos(t) + p.y * std::sin(t);
}

std::pair<double, double> antipode(double theta_deg, double rho) {
    double t = theta_deg + 180.0;
    if (t >= 180.0) t -= 360.0;
    if (t < -180.0) t += 360.0;
    return {t, -rho};
}

namespace {

// Deposits one vote for theta bin t. In extended mode the rho bin is derived
// from the bin's canonical (regular-range) antipode so the two halves of the
// accumulator are exact mirrors of each other; fold_extended relies on this.
void vote_bin(Accumulator& acc, const CenteredPoint& p, int t, double weight) {
    const AccumulatorGeometry& g = acc.geometry();
    if (g.mode == HoughMode::regular) {
        acc.add(t, g.rho_bin(rho_of(p, g.theta_center(t))), weight);
        return;
    }
    const int quarter = g.n_theta / 4;
    const int half = g.n_theta / 2;
    if (t >= quarter && t < 3 * quarter) {
        acc.add(t, g.rho_bin(rho_of(p, g.theta_center(t))), weight);
    } else {
        const int tc = (t + half) % g.n_theta;
        const int j = g.rho_bin(rho_of(p, g.theta_center(tc)));
        acc.add(t, g.n_rho - 1 - j, weight);
    }
}

} // namespace

void vote_sinusoid(Accumulator& acc, const CenteredPoint& p, double weight) {
    for (int t = 0; t < acc.geometry().n_theta; ++t)
        vote_bin(acc, p, t, weight);
}

void vote_oriented(Accumulator& acc, const CenteredPoint& p, double theta0_deg,
                   double window_deg, double weight) {
    if (window_deg <= 0)
        throw std::invalid_argument("vote_oriented: window must be positive");
    const AccumulatorGeometry& g = acc.geometry();

    // Bin centers strictly inside the open interval (theta0 - w, theta0 + w).
    const double lo = (theta0_deg - window_deg - g.theta_min) / g.delta_theta - 0.5;
    const double hi = (theta0_deg + window_deg - g.theta_min) / g.delta_theta - 0.5;
    long i_lo = static_cast<long>(std::floor(lo)) + 1;
    long i_hi = static_cast<long>(std::ceil(hi)) - 1;
    if (i_hi - i_lo + 1 >= g.n_theta) {  // window covers the whole cycle
        i_lo = 0;
        i_hi = g.n_theta - 1;
    }
    for (long i = i_lo; i <= i_hi; ++i) {
        const int t = static_cast<int>(((i % g.n_theta) + g.n_theta) % g.n_theta);
        vote_bin(acc, p, t, weight);
    }
}

namespace {

void check_extent(const AccumulatorGeometry& g, int width, int height, const char* who) {
    if (std::hypot(width / 2.0, height / 2.0) > g.rho_max + 1e-9)
        throw std::invalid_argument(std::string(who) + ": accumulator geometry too small for the source dimensions");
}

double pixel_weight(const HoughParams& params, const GradientField* grad, int c, int r) {
    if (params.weight_mode == WeightMode::unit) return 1.0;
    return magnitude(grad->gx_at(c, r), grad->gy_at(c, r));
}

} // namespace

Accumulator accumulate_full(const EdgeMap& edges, const AccumulatorGeometry& geom,
                            const HoughParams& params, const GradientField* grad) {
    if (geom.mode != HoughMode::regular)
        throw std::invalid_argument("accumulate_full: classical HT uses the regular theta range");
    check_extent(geom, edges.width, edges.height, "accumulate_full");
    if (params.weight_mode == WeightMode::magnitude && grad == nullptr)
        throw std::invalid_argument("accumulate_full: magnitude weighting needs a gradient field");

    Accumulator acc(geom);
    for (int r = 0; r < edges.height; ++r)
        for (int c = 0; c < edges.width; ++c)
            if (edges.at(c, r))
                vote_sinusoid(acc, to_centered(c, r, edges.width, edges.height),
                              pixel_weight(params, grad, c, r));
    return acc;
}

Accumulator accumulate_oriented(const EdgeMap& edges, const GradientField& grad,
                                const AccumulatorGeometry& geom, const HoughParams& params) {
    if (edges.width != grad.width || edges.height != grad.height)
        throw std::invalid_argument("accumulate_oriented: edge map and gradient dimensions differ");
    check_extent(geom, edges.width, edges.height, "accumulate_oriented");

    Accumulator acc(geom);
    for (int r = 0; r < edges.height; ++r)
        for (int c = 0; c < edges.width; ++c) {
            if (!edges.at(c, r)) continue;
            const double gx = grad.gx_at(c, r);
            const double gy = grad.gy_at(c, r);
            if (gx == 0.0 && gy == 0.0)
                throw std::invalid_argument("accumulate_oriented: zero gradient at edge pixel (col " +
                                            std::to_string(c) + ", row " + std::to_string(r) + ")");
            const double theta0 = geom.mode == HoughMode::extended ? orientation_full(gx, gy)
                                                                   : orientation_half(gx, gy);
            vote_oriented(acc, to_centered(c, r, edges.width, edges.height), theta0,
                          params.theta_window, pixel_weight(params, &grad, c, r));
        }
    return acc;
}

Accumulator fold_extended(const Accumulator& acc) {
    const AccumulatorGeometry& g = acc.geometry();
    if (g.mode != HoughMode::extended)
        throw std::invalid_argument("fold_extended: accumulator is not in extended mode");
    if (g.n_theta % 2 != 0)
        throw std::invalid_argument("fold_extended: theta bin count must be even");

    AccumulatorGeometry rg = g;
    rg.mode = HoughMode::regular;
    rg.theta_min = -90.0;
    rg.theta_max = 90.0;
    rg.n_theta = g.n_theta / 2;

    const int quarter = g.n_theta / 4;
    const int half = g.n_theta / 2;
    Accumulator out(rg);
    for (int i = 0; i < rg.n_theta; ++i) {
        const int t1 = i + quarter;             // same theta center as out bin i
        const int t2 = (t1 + half) % g.n_theta; // its antipode
        for (int j = 0; j < g.n_rho; ++j) {
            const double v = acc.at(t1, j) + acc.at(t2, g.n_rho - 1 - j);
            if (v != 0.0) out.add(i, j, v);
        }
    }
    return out;
}

GrayImage render_accumulator(const Accumulator& acc) {
    const AccumulatorGeometry& g = acc.geometry();
    GrayImage img(g.n_theta, g.n_rho, 255);
    const double vmax = acc.max_votes();
    if (vmax <= 0.0) return img;
    const double root_max = std::sqrt(vmax);
    for (int t = 0; t < g.n_theta; ++t)
        for (int j = 0; j < g.n_rho; ++j) {
            const double v = acc.at(t, j);
            const long px = std::lround(255.0 * (1.0 - std::sqrt(v) / root_max));
            // rho increases upward: row 0 holds the largest rho bin
            img.at(t, g.n_rho - 1 - j) = static_cast<std::uint8_t>(std::clamp(px, 0L, 255L));
        }
    return img;
}

void dump_csv(const Accumulator& acc, std::ostream& out) {
    const AccumulatorGeometry& g = acc.geometry();
    out << "theta_deg,rho_px,votes\n";
    char line[96];
    for (int t = 0; t < g.n_theta; ++t)
        for (int j = 0; j < g.n_rho; ++j) {
            const double v = acc.at(t, j);
            if (v == 0.0) continue;
            std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g\n", g.theta_center(t), g.rho_center(j), v);
            out << line;
        }
}

} // namespace houghx
