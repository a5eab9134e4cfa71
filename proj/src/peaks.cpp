#include "houghx/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace houghx {

std::vector<Peak> find_peaks(const Accumulator& acc, double threshold_frac,
                             double nms_theta_deg, double nms_rho_px) {
    if (!(threshold_frac > 0.0) || threshold_frac > 1.0)
        throw std::invalid_argument("find_peaks: threshold_frac must be in (0, 1]");
    const AccumulatorGeometry& g = acc.geometry();
    const double vmax = acc.max_votes();
    std::vector<Peak> peaks;
    if (vmax <= 0.0) return peaks;

    const double threshold = threshold_frac * vmax;
    const int wt = static_cast<int>(std::floor(nms_theta_deg / g.delta_theta + 1e-9));
    const int wj = static_cast<int>(std::floor(nms_rho_px / g.delta_rho + 1e-9));
    const bool cyclic = g.mode == HoughMode::extended;

    for (int t = 0; t < g.n_theta; ++t) {
        for (int j = 0; j < g.n_rho; ++j) {
            const double v = acc.at(t, j);
            if (v < threshold) continue;
            bool is_peak = true;
            for (int dt = -wt; dt <= wt && is_peak; ++dt) {
                int nt = t + dt;
                if (cyclic) {
                    nt = ((nt % g.n_theta) + g.n_theta) % g.n_theta;
                } else if (nt < 0 || nt >= g.n_theta) {
                    continue;
                }
                for (int dj = -wj; dj <= wj; ++dj) {
                    const int nj = j + dj;
                    if (nj < 0 || nj >= g.n_rho) continue;
                    if (nt == t && nj == j) continue;
                    const double nv = acc.at(nt, nj);
                    // Ties go to the smaller (theta, rho) bin index.
                    if (nv > v || (nv == v && (nt < t || (nt == t && nj < j)))) {
                        is_peak = false;
                        break;
                    }
                }
            }
            if (!is_peak) continue;
            // Refine the coordinates with a mean-shift centroid, weighting
            // each bin by how far it rises above half the peak. Quantization
            // ties smear a peak into a plateau whose width grows as the
            // supporting segment shrinks; plain argmax lands on the plateau's
            // low edge, and an unthresholded one-shot centroid cannot resolve
            // theta at all because vote conservation makes every theta column
            // in the window sum to the same total. Re-centering the window on
            // each estimate walks it to the plateau's middle even when the
            // plateau is wider than the window.
            int ct = t, cj = j;
            double off_t = 0.0, off_j = 0.0;
            for (int iter = 0; iter < 50; ++iter) {
                double wsum = 0.0, tsum = 0.0, jsum = 0.0;
                for (int dt = -wt; dt <= wt; ++dt) {
                    int nt = ct + dt;
                    if (cyclic) {
                        nt = ((nt % g.n_theta) + g.n_theta) % g.n_theta;
                    } else if (nt < 0 || nt >= g.n_theta) {
                        continue;
                    }
                    for (int dj = -wj; dj <= wj; ++dj) {
                        const int nj = cj + dj;
                        if (nj < 0 || nj >= g.n_rho) continue;
                        const double nv = acc.at(nt, nj) - v / 2.0;
                        if (nv <= 0.0) continue;
                        wsum += nv;
                        tsum += nv * dt;
                        jsum += nv * dj;
                    }
                }
                if (wsum <= 0.0) break;
                off_t = tsum / wsum;
                off_j = jsum / wsum;
                const int st = static_cast<int>(std::lround(off_t));
                const int sj = static_cast<int>(std::lround(off_j));
                if (st == 0 && sj == 0) break;
                ct += st;
                if (cyclic) ct = ((ct % g.n_theta) + g.n_theta) % g.n_theta;
                else ct = std::clamp(ct, 0, g.n_theta - 1);
                cj = std::clamp(cj + sj, 0, g.n_rho - 1);
                off_t -= st;
                off_j -= sj;
            }
            double theta = g.theta_center(ct) + off_t * g.delta_theta;
            const double period = cyclic ? 360.0 : 180.0;
            if (theta >= period / 2.0) theta -= period;
            if (theta < -period / 2.0) theta += period;
            const double rho = g.rho_center(cj) + off_j * g.delta_rho;
            peaks.push_back({theta, rho, v, t, j});
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.votes != b.votes) return a.votes > b.votes;
        if (a.theta_bin != b.theta_bin) return a.theta_bin < b.theta_bin;
        return a.rho_bin < b.rho_bin;
    });
    // Candidates from opposite edges of one wide plateau refine to the same
    // spot; keep only the strongest of any such cluster.
    std::vector<Peak> unique;
    for (const Peak& p : peaks) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Peak& q) {
            double dth = std::abs(p.theta_deg - q.theta_deg);
            if (cyclic) dth = std::min(dth, 360.0 - dth);
            return dth <= nms_theta_deg && std::abs(p.rho_px - q.rho_px) <= nms_rho_px;
        });
        if (!dup) unique.push_back(p);
    }
    return unique;
}

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

Vec2 OrientedLine::normal() const {
    return {std::cos(theta_deg * kDegToRad), std::sin(theta_deg * kDegToRad)};
}

Vec2 OrientedLine::direction() const {
    return {-std::sin(theta_deg * kDegToRad), std::cos(theta_deg * kDegToRad)};
}

OrientedLine line_of_peak(const Peak& p) {
    return {p.theta_deg, p.rho_px};
}

std::optional<Segment> clip_to_image(const OrientedLine& line, int width, int height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("clip_to_image: dimensions must be positive");
    const double hw = width / 2.0;
    const double hh = height / 2.0;
    const Vec2 n = line.normal();
    const Vec2 d = line.direction();
    const double px = line.rho * n.x;
    const double py = line.rho * n.y;

    constexpr double eps = 1e-9;
    std::vector<double> ts;
    if (std::abs(d.x) > eps) {
        ts.push_back((-hw - px) / d.x);
        ts.push_back((hw - px) / d.x);
    }
    if (std::abs(d.y) > eps) {
        ts.push_back((-hh - py) / d.y);
        ts.push_back((hh - py) / d.y);
    }
    std::vector<double> hits;
    for (double t : ts) {
        const double x = px + t * d.x;
        const double y = py + t * d.y;
        if (x >= -hw - eps && x <= hw + eps && y >= -hh - eps && y <= hh + eps)
            hits.push_back(t);
    }
    if (hits.size() < 2) return std::nullopt;
    const auto [lo, hi] = std::minmax_element(hits.begin(), hits.end());
    if (*hi - *lo < eps) return std::nullopt;  // corner graze
    return Segment{{px + *lo * d.x, py + *lo * d.y}, {px + *hi * d.x, py + *hi * d.y}};
}

GrayImage draw_segments(const GrayImage& img, const std::vector<Segment>& segs,
                        std::uint8_t intensity) {
    GrayImage out = img;
    const int w = img.width();
    const int h = img.height();
    for (const Segment& s : segs) {
        const double dx = s.p1.x - s.p0.x;
        const double dy = s.p1.y - s.p0.y;
        const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * std::hypot(dx, dy))));
        for (int i = 0; i <= steps; ++i) {
            const double f = static_cast<double>(i) / steps;
            const int col = static_cast<int>(std::lround(s.p0.x + f * dx + (w - 1) / 2.0));
            const int row = static_cast<int>(std::lround((h - 1) / 2.0 - (s.p0.y + f * dy)));
            if (col >= 0 && col < w && row >= 0 && row < h)
                out.at(col, row) = intensity;
        }
    }
    return out;
}

} // namespace houghx
