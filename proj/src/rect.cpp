#include "houghx/rect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace houghx {

double RectangleHit::height_sum() const {
    return peaks[0].votes + peaks[1].votes + peaks[2].votes + peaks[3].votes;
}

namespace {

double wrap180(double deg) {
    double d = std::fmod(deg + 90.0, 180.0);
    if (d < 0) d += 180.0;
    return d - 90.0;
}

double wrap360(double deg) {
    double d = std::fmod(deg + 180.0, 360.0);
    if (d < 0) d += 360.0;
    return d - 180.0;
}

double rel_diff(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

struct PeakPair {
    int i = 0;
    int j = 0;
    double alpha = 0.0;  // pair orientation, [-90, 90)
    double side = 0.0;   // recovered rectangle side, px
    double height = 0.0; // mean peak height
};

std::vector<Peak> top_peaks(const std::vector<Peak>& peaks, int cap) {
    std::vector<Peak> sorted = peaks;
    std::sort(sorted.begin(), sorted.end(),
              [](const Peak& a, const Peak& b) { return a.votes > b.votes; });
    if (static_cast<int>(sorted.size()) > cap)
        sorted.resize(cap);
    return sorted;
}

std::vector<RectangleHit> combine_pairs(const std::vector<Peak>& ps, const std::vector<PeakPair>& pairs,
                                        const RectTolerances& tol, RuleSet rules) {
    std::vector<RectangleHit> hits;
    for (std::size_t u = 0; u < pairs.size(); ++u) {
        for (std::size_t v = u + 1; v < pairs.size(); ++v) {
            PeakPair A = pairs[u];
            PeakPair B = pairs[v];
            if (A.i == B.i || A.i == B.j || A.j == B.i || A.j == B.j) continue;
            if (A.side < B.side) std::swap(A, B);  // a is the longer side
            if (std::abs(90.0 - std::abs(wrap180(A.alpha - B.alpha))) > tol.tol_orth) continue;
            if (tol.strict_height_length &&
                (rel_diff(A.height, B.side) > tol.tol_height ||
                 rel_diff(B.height, A.side) > tol.tol_height))
                continue;
            RectangleHit hit;
            hit.alpha_deg = A.alpha;
            hit.a = A.side;
            hit.b = B.side;
            hit.peaks = {ps[A.i], ps[A.j], ps[B.i], ps[B.j]};
            hit.rule_set = rules;
            hits.push_back(hit);
        }
    }
    return hits;
}

} // namespace

Accumulator windowed_hough(const GradientField& grad, const EdgeMap& edges,
                           const RectWindow& w, const HoughParams& params, HoughMode mode) {
    if (edges.width != grad.width || edges.height != grad.height)
        throw std::invalid_argument("windowed_hough: edge map and gradient dimensions differ");
    if (w.size < 3 || w.size % 2 == 0)
        throw std::invalid_argument("windowed_hough: window size must be odd and >= 3");
    const int half = w.size / 2;
    if (w.center_col - half < 0 || w.center_col + half >= edges.width ||
        w.center_row - half < 0 || w.center_row + half >= edges.height)
        throw std::invalid_argument("windowed_hough: window exceeds image bounds");

    Accumulator acc(AccumulatorGeometry::for_extent(w.size / 2.0, w.size / 2.0, mode, params));
    for (int r = w.center_row - half; r <= w.center_row + half; ++r) {
        for (int c = w.center_col - half; c <= w.center_col + half; ++c) {
            if (!edges.at(c, r)) continue;
            const CenteredPoint p{static_cast<double>(c - w.center_col),
                                  static_cast<double>(w.center_row - r)};
            double weight = 1.0;
            if (params.weight_mode == WeightMode::magnitude)
                weight = magnitude(grad.gx_at(c, r), grad.gy_at(c, r));
            if (mode == HoughMode::regular) {
                vote_sinusoid(acc, p, weight);
            } else {
                const double gx = grad.gx_at(c, r);
                const double gy = grad.gy_at(c, r);
                if (gx == 0.0 && gy == 0.0)
                    throw std::invalid_argument("windowed_hough: zero gradient at edge pixel (col " +
                                                std::to_string(c) + ", row " + std::to_string(r) + ")");
                vote_oriented(acc, p, orientation_full(gx, gy), params.theta_window, weight);
            }
        }
    }
    return acc;
}

std::vector<RectangleHit> match_regular(const std::vector<Peak>& peaks,
                                        const RectTolerances& tol, int peak_cap) {
    const std::vector<Peak> ps = top_peaks(peaks, peak_cap);
    std::vector<PeakPair> pairs;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const double dtheta = wrap180(ps[i].theta_deg - ps[j].theta_deg);
            if (std::abs(dtheta) > tol.tol_theta) continue;
            if (std::abs(ps[i].rho_px + ps[j].rho_px) > tol.tol_rho) continue;
            if (rel_diff(ps[i].votes, ps[j].votes) > tol.tol_height) continue;
            PeakPair pp;
            pp.i = static_cast<int>(i);
            pp.j = static_cast<int>(j);
            pp.alpha = wrap180(ps[i].theta_deg - dtheta / 2.0);
            pp.side = std::abs(ps[i].rho_px - ps[j].rho_px);
            pp.height = (ps[i].votes + ps[j].votes) / 2.0;
            pairs.push_back(pp);
        }
    }
    return combine_pairs(ps, pairs, tol, RuleSet::regular);
}

std::vector<RectangleHit> match_extended(const std::vector<Peak>& peaks,
                                         const RectTolerances& tol, int peak_cap) {
    const std::vector<Peak> ps = top_peaks(peaks, peak_cap);
    std::vector<PeakPair> pairs;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            // Antipodal orientations within a pair.
            const double dtheta = wrap360(ps[i].theta_deg - ps[j].theta_deg);
            if (std::abs(std::abs(dtheta) - 180.0) > tol.tol_theta) continue;
            if (std::abs(ps[i].rho_px - ps[j].rho_px) > tol.tol_rho) continue;
            // Strict shared sign; a side through the window center cannot be oriented.
            if (!((ps[i].rho_px > 0 && ps[j].rho_px > 0) || (ps[i].rho_px < 0 && ps[j].rho_px < 0)))
                continue;
            if (rel_diff(ps[i].votes, ps[j].votes) > tol.tol_height) continue;
            PeakPair pp;
            pp.i = static_cast<int>(i);
            pp.j = static_cast<int>(j);
            pp.alpha = wrap180(ps[i].theta_deg);
            pp.side = std::abs(ps[i].rho_px + ps[j].rho_px);
            pp.height = (ps[i].votes + ps[j].votes) / 2.0;
            pairs.push_back(pp);
        }
    }
    std::vector<RectangleHit> hits = combine_pairs(ps, pairs, tol, RuleSet::extended);
    // Rule 3 spans both pairs: all four rho values share one strict sign.
    std::erase_if(hits, [](const RectangleHit& h) {
        const bool pos = h.peaks[0].rho_px > 0;
        for (const Peak& p : h.peaks)
            if ((p.rho_px > 0) != pos || p.rho_px == 0.0) return true;
        return false;
    });
    return hits;
}

std::vector<RectangleHit> scan(const GradientField& grad, const EdgeMap& edges,
                               const ScanParams& params) {
    if (params.window_size < 3 || params.window_size % 2 == 0)
        throw std::invalid_argument("scan: window size must be odd and >= 3");
    if (params.stride < 1)
        throw std::invalid_argument("scan: stride must be >= 1");

    const int half = params.window_size / 2;
    std::vector<RectangleHit> all;
    for (int r = half; r + half < edges.height; r += params.stride) {
        for (int c = half; c + half < edges.width; c += params.stride) {
            const RectWindow w{c, r, params.window_size};
            const HoughMode mode = params.rules == RuleSet::extended ? HoughMode::extended
                                                                     : HoughMode::regular;
            const Accumulator acc = windowed_hough(grad, edges, w, params.hough, mode);
            if (acc.max_votes() <= 0.0) continue;
            const std::vector<Peak> peaks =
                find_peaks(acc, params.peak_threshold, params.nms_theta_deg, params.nms_rho_px);
            std::vector<RectangleHit> hits = params.rules == RuleSet::extended
                                                 ? match_extended(peaks, params.tol, params.peak_cap)
                                                 : match_regular(peaks, params.tol, params.peak_cap);
            for (RectangleHit& h : hits) {
                h.center_col = c;
                h.center_row = r;
                all.push_back(h);
            }
        }
    }

    // Deduplicate hits from overlapping windows, strongest first.
    std::sort(all.begin(), all.end(), [](const RectangleHit& a, const RectangleHit& b) {
        return a.height_sum() > b.height_sum();
    });
    std::vector<RectangleHit> kept;
    for (const RectangleHit& h : all) {
        const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const RectangleHit& k) {
            return std::abs(h.center_col - k.center_col) < params.window_size &&
                   std::abs(h.center_row - k.center_row) < params.window_size;
        });
        if (!overlaps) kept.push_back(h);
    }
    std::sort(kept.begin(), kept.end(), [](const RectangleHit& a, const RectangleHit& b) {
        if (a.center_row != b.center_row) return a.center_row < b.center_row;
        if (a.center_col != b.center_col) return a.center_col < b.center_col;
        return a.height_sum() > b.height_sum();
    });
    return kept;
}

} // namespace houghx
