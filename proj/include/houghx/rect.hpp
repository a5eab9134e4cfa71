#ifndef HOUGHX_RECT_HPP
#define HOUGHX_RECT_HPP

#include <array>
#include <vector>

#include "houghx/gradient.hpp"
#include "houghx/hough.hpp"
#include "houghx/peaks.hpp"

namespace houghx {

struct RectWindow {
    int center_col = 0;
    int center_row = 0;
    int size = 0;  // odd, px
};

struct RectTolerances {
    double tol_theta = 3.0;   // deg, within-pair orientation agreement
    double tol_orth = 3.0;    // deg, deviation from 90-degree pair separation
    double tol_rho = 3.0;     // px
    double tol_height = 0.25; // relative peak-height difference within a pair
    // Also require peak heights to match the opposite pair's side length.
    bool strict_height_length = false;
};

enum class RuleSet { regular, extended };

struct RectangleHit {
    int center_col = 0;
    int center_row = 0;
    double alpha_deg = 0.0;  // orientation of the pair that recovered a, [-90, 90)
    double a = 0.0;          // longer recovered side, px
    double b = 0.0;          // shorter recovered side, px
    std::array<Peak, 4> peaks{};
    RuleSet rule_set = RuleSet::regular;

    double height_sum() const;
};

// HT of the edge pixels inside the window, coordinates re-anchored to the
// window center. Regular mode votes full sinusoids (the classical windowed
// HT); extended mode votes gradient-oriented.
Accumulator windowed_hough(const GradientField& grad, const EdgeMap& edges,
                           const RectWindow& w, const HoughParams& params, HoughMode mode);

// Jung-Schramm four-peak constellations: same within-pair orientation,
// canceling rho, similar heights, pairs 90 degrees apart.
std::vector<RectangleHit> match_regular(const std::vector<Peak>& peaks,
                                        const RectTolerances& tol, int peak_cap = 16);

// Oriented constellations: antipodal within-pair orientations, equal rho,
// all four rho sharing one strict sign.
std::vector<RectangleHit> match_extended(const std::vector<Peak>& peaks,
                                         const RectTolerances& tol, int peak_cap = 16);

struct ScanParams {
    int window_size = 0;
    int stride = 1;
    HoughParams hough;
    double peak_threshold = 0.5;
    double nms_theta_deg = 5.0;
    double nms_rho_px = 5.0;
    RectTolerances tol;
    RuleSet rules = RuleSet::extended;
    int peak_cap = 16;
};

// Sliding-window detection over the whole image. Overlapping hits are
// deduplicated keeping the largest height sum; output is ordered by window
// position, then descending height sum.
std::vector<RectangleHit> scan(const GradientField& grad, const EdgeMap& edges,
                               const ScanParams& params);

} // namespace houghx

#endif
