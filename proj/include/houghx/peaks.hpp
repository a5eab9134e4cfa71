#ifndef HOUGHX_PEAKS_HPP
#define HOUGHX_PEAKS_HPP

#include <optional>
#include <vector>

#include "houghx/hough.hpp"
#include "houghx/raster.hpp"

namespace houghx {

struct Peak {
    double theta_deg = 0.0;  // bin center
    double rho_px = 0.0;     // bin center
    double votes = 0.0;
    int theta_bin = 0;
    int rho_bin = 0;
};

// Local maxima at or above threshold_frac * max, non-maximum suppressed over
// a (+-nms_theta, +-nms_rho) bin neighborhood (theta wraps in extended mode).
// Sorted by votes descending.
std::vector<Peak> find_peaks(const Accumulator& acc, double threshold_frac = 0.5,
                             double nms_theta_deg = 5.0, double nms_rho_px = 5.0);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Directed line in Hesse normal form; (normal, direction) is right-handed.
struct OrientedLine {
    double theta_deg = 0.0;
    double rho = 0.0;

    Vec2 normal() const;
    Vec2 direction() const;  // normal rotated +90 degrees
};

OrientedLine line_of_peak(const Peak& p);

struct Segment {
    CenteredPoint p0;
    CenteredPoint p1;  // ordered along +direction
};

// Intersection of the infinite line with the centered rectangle
// [-W/2, W/2] x [-H/2, H/2]; nullopt if the line misses it.
std::optional<Segment> clip_to_image(const OrientedLine& line, int width, int height);

// Burns segments into a copy of the image at the given intensity.
GrayImage draw_segments(const GrayImage& img, const std::vector<Segment>& segs,
                        std::uint8_t intensity = 0);

} // namespace houghx

#endif
