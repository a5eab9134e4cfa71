#ifndef HOUGHX_GRADIENT_HPP
#define HOUGHX_GRADIENT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "houghx/raster.hpp"

namespace houghx {

// Per-pixel image gradient. gy is positive toward +y (upward in centered
// coordinates), so a horizontal edge brighter above than below has gy > 0.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> gx;
    std::vector<double> gy;

    double gx_at(int col, int row) const { return gx[static_cast<std::size_t>(row) * width + col]; }
    double gy_at(int col, int row) const { return gy[static_cast<std::size_t>(row) * width + col]; }
};

struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    bool at(int col, int row) const { return mask[static_cast<std::size_t>(row) * width + col] != 0; }
    void set(int col, int row, bool v) { mask[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0; }
    std::size_t count() const;
};

enum class MagnitudeMode { euclidean, l1 };

// 3x3 Sobel with replicated borders. smooth_sigma > 0 applies a Gaussian
// blur before differentiation.
GradientField sobel(const GrayImage& img, double smooth_sigma = 0.0);

// Full-range orientation, degrees in [-180, 180).
double orientation_full(double gx, double gy);

// Half-range orientation, degrees in [-90, 90]; gx = 0 maps to 90.
double orientation_half(double gx, double gy);

double magnitude(double gx, double gy, MagnitudeMode mode = MagnitudeMode::euclidean);

// Magnitude thresholding + 4-direction non-maximum suppression + two-level
// hysteresis (8-connected). The outermost 1-px frame is always excluded.
EdgeMap canny_edges(const GradientField& grad, double high, double low,
                    MagnitudeMode mode = MagnitudeMode::euclidean);

// Renders one gradient component as mid-gray-centered PGM (128 = zero),
// scaled by the largest absolute value. Inspection only.
GrayImage render_gradient_component(const GradientField& grad, bool y_component);

} // namespace houghx

#endif
