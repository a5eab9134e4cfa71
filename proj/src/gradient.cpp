#include "houghx/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace houghx {

std::size_t EdgeMap::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

std::vector<double> gaussian_blur(const std::vector<double>& src, int width, int height, double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel) k /= sum;

    std::vector<double> tmp(src.size()), dst(src.size());
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * src[static_cast<std::size_t>(r) * width + clampi(c + i, 0, width - 1)];
            tmp[static_cast<std::size_t>(r) * width + c] = acc;
        }
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp[static_cast<std::size_t>(clampi(r + i, 0, height - 1)) * width + c];
            dst[static_cast<std::size_t>(r) * width + c] = acc;
        }
    return dst;
}

} // namespace

GradientField sobel(const GrayImage& img, double smooth_sigma) {
    const int w = img.width();
    const int h = img.height();
    if (w < 3 || h < 3)
        throw std::invalid_argument("sobel: image must be at least 3x3");

    std::vector<double> lum(static_cast<std::size_t>(w) * h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            lum[static_cast<std::size_t>(r) * w + c] = img.at(c, r);
    if (smooth_sigma > 0)
        lum = gaussian_blur(lum, w, h, smooth_sigma);

    GradientField out;
    out.width = w;
    out.height = h;
    out.gx.resize(lum.size());
    out.gy.resize(lum.size());

    auto sample = [&](int c, int r) {
        return lum[static_cast<std::size_t>(clampi(r, 0, h - 1)) * w + clampi(c, 0, w - 1)];
    };

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double tl = sample(c - 1, r - 1), tm = sample(c, r - 1), tr = sample(c + 1, r - 1);
            const double ml = sample(c - 1, r), mr = sample(c + 1, r);
            const double bl = sample(c - 1, r + 1), bm = sample(c, r + 1), br = sample(c + 1, r + 1);
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            out.gx[i] = (tr + 2 * mr + br) - (tl + 2 * ml + bl);
            // Rows grow downward while y grows upward, so "above minus below".
            out.gy[i] = (tl + 2 * tm + tr) - (bl + 2 * bm + br);
        }
    }
    return out;
}

double orientation_full(double gx, double gy) {
    if (gx == 0.0 && gy == 0.0)
        throw std::invalid_argument("orientation_full: zero gradient has no orientation");
    double deg = std::atan2(gy, gx) * kRadToDeg;
    if (deg >= 180.0) deg -= 360.0;  // atan2 returns +180 for (-x, -0)
    return deg;
}

double orientation_half(double gx, double gy) {
    if (gx == 0.0 && gy == 0.0)
        throw std::invalid_argument("orientation_half: zero gradient has no orientation");
    if (gx == 0.0) return 90.0;
    return std::atan(gy / gx) * kRadToDeg;
}

double magnitude(double gx, double gy, MagnitudeMode mode) {
    return mode == MagnitudeMode::euclidean ? std::hypot(gx, gy) : std::abs(gx) + std::abs(gy);
}

EdgeMap canny_edges(const GradientField& grad, double high, double low, MagnitudeMode mode) {
    if (!(low > 0) || low > high)
        throw std::invalid_argument("canny_edges: thresholds must satisfy 0 < low <= high");
    const int w = grad.width;
    const int h = grad.height;

    std::vector<double> mag(static_cast<std::size_t>(w) * h, 0.0);
    for (std::size_t i = 0; i < mag.size(); ++i)
        mag[i] = magnitude(grad.gx[i], grad.gy[i], mode);

    auto mag_at = [&](int c, int r) { return mag[static_cast<std::size_t>(r) * w + c]; };

    // Non-maximum suppression against the two neighbors along the gradient
    // direction quantized to 0/45/90/135 degrees. Strict comparison on the
    // forward side breaks plateau ties toward the gradient direction.
    std::vector<std::uint8_t> thin(mag.size(), 0);
    for (int r = 1; r < h - 1; ++r) {
        for (int c = 1; c < w - 1; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            const double m = mag[i];
            if (m < low) continue;
            const double gx = grad.gx[i];
            const double gy = grad.gy[i];
            if (gx == 0.0 && gy == 0.0) continue;
            double ang = std::atan2(gy, gx) * kRadToDeg;
            if (ang < 0) ang += 180.0;  // direction bins are antipode symmetric
            int dc, dr_up;
            if (ang < 22.5 || ang >= 157.5) { dc = 1; dr_up = 0; }
            else if (ang < 67.5)            { dc = 1; dr_up = 1; }
            else if (ang < 112.5)           { dc = 0; dr_up = 1; }
            else                            { dc = -1; dr_up = 1; }
            // +y is one row up
            const double fwd = mag_at(c + dc, r - dr_up);
            const double bwd = mag_at(c - dc, r + dr_up);
            if (m > fwd && m >= bwd)
                thin[i] = 1;
        }
    }

    // Hysteresis: grow 8-connected from seeds >= high through pixels >= low.
    EdgeMap edges;
    edges.width = w;
    edges.height = h;
    edges.mask.assign(mag.size(), 0);
    std::vector<std::size_t> stack;
    for (int r = 1; r < h - 1; ++r)
        for (int c = 1; c < w - 1; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            if (thin[i] && mag[i] >= high && !edges.mask[i]) {
                edges.mask[i] = 1;
                stack.push_back(i);
                while (!stack.empty()) {
                    const std::size_t j = stack.back();
                    stack.pop_back();
                    const int jr = static_cast<int>(j / w);
                    const int jc = static_cast<int>(j % w);
                    for (int dr = -1; dr <= 1; ++dr)
                        for (int dc = -1; dc <= 1; ++dc) {
                            const int nr = jr + dr, nc = jc + dc;
                            if (nr < 1 || nr >= h - 1 || nc < 1 || nc >= w - 1) continue;
                            const std::size_t n = static_cast<std::size_t>(nr) * w + nc;
                            if (thin[n] && !edges.mask[n] && mag[n] >= low) {
                                edges.mask[n] = 1;
                                stack.push_back(n);
                            }
                        }
                }
            }
        }
    return edges;
}

GrayImage render_gradient_component(const GradientField& grad, bool y_component) {
    const std::vector<double>& g = y_component ? grad.gy : grad.gx;
    double peak = 0.0;
    for (double v : g) peak = std::max(peak, std::abs(v));
    GrayImage img(grad.width, grad.height, 128);
    if (peak == 0.0) return img;
    for (int r = 0; r < grad.height; ++r)
        for (int c = 0; c < grad.width; ++c) {
            const double v = g[static_cast<std::size_t>(r) * grad.width + c];
            const long px = std::lround(128.0 + 127.0 * v / peak);
            img.at(c, r) = static_cast<std::uint8_t>(std::clamp(px, 0L, 255L));
        }
    return img;
}

} // namespace houghx
