#ifndef HOUGHX_RASTER_HPP
#define HOUGHX_RASTER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace houghx {

// Math coordinates: x rightward, y upward, origin at the image center.
struct CenteredPoint {
    double x = 0.0;
    double y = 0.0;
};

class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> samples);

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int col, int row) const { return samples_[static_cast<std::size_t>(row) * width_ + col]; }
    std::uint8_t& at(int col, int row) { return samples_[static_cast<std::size_t>(row) * width_ + col]; }

    const std::vector<std::uint8_t>& samples() const { return samples_; }

    bool operator==(const GrayImage& other) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> samples_;
};

// Pixel (col, row) -> centered coordinates. Pixel-center convention:
// the center of an odd-sized image is exactly (0, 0).
CenteredPoint to_centered(int col, int row, int width, int height);

// Exact inverse of to_centered for lattice points.
std::pair<int, int> from_centered(const CenteredPoint& p, int width, int height);

enum class SceneKind { stripe, rectangle_scene, step_edge, single_dot };

struct RectSpec {
    CenteredPoint center;
    double a = 0.0;          // extent along the rectangle's alpha axis, px
    double b = 0.0;          // extent along the perpendicular axis, px
    double alpha_deg = 0.0;  // rotation of the a axis from +x
    std::uint8_t intensity = 255;
};

struct SceneSpec {
    SceneKind kind = SceneKind::stripe;
    int width = 0;
    int height = 0;

    double angle_deg = 0.0;  // stripe direction / step edge direction, from +x
    double thickness = 1.0;  // stripe only
    double offset = 0.0;     // stripe centerline offset from the origin, along its normal

    std::uint8_t bright = 255;
    std::uint8_t dark = 0;

    std::vector<RectSpec> rects;  // rectangle_scene only
    CenteredPoint dot;            // single_dot only

    std::uint32_t noise_seed = 0;
    double noise_sigma = 0.0;
};

// Deterministic: equal specs produce byte-identical images.
GrayImage generate(const SceneSpec& spec);

// Binary PGM (P5), maxval <= 255. Errors name the offending byte offset.
GrayImage read_pgm(const std::vector<std::uint8_t>& bytes);
GrayImage read_pgm_file(const std::string& path);

std::vector<std::uint8_t> write_pgm(const GrayImage& img);
void write_pgm_file(const GrayImage& img, const std::string& path);

} // namespace houghx

#endif
