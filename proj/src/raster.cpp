#include "houghx/raster.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

namespace houghx {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height),
      samples_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("GrayImage: dimensions must be positive");
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("GrayImage: dimensions must be positive");
    if (samples_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("GrayImage: sample count does not match dimensions");
}

CenteredPoint to_centered(int col, int row, int width, int height) {
    if (col < 0 || col >= width || row < 0 || row >= height)
        throw std::invalid_argument("to_centered: pixel index out of range");
    return {col - (width - 1) / 2.0, (height - 1) / 2.0 - row};
}

std::pair<int, int> from_centered(const CenteredPoint& p, int width, int height) {
    const int col = static_cast<int>(std::lround(p.x + (width - 1) / 2.0));
    const int row = static_cast<int>(std::lround((height - 1) / 2.0 - p.y));
    if (col < 0 || col >= width || row < 0 || row >= height)
        throw std::invalid_argument("from_centered: point outside the pixel lattice");
    return {col, row};
}

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::uint8_t clamp_byte(double v) {
    const long r = std::lround(v);
    if (r < 0) return 0;
    if (r > 255) return 255;
    return static_cast<std::uint8_t>(r);
}

void check_inside(double x, double y, int width, int height, const char* what) {
    if (std::abs(x) > width / 2.0 || std::abs(y) > height / 2.0)
        throw std::invalid_argument(std::string("generate: ") + what + " exceeds image bounds");
}

} // namespace

GrayImage generate(const SceneSpec& spec) {
    if (spec.width < 1 || spec.height < 1)
        throw std::invalid_argument("generate: image dimensions must be positive");
    if (spec.noise_sigma < 0)
        throw std::invalid_argument("generate: noise_sigma must be non-negative");

    GrayImage img(spec.width, spec.height, spec.dark);

    switch (spec.kind) {
    case SceneKind::stripe: {
        if (spec.thickness <= 0)
            throw std::invalid_argument("generate: stripe thickness must be positive");
        // Centerline runs along angle_deg, offset along the left normal.
        const double nx = -std::sin(spec.angle_deg * kDegToRad);
        const double ny = std::cos(spec.angle_deg * kDegToRad);
        check_inside(nx * spec.offset, ny * spec.offset, spec.width, spec.height, "stripe centerline");
        for (int r = 0; r < spec.height; ++r) {
            for (int c = 0; c < spec.width; ++c) {
                const CenteredPoint p = to_centered(c, r, spec.width, spec.height);
                const double d = p.x * nx + p.y * ny - spec.offset;
                if (std::abs(d) < spec.thickness / 2.0)
                    img.at(c, r) = spec.bright;
            }
        }
        break;
    }
    case SceneKind::rectangle_scene: {
        for (const RectSpec& rc : spec.rects) {
            if (rc.a <= 0 || rc.b <= 0)
                throw std::invalid_argument("generate: rectangle sides must be positive");
            const double half = std::hypot(rc.a, rc.b) / 2.0;
            check_inside(std::abs(rc.center.x) + half, 0.0, spec.width, spec.height, "rectangle");
            check_inside(0.0, std::abs(rc.center.y) + half, spec.width, spec.height, "rectangle");
            const double ca = std::cos(rc.alpha_deg * kDegToRad);
            const double sa = std::sin(rc.alpha_deg * kDegToRad);
            for (int r = 0; r < spec.height; ++r) {
                for (int c = 0; c < spec.width; ++c) {
                    const CenteredPoint p = to_centered(c, r, spec.width, spec.height);
                    const double dx = p.x - rc.center.x;
                    const double dy = p.y - rc.center.y;
                    const double u = dx * ca + dy * sa;
                    const double v = -dx * sa + dy * ca;
                    // Half-open extents so an even-sided rectangle covers
                    // exactly a*b lattice points.
                    if (u >= -rc.a / 2.0 && u < rc.a / 2.0 && v >= -rc.b / 2.0 && v < rc.b / 2.0)
                        img.at(c, r) = rc.intensity;
                }
            }
        }
        break;
    }
    case SceneKind::step_edge: {
        // Edge line through the origin along angle_deg; bright on the side of
        // the left normal. Intensity ramps linearly over one pixel so the
        // gradient direction is well resolved.
        const double nx = -std::sin(spec.angle_deg * kDegToRad);
        const double ny = std::cos(spec.angle_deg * kDegToRad);
        for (int r = 0; r < spec.height; ++r) {
            for (int c = 0; c < spec.width; ++c) {
                const CenteredPoint p = to_centered(c, r, spec.width, spec.height);
                const double s = p.x * nx + p.y * ny;
                double t = s + 0.5;
                if (t < 0) t = 0;
                if (t > 1) t = 1;
                img.at(c, r) = clamp_byte(spec.dark + t * (static_cast<double>(spec.bright) - spec.dark));
            }
        }
        break;
    }
    case SceneKind::single_dot: {
        check_inside(spec.dot.x, spec.dot.y, spec.width, spec.height, "dot");
        const auto [c, r] = from_centered(spec.dot, spec.width, spec.height);
        img.at(c, r) = spec.bright;
        break;
    }
    }

    if (spec.noise_sigma > 0) {
        std::mt19937 rng(spec.noise_seed);
        std::normal_distribution<double> noise(0.0, spec.noise_sigma);
        for (int r = 0; r < spec.height; ++r)
            for (int c = 0; c < spec.width; ++c)
                img.at(c, r) = clamp_byte(img.at(c, r) + noise(rng));
    }
    return img;
}

namespace {

struct PgmCursor {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("read_pgm: " + what + " at byte offset " + std::to_string(pos));
    }

    bool eof() const { return pos >= bytes.size(); }
    std::uint8_t peek() const { return bytes[pos]; }

    // Skips whitespace and '#' comment lines between header tokens.
    void skip_separators() {
        while (!eof()) {
            const std::uint8_t b = peek();
            if (b == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (std::isspace(b)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    int read_int(const char* name) {
        skip_separators();
        if (eof()) fail(std::string("missing ") + name);
        if (!std::isdigit(peek())) fail(std::string("malformed ") + name);
        long value = 0;
        while (!eof() && std::isdigit(peek())) {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000) fail(std::string(name) + " out of range");
            ++pos;
        }
        return static_cast<int>(value);
    }
};

} // namespace

GrayImage read_pgm(const std::vector<std::uint8_t>& bytes) {
    PgmCursor cur{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        cur.fail("expected magic \"P5\"");
    cur.pos = 2;

    const int width = cur.read_int("width");
    const int height = cur.read_int("height");
    const int maxval = cur.read_int("maxval");
    if (width < 1 || height < 1) cur.fail("non-positive dimensions");
    if (maxval > 255) cur.fail("unsupported maxval " + std::to_string(maxval) + " (must be <= 255)");
    if (maxval < 1) cur.fail("invalid maxval");

    // Exactly one whitespace byte separates the header from the payload.
    if (cur.eof() || !std::isspace(cur.peek())) cur.fail("missing separator after maxval");
    ++cur.pos;

    const std::size_t need = static_cast<std::size_t>(width) * height;
    if (bytes.size() - cur.pos < need) {
        cur.pos = bytes.size();
        cur.fail("truncated payload (need " + std::to_string(need) + " bytes)");
    }
    std::vector<std::uint8_t> samples(bytes.begin() + cur.pos, bytes.begin() + cur.pos + need);
    return GrayImage(width, height, std::move(samples));
}

GrayImage read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_pgm_file: cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return read_pgm(bytes);
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", img.width(), img.height());
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), img.samples().begin(), img.samples().end());
    return out;
}

void write_pgm_file(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm_file: cannot open " + path);
    const std::vector<std::uint8_t> bytes = write_pgm(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write_pgm_file: write failed for " + path);
}

} // namespace houghx
