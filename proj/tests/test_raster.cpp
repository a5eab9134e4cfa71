#include <doctest.h>

#include <stdexcept>

#include <random>
#include <string>

#include "houghx/raster.hpp"

using namespace houghx;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::initializer_list<int> payload) {
    std::vector<std::uint8_t> b(header.begin(), header.end());
    for (int v : payload) b.push_back(static_cast<std::uint8_t>(v));
    return b;
}

} // namespace

TEST_CASE("read_pgm parses a minimal file") {
    const GrayImage img = read_pgm(bytes_of("P5\n2 2\n255\n", {0, 255, 255, 0}));
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img.samples() == std::vector<std::uint8_t>{0, 255, 255, 0});
}

TEST_CASE("read_pgm skips comment lines") {
    const GrayImage img = read_pgm(bytes_of("P5\n# c\n3 3\n255\n", {1, 2, 3, 4, 5, 6, 7, 8, 9}));
    CHECK(img.width() == 3);
    CHECK(img.at(1, 1) == 5);
}

TEST_CASE("read_pgm rejects malformed input with byte offsets") {
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n2 2\n65535\n", {0, 0, 0, 0})),
                         doctest::Contains("unsupported maxval"), std::runtime_error);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P6\n2 2\n255\n", {0, 0, 0, 0})),
                         doctest::Contains("P5"), std::runtime_error);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n4 4\n255\n", {0, 0})),
                         doctest::Contains("truncated"), std::runtime_error);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n2 x\n255\n", {0, 0, 0, 0})),
                         doctest::Contains("byte offset"), std::runtime_error);
}

TEST_CASE("write_pgm emits width before height") {
    const GrayImage one(1, 1, std::vector<std::uint8_t>{0});
    const auto bytes = write_pgm(one);
    CHECK(std::string(bytes.begin(), bytes.end() - 1) == "P5\n1 1\n255\n");
    CHECK(bytes.back() == 0);

    const auto hdr = write_pgm(GrayImage(2, 3, 7));
    CHECK(std::string(hdr.begin(), hdr.begin() + 10) == "P5\n2 3\n255");
}

TEST_CASE("PGM round-trip is the identity on random images") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 40);
        const int h = 1 + static_cast<int>(rng() % 40);
        std::vector<std::uint8_t> samples(static_cast<std::size_t>(w) * h);
        for (auto& s : samples) s = static_cast<std::uint8_t>(rng() & 0xff);
        const GrayImage img(w, h, samples);
        CHECK(read_pgm(write_pgm(img)) == img);
    }
}

TEST_CASE("to_centered matches the pixel-center convention") {
    CHECK(to_centered(0, 0, 5, 5).x == -2);
    CHECK(to_centered(0, 0, 5, 5).y == 2);
    CHECK(to_centered(2, 2, 5, 5).x == 0);
    CHECK(to_centered(2, 2, 5, 5).y == 0);
    CHECK(to_centered(3, 1, 4, 4).x == 1.5);
    CHECK(to_centered(3, 1, 4, 4).y == 0.5);
    CHECK_THROWS_AS(to_centered(5, 0, 5, 5), std::invalid_argument);
}

TEST_CASE("to_centered is a bijection on the pixel lattice") {
    for (const auto [w, h] : {std::pair{5, 5}, std::pair{4, 6}, std::pair{3, 8}}) {
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                const auto [cc, rr] = from_centered(to_centered(c, r, w, h), w, h);
                CHECK(cc == c);
                CHECK(rr == r);
            }
    }
}

TEST_CASE("axis-aligned stripe covers exactly thickness rows") {
    SceneSpec spec;
    spec.kind = SceneKind::stripe;
    spec.width = 200;
    spec.height = 200;
    spec.angle_deg = 0;
    spec.thickness = 2;
    const GrayImage img = generate(spec);
    int bright_rows = 0;
    for (int r = 0; r < 200; ++r) {
        bool bright = img.at(0, r) == 255;
        for (int c = 0; c < 200; ++c) CHECK(img.at(c, r) == (bright ? 255 : 0));
        bright_rows += bright;
    }
    CHECK(bright_rows == 2);
}

TEST_CASE("centered rectangle covers exactly a*b lattice points") {
    SceneSpec spec;
    spec.kind = SceneKind::rectangle_scene;
    spec.width = 101;
    spec.height = 101;
    spec.rects.push_back({{0, 0}, 40, 20, 0, 255});
    const GrayImage img = generate(spec);
    int count = 0;
    for (std::uint8_t s : img.samples()) count += s == 255;
    CHECK(count == 40 * 20);
}

TEST_CASE("scene generation is deterministic") {
    SceneSpec spec;
    spec.kind = SceneKind::stripe;
    spec.width = 64;
    spec.height = 64;
    spec.angle_deg = 30;
    spec.thickness = 3;
    spec.noise_seed = 42;
    spec.noise_sigma = 10;
    CHECK(generate(spec) == generate(spec));

    spec.noise_seed = 43;
    CHECK(generate(spec).samples() != generate(SceneSpec{spec.kind, 64, 64, 30, 3, 0, 255, 0, {}, {}, 42, 10}).samples());
}

TEST_CASE("scene geometry outside the image is rejected") {
    SceneSpec spec;
    spec.kind = SceneKind::single_dot;
    spec.width = 9;
    spec.height = 9;
    spec.dot = {30, 0};
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}
