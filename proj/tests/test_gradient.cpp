#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "houghx/gradient.hpp"
#include "houghx/raster.hpp"

using namespace houghx;

namespace {

GrayImage vertical_step(int w, int h, int first_bright_col) {
    GrayImage img(w, h, 0);
    for (int r = 0; r < h; ++r)
        for (int c = first_bright_col; c < w; ++c)
            img.at(c, r) = 255;
    return img;
}

double wrap360(double deg) {
    double d = std::fmod(deg + 180.0, 360.0);
    if (d < 0) d += 360.0;
    return d - 180.0;
}

} // namespace

TEST_CASE("sobel on a vertical step") {
    const GrayImage img = vertical_step(9, 9, 4);
    const GradientField g = sobel(img);
    // step column adjacent to the bright side
    CHECK(g.gx_at(4, 4) == 1020);
    CHECK(g.gy_at(4, 4) == 0);
    CHECK(g.gx_at(3, 4) == 1020);
    CHECK(g.gx_at(2, 4) == 0);
}

TEST_CASE("sobel of a constant image is zero") {
    const GradientField g = sobel(GrayImage(7, 5, 123));
    for (double v : g.gx) CHECK(v == 0);
    for (double v : g.gy) CHECK(v == 0);
}

TEST_CASE("horizontal edge bright above gives positive gy") {
    GrayImage img(9, 9, 0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 9; ++c)
            img.at(c, r) = 255;  // top rows bright, and y points up
    const GradientField g = sobel(img);
    CHECK(g.gy_at(4, 4) == 1020);
    CHECK(g.gx_at(4, 4) == 0);
}

TEST_CASE("sobel rejects images smaller than the stencil") {
    CHECK_THROWS_AS(sobel(GrayImage(2, 5, 0)), std::invalid_argument);
}

TEST_CASE("orientation_full examples and range") {
    CHECK(orientation_full(1, 0) == doctest::Approx(0));
    CHECK(orientation_full(0, 1) == doctest::Approx(90));
    CHECK(orientation_full(-1, 0) == doctest::Approx(-180));
    CHECK_THROWS_AS(orientation_full(0, 0), std::invalid_argument);
}

TEST_CASE("orientation_half examples") {
    CHECK(orientation_half(1, 1) == doctest::Approx(45));
    CHECK(orientation_half(-1, -1) == doctest::Approx(45));
    CHECK(orientation_half(0, -3) == doctest::Approx(90));
    CHECK_THROWS_AS(orientation_half(0, 0), std::invalid_argument);
}

TEST_CASE("orientation antipode identities hold on random gradients") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 500; ++i) {
        const double gx = u(rng);
        const double gy = u(rng);
        if (gx == 0 && gy == 0) continue;
        CHECK(orientation_half(gx, gy) == doctest::Approx(orientation_half(-gx, -gy)));
        const double full = orientation_full(gx, gy);
        const double anti = orientation_full(-gx, -gy);
        CHECK(std::abs(wrap360(anti - full - 180.0)) == doctest::Approx(0).epsilon(1e-9));
        CHECK(full >= -180.0);
        CHECK(full < 180.0);
    }
}

TEST_CASE("magnitude in both modes") {
    CHECK(magnitude(3, 4) == doctest::Approx(5));
    CHECK(magnitude(0, 0) == 0);
    CHECK(magnitude(-3, 4, MagnitudeMode::l1) == doctest::Approx(7));
}

TEST_CASE("canny on a vertical step yields a single 1-px column") {
    const GrayImage img = vertical_step(21, 21, 10);
    const EdgeMap edges = canny_edges(sobel(img), 210, 84);
    for (int r = 1; r < 20; ++r) {
        int per_row = 0;
        for (int c = 0; c < 21; ++c) {
            if (edges.at(c, r)) {
                ++per_row;
                CHECK(c == 10);
            }
        }
        CHECK(per_row == 1);
    }
}

TEST_CASE("canny on a constant image is empty") {
    const EdgeMap edges = canny_edges(sobel(GrayImage(20, 20, 80)), 210, 84);
    CHECK(edges.count() == 0);
}

TEST_CASE("canny threshold ordering is validated") {
    CHECK_THROWS_AS(canny_edges(sobel(GrayImage(5, 5, 0)), 50, 100), std::invalid_argument);
}

TEST_CASE("rectangle edge count is close to its perimeter") {
    SceneSpec spec;
    spec.kind = SceneKind::rectangle_scene;
    spec.width = 101;
    spec.height = 101;
    spec.rects.push_back({{0, 0}, 40, 20, 0, 255});
    const EdgeMap edges = canny_edges(sobel(generate(spec)), 210, 84);
    const double perimeter = 2.0 * (40 + 20);
    CHECK(edges.count() >= 0.9 * perimeter);
    CHECK(edges.count() <= 1.1 * perimeter);
}

TEST_CASE("hysteresis: kept pixels are above low and linked to a seed") {
    SceneSpec spec;
    spec.kind = SceneKind::stripe;
    spec.width = 64;
    spec.height = 64;
    spec.angle_deg = 25;
    spec.thickness = 4;
    spec.noise_seed = 3;
    spec.noise_sigma = 20;
    const GrayImage img = generate(spec);
    const GradientField g = sobel(img, 1.0);
    const double high = 210, low = 84;
    const EdgeMap edges = canny_edges(g, high, low);
    REQUIRE(edges.count() > 0);

    // magnitude >= low everywhere on the map
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c)
            if (edges.at(c, r))
                CHECK(magnitude(g.gx_at(c, r), g.gy_at(c, r)) >= low);

    // every 8-connected component contains at least one seed
    std::vector<int> comp(64 * 64, -1);
    int n_comp = 0;
    std::vector<bool> has_seed;
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c) {
            if (!edges.at(c, r) || comp[r * 64 + c] >= 0) continue;
            const int id = n_comp++;
            has_seed.push_back(false);
            std::vector<std::pair<int, int>> stack{{c, r}};
            comp[r * 64 + c] = id;
            while (!stack.empty()) {
                auto [cc, cr] = stack.back();
                stack.pop_back();
                if (magnitude(g.gx_at(cc, cr), g.gy_at(cc, cr)) >= high) has_seed[id] = true;
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nc = cc + dc, nr = cr + dr;
                        if (nc < 0 || nc >= 64 || nr < 0 || nr >= 64) continue;
                        if (edges.at(nc, nr) && comp[nr * 64 + nc] < 0) {
                            comp[nr * 64 + nc] = id;
                            stack.push_back({nc, nr});
                        }
                    }
            }
        }
    for (bool s : has_seed) CHECK(s);
}

TEST_CASE("gradient component rendering centers zero at 128") {
    const GradientField g = sobel(vertical_step(9, 9, 4));
    const GrayImage gx = render_gradient_component(g, false);
    CHECK(gx.at(0, 4) == 128);
    CHECK(gx.at(4, 4) == 255);
    CHECK(render_gradient_component(sobel(GrayImage(5, 5, 9)), true).at(2, 2) == 128);
}
