#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "houghx/peaks.hpp"

using namespace houghx;

namespace {

Accumulator small_acc(HoughMode mode = HoughMode::regular) {
    HoughParams params;
    params.delta_theta = 5.0;
    return Accumulator(AccumulatorGeometry::for_image(20, 20, mode, params));
}

} // namespace

TEST_CASE("find_peaks on trivial accumulators") {
    Accumulator acc = small_acc();
    CHECK(find_peaks(acc).empty());

    acc.add(7, 3, 5);
    const auto peaks = find_peaks(acc);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].theta_bin == 7);
    CHECK(peaks[0].rho_bin == 3);
    CHECK(peaks[0].votes == 5);
    CHECK(peaks[0].theta_deg == acc.geometry().theta_center(7));

    CHECK_THROWS_AS(find_peaks(acc, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(find_peaks(acc, 1.5), std::invalid_argument);
}

TEST_CASE("peak NMS is sound: no returned peak suppresses another") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Accumulator acc = small_acc(trial % 2 ? HoughMode::extended : HoughMode::regular);
        const auto& g = acc.geometry();
        for (int n = 0; n < 200; ++n)
            acc.add(static_cast<int>(rng() % g.n_theta), static_cast<int>(rng() % g.n_rho),
                    1.0 + static_cast<double>(rng() % 8));
        const double nms_theta = 10.0, nms_rho = 3.0;
        const auto peaks = find_peaks(acc, 0.1, nms_theta, nms_rho);
        const int wt = static_cast<int>(nms_theta / g.delta_theta);
        const int wj = static_cast<int>(nms_rho / g.delta_rho);
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            if (i > 0) CHECK(peaks[i - 1].votes >= peaks[i].votes);
            for (std::size_t k = i + 1; k < peaks.size(); ++k) {
                int dt = std::abs(peaks[i].theta_bin - peaks[k].theta_bin);
                if (g.mode == HoughMode::extended) dt = std::min(dt, g.n_theta - dt);
                const int dj = std::abs(peaks[i].rho_bin - peaks[k].rho_bin);
                CHECK((dt > wt || dj > wj));
            }
        }
    }
}

TEST_CASE("a 40-px line yields a peak at its true parameters") {
    // Horizontal line y = 10 spanning 40 px, gradient straight up.
    EdgeMap edges;
    edges.width = 65;
    edges.height = 65;
    edges.mask.assign(65 * 65, 0);
    GradientField grad;
    grad.width = 65;
    grad.height = 65;
    grad.gx.assign(65 * 65, 0.0);
    grad.gy.assign(65 * 65, 0.0);
    // row 22 sits at y = 10 in a 65-high image
    for (int c = 12; c < 52; ++c) {
        edges.set(c, 22, true);
        grad.gy[22 * 65 + c] = 100.0;
    }

    const HoughParams params;
    const auto geom = AccumulatorGeometry::for_image(65, 65, HoughMode::extended, params);
    const Accumulator acc = accumulate_oriented(edges, grad, geom, params);
    const auto peaks = find_peaks(acc, 0.5, 5.0, 5.0);
    REQUIRE(!peaks.empty());
    const double true_rho = 10.0;
    CHECK(std::abs(peaks[0].theta_deg - 90.0) <= params.delta_theta);
    CHECK(std::abs(peaks[0].rho_px - true_rho) <= params.delta_rho);
    CHECK(peaks[0].votes >= 0.85 * 40);
    CHECK(peaks[0].votes <= 1.15 * 40);
}

TEST_CASE("line_of_peak recovers the directed Hesse form") {
    const OrientedLine axis = line_of_peak({0.0, 5.0, 1.0, 0, 0});
    CHECK(axis.normal().x == doctest::Approx(1));
    CHECK(axis.normal().y == doctest::Approx(0));
    CHECK(axis.direction().x == doctest::Approx(0));
    CHECK(axis.direction().y == doctest::Approx(1));

    // 12/5 = (3/5) x + (4/5) y
    const OrientedLine l = line_of_peak({53.13, 2.4, 1.0, 0, 0});
    CHECK(l.normal().x == doctest::Approx(0.6).epsilon(1e-4));
    CHECK(l.normal().y == doctest::Approx(0.8).epsilon(1e-4));
    CHECK(l.normal().x * 1.44 + l.normal().y * 1.92 == doctest::Approx(2.4).epsilon(1e-4));

    // the antipodal peak describes the same point set, direction reversed
    const OrientedLine anti = line_of_peak({-126.87, -2.4, 1.0, 0, 0});
    CHECK(anti.normal().x * 1.44 + anti.normal().y * 1.92 == doctest::Approx(-2.4).epsilon(1e-4));
    CHECK(anti.direction().x == doctest::Approx(-l.direction().x).epsilon(1e-4));
    CHECK(anti.direction().y == doctest::Approx(-l.direction().y).epsilon(1e-4));
}

TEST_CASE("the (normal, direction) frame is right-handed for every theta") {
    for (double theta = -180.0; theta < 180.0; theta += 7.5) {
        const OrientedLine l{theta, 3.0};
        const Vec2 n = l.normal();
        const Vec2 d = l.direction();
        CHECK(n.x * d.x + n.y * d.y == doctest::Approx(0).epsilon(1e-12));
        // rotating n by +90 degrees gives d
        CHECK(-n.y == doctest::Approx(d.x).epsilon(1e-12));
        CHECK(n.x == doctest::Approx(d.y).epsilon(1e-12));
    }
}

TEST_CASE("clip_to_image intersects the centered rectangle") {
    const auto seg = clip_to_image({0.0, 5.0}, 20, 20);
    REQUIRE(seg);
    CHECK(seg->p0.x == doctest::Approx(5));
    CHECK(seg->p0.y == doctest::Approx(-10));
    CHECK(seg->p1.x == doctest::Approx(5));
    CHECK(seg->p1.y == doctest::Approx(10));

    CHECK(!clip_to_image({0.0, 50.0}, 20, 20));
}

TEST_CASE("clip of the 53.13-degree line lands on the 10x8 boundary") {
    const OrientedLine l{53.13, 2.4};
    const auto seg = clip_to_image(l, 10, 8);
    REQUIRE(seg);
    // direction has negative x, so p0 is the right-boundary intersection
    CHECK(seg->p0.x == doctest::Approx(5).epsilon(1e-6));
    CHECK(seg->p0.y == doctest::Approx(-0.75).epsilon(1e-3));
    CHECK(seg->p1.y == doctest::Approx(4).epsilon(1e-6));
    CHECK(seg->p1.x == doctest::Approx(-4.0 / 3.0).epsilon(1e-3));

    const Vec2 n = l.normal();
    for (const CenteredPoint& p : {seg->p0, seg->p1})
        CHECK(std::abs(p.x * n.x + p.y * n.y - l.rho) < 1e-9);
}

TEST_CASE("clipped endpoints satisfy the line equation to 1e-9 px") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ut(-180.0, 180.0);
    std::uniform_real_distribution<double> ur(-12.0, 12.0);
    for (int i = 0; i < 200; ++i) {
        const OrientedLine l{ut(rng), ur(rng)};
        const auto seg = clip_to_image(l, 30, 20);
        if (!seg) continue;
        const Vec2 n = l.normal();
        const Vec2 d = l.direction();
        for (const CenteredPoint& p : {seg->p0, seg->p1}) {
            CHECK(std::abs(p.x * n.x + p.y * n.y - l.rho) < 1e-9);
            const bool on_x = std::abs(std::abs(p.x) - 15.0) < 1e-9;
            const bool on_y = std::abs(std::abs(p.y) - 10.0) < 1e-9;
            CHECK((on_x || on_y));
        }
        // ordered along +direction
        CHECK((seg->p1.x - seg->p0.x) * d.x + (seg->p1.y - seg->p0.y) * d.y >= 0);
    }
}

TEST_CASE("draw_segments burns the segment into the raster") {
    const GrayImage img(21, 21, 200);
    const auto seg = clip_to_image({0.0, 0.0}, 21, 21);
    REQUIRE(seg);
    const GrayImage out = draw_segments(img, {*seg}, 0);
    for (int r = 0; r < 21; ++r) CHECK(out.at(10, r) == 0);
    CHECK(out.at(0, 10) == 200);
}
