#include <doctest.h>

#include <random>

#include "eff/errors.hpp"
#include "eff/geometry.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace eff;
using test::rect_quad;

TEST_CASE("axis-aligned quad rasterizes by the pixel-center rule") {
    // centers at k+0.5 inside [2,5]x[2,4] -> x in {2,3,4}, y in {2,3}
    const BinaryMask mask = rasterize_quad(rect_quad(2, 2, 3, 2), 8, 8);
    CHECK(mask.count() == 6);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            CHECK(mask.get(x, y) == (x >= 2 && x <= 4 && y >= 2 && y <= 3));
}

TEST_CASE("quad covering the whole image sets every bit") {
    const BinaryMask mask = rasterize_quad(rect_quad(0, 0, 8, 8), 8, 8);
    CHECK(mask.count() == 64);
}

TEST_CASE("quad outside the image is degenerate") {
    CHECK_THROWS_AS(rasterize_quad(rect_quad(10, 10, 4, 4), 8, 8), DegenerateRegionError);
    CHECK_THROWS_AS(rasterize_quad(rect_quad(2, 2, 0, 4), 8, 8), DegenerateRegionError);
}

TEST_CASE("partially outside quads clip instead of failing") {
    const BinaryMask mask = rasterize_quad(rect_quad(-3, -3, 6, 6), 8, 8);
    CHECK(mask.count() == 9); // x,y in {0,1,2}
}

TEST_CASE("non-finite vertices are degenerate") {
    Quad q = rect_quad(1, 1, 3, 3);
    q.v[2].x = std::numeric_limits<double>::quiet_NaN();
    CHECK(quad_is_degenerate(q, 8, 8));
}

TEST_CASE("rasterization agrees with an independent point-in-polygon oracle") {
    std::mt19937_64 rng(42);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
    };
    int checked = 0;
    for (int iter = 0; iter < 60; ++iter) {
        const int w = 8 + static_cast<int>(rng() % 57);
        const int h = 8 + static_cast<int>(rng() % 57);
        Quad q;
        const double cx = uniform(2.0, w - 2.0);
        const double cy = uniform(2.0, h - 2.0);
        // random convex-ish quad around a center, one corner per quadrant
        q.v[0] = {cx - uniform(1.0, w / 2.0), cy - uniform(1.0, h / 2.0)};
        q.v[1] = {cx + uniform(1.0, w / 2.0), cy - uniform(1.0, h / 2.0)};
        q.v[2] = {cx + uniform(1.0, w / 2.0), cy + uniform(1.0, h / 2.0)};
        q.v[3] = {cx - uniform(1.0, w / 2.0), cy + uniform(1.0, h / 2.0)};
        BinaryMask got;
        try {
            got = rasterize_quad(q, w, h);
        } catch (const DegenerateRegionError&) {
            continue;
        }
        const BinaryMask expected = oracle::rasterize_brute(q, w, h);
        REQUIRE(got == expected);
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("half-integer quads keep boundary centers inside") {
    // quad [0.5,2.5]^2: centers 0.5 and 1.5 are interior, 2.5 lies exactly on
    // the boundary and still counts -> pixels {0,1,2}^2
    const BinaryMask mask = rasterize_quad(rect_quad(0.5, 0.5, 2.0, 2.0), 4, 4);
    CHECK(mask.count() == 9);
    CHECK(mask.get(0, 0));
    CHECK(mask.get(2, 2));
    CHECK_FALSE(mask.get(3, 3));
}
