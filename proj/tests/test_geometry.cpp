#include <doctest.h>

#include <cmath>
#include <random>

#include "irsplan/errors.hpp"
#include "irsplan/geometry.hpp"

using namespace irsplan;

namespace {

const Position kIrs{0.0, 0.0, 10.0};
const Vec3 kAxisX{1.0, 0.0, 0.0};
const TargetArea kArea{{150.0, 0.0, 0.0}, 100.0, 40.0};

// independent evaluations of the two extreme points of the reference area
const double kPhiMin = 100.0 / std::sqrt(100.0 * 100.0 + 20.0 * 20.0 + 10.0 * 10.0);
const double kPhiMax = 200.0 / std::sqrt(200.0 * 200.0 + 10.0 * 10.0);

} // namespace

TEST_CASE("direction_cosine basic values")
{
    CHECK(direction_cosine({0, 0, 0}, {10, 0, 0}, kAxisX) == doctest::Approx(1.0));
    CHECK(direction_cosine({0, 0, 0}, {0, 10, 0}, kAxisX) == doctest::Approx(0.0));
    const double expected = 150.0 / std::sqrt(150.0 * 150.0 + 10.0 * 10.0);
    CHECK(direction_cosine({0, 0, 10}, {150, 0, 0}, kAxisX) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.99779).epsilon(1e-5));
}

TEST_CASE("direction_cosine rejects coincident points")
{
    CHECK_THROWS_AS(direction_cosine({1, 2, 3}, {1, 2, 3}, kAxisX), geometry_error);
}

TEST_CASE("direction_cosine stays in [-1,1] and is antisymmetric under axis negation")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        const Position a{coord(gen), coord(gen), std::abs(coord(gen))};
        const Position b{coord(gen), coord(gen), std::abs(coord(gen))};
        if (distance(a, b) == 0.0)
            continue;
        const double c = direction_cosine(a, b, kAxisX);
        CHECK(c >= -1.0);
        CHECK(c <= 1.0);
        const Vec3 neg{-kAxisX.x, -kAxisX.y, -kAxisX.z};
        CHECK(direction_cosine(a, b, neg) == doctest::Approx(-c).epsilon(1e-14));
    }
}

TEST_CASE("spatial_freq_bounds on the reference geometry")
{
    const auto [lo, hi] = spatial_freq_bounds(kArea, kIrs, kAxisX, 0.5);
    // extremes sit on a corner and on the midpoint of the far edge, both of
    // which are grid points
    CHECK(lo == doctest::Approx(kPhiMin).epsilon(1e-12));
    CHECK(hi == doctest::Approx(kPhiMax).epsilon(1e-12));
    CHECK(lo == doctest::Approx(0.97590).epsilon(1e-5));
    CHECK(hi == doctest::Approx(0.99875).epsilon(1e-5));
}

TEST_CASE("spatial_freq_bounds degenerate point area")
{
    const TargetArea point{{150.0, 0.0, 0.0}, 0.0, 0.0};
    const auto [lo, hi] = spatial_freq_bounds(point, kIrs, kAxisX, 0.5);
    const double expected = 150.0 / std::sqrt(22600.0);
    CHECK(lo == doctest::Approx(expected).epsilon(1e-14));
    CHECK(hi == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("shrinking the area never widens the bounds")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> shrink(0.1, 0.9);
    const auto [lo_full, hi_full] = spatial_freq_bounds(kArea, kIrs, kAxisX, 0.5);
    for (int i = 0; i < 20; ++i) {
        const double s = shrink(gen);
        const TargetArea inner{kArea.center, kArea.length_x * s, kArea.width_y * s};
        const auto [lo_in, hi_in] = spatial_freq_bounds(inner, kIrs, kAxisX, 0.5);
        CHECK(lo_in >= lo_full - 1e-15);
        CHECK(hi_in <= hi_full + 1e-15);
    }
}

TEST_CASE("coarse-grid extrema already sit on corner and edge points")
{
    const auto coarse = spatial_freq_bounds(kArea, kIrs, kAxisX, 0.5);
    const auto fine = spatial_freq_bounds(kArea, kIrs, kAxisX, 0.25);
    CHECK(fine.first == doctest::Approx(coarse.first).epsilon(1e-12));
    CHECK(fine.second == doctest::Approx(coarse.second).epsilon(1e-12));
}

TEST_CASE("place_aps_uniform single AP")
{
    const auto aps = place_aps_uniform(1, 0.3, 0.02, 10.0, kIrs, kAxisX);
    REQUIRE(aps.size() == 1);
    CHECK(direction_cosine(kIrs, aps[0], kAxisX) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("place_aps_uniform reproduces the arithmetic progression")
{
    const int j_count = 4;
    const double dsi = 0.0229;
    const auto aps = place_aps_uniform(j_count, 0.0, dsi, 10.0, kIrs, kAxisX);
    REQUIRE(aps.size() == 4);
    for (int j = 0; j < j_count; ++j) {
        const double measured = direction_cosine(kIrs, aps[static_cast<std::size_t>(j)], kAxisX);
        CHECK(std::abs(measured - j * dsi / j_count) < 1e-9);
        CHECK(std::abs(measured - j * 0.005725) < 1e-9);
        // all APs on the stated circle, so all AP-IRS distances agree
        CHECK(distance(aps[static_cast<std::size_t>(j)], kIrs) ==
              doctest::Approx(std::sqrt(200.0)).epsilon(1e-12));
    }
}

TEST_CASE("place_aps_uniform rejects unreachable cosines")
{
    CHECK_THROWS_AS(place_aps_uniform(1, 2.0, 0.0, 10.0, kIrs, kAxisX), placement_error);
    // reachable magnitude on this circle is radius/sqrt(radius^2+z^2) ~ 0.707
    CHECK_THROWS_AS(place_aps_uniform(1, 0.9, 0.0, 10.0, kIrs, kAxisX), placement_error);
}

TEST_CASE("partition_area_uniform single band covers the whole span")
{
    const auto bands = partition_area_uniform(kArea, kIrs, kAxisX, 1, 0.5);
    REQUIRE(bands.size() == 1);
    const auto [lo, hi] = spatial_freq_bounds(kArea, kIrs, kAxisX, 0.5);
    CHECK(bands[0].phi_lo == lo);
    CHECK(bands[0].phi_hi == hi);
}

TEST_CASE("partition_area_uniform K=4 band width")
{
    const auto bands = partition_area_uniform(kArea, kIrs, kAxisX, 4, 0.5);
    REQUIRE(bands.size() == 4);
    for (const auto& b : bands)
        CHECK(b.phi_hi - b.phi_lo ==
              doctest::Approx((kPhiMax - kPhiMin) / 4).epsilon(1e-9));
    CHECK(bands[0].phi_hi - bands[0].phi_lo == doctest::Approx(0.0057125).epsilon(1e-3));
}

TEST_CASE("partition tiles the span exactly")
{
    for (int k_count : {1, 2, 3, 5, 8}) {
        const auto bands = partition_area_uniform(kArea, kIrs, kAxisX, k_count, 0.5);
        const auto [lo, hi] = spatial_freq_bounds(kArea, kIrs, kAxisX, 0.5);
        CHECK(bands.front().phi_lo == lo);
        CHECK(bands.back().phi_hi == hi);
        double width_sum = 0.0;
        for (std::size_t k = 0; k < bands.size(); ++k) {
            width_sum += bands[k].phi_hi - bands[k].phi_lo;
            if (k > 0)
                CHECK(bands[k].phi_lo == bands[k - 1].phi_hi); // contiguous, disjoint
        }
        CHECK(width_sum == doctest::Approx(hi - lo).epsilon(1e-12));
    }
}

TEST_CASE("band_index assigns boundary ties to the lower band")
{
    const std::vector<SubareaBand> bands{{0.0, 1.0}, {1.0, 2.0}, {2.0, 3.0}};
    CHECK(band_index(bands, 0.0) == 0);
    CHECK(band_index(bands, 0.5) == 0);
    CHECK(band_index(bands, 1.0) == 0); // shared boundary -> lower index
    CHECK(band_index(bands, 1.5) == 1);
    CHECK(band_index(bands, 2.0) == 1);
    CHECK(band_index(bands, 3.0) == 2);
}

TEST_CASE("every area grid point lands in exactly one band")
{
    const auto bands = partition_area_uniform(kArea, kIrs, kAxisX, 5, 0.5);
    for (const Position& p : area_grid(kArea, 0.5)) {
        const double phi = direction_cosine(kIrs, p, kAxisX);
        const int k = band_index(bands, phi);
        REQUIRE(k >= 0);
        REQUIRE(k < 5);
        CHECK(phi >= bands[static_cast<std::size_t>(k)].phi_lo - 1e-12);
        CHECK(phi <= bands[static_cast<std::size_t>(k)].phi_hi + 1e-12);
    }
}

TEST_CASE("area_grid includes all four corners")
{
    const auto pts = area_grid(kArea, 0.5);
    CHECK(pts.size() == 201 * 81);
    int corners = 0;
    for (const auto& p : pts)
        if ((p.x == 100.0 || p.x == 200.0) && (p.y == -20.0 || p.y == 20.0))
            ++corners;
    CHECK(corners == 4);
}
