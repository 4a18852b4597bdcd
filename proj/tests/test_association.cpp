#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "irsplan/association.hpp"
#include "irsplan/errors.hpp"
#include "irsplan/evaluation.hpp"
#include "irsplan/geometry.hpp"

using namespace irsplan;

namespace {

// uniform-placement instance: bands of width w, AP cosines spaced w
SubareaSpans uniform_spans(int k_count, double width, double phi_base, double omega_base)
{
    SubareaSpans spans;
    for (int k = 0; k < k_count; ++k)
        spans.subareas.push_back({phi_base + k * width, phi_base + (k + 1) * width});
    for (int j = 0; j < k_count; ++j)
        spans.ap_omegas.push_back(omega_base + j * width);
    return spans;
}

SubareaSpans random_instance(std::mt19937_64& gen, int k_count, int j_count)
{
    std::uniform_real_distribution<double> center(-0.5, 0.5);
    std::uniform_real_distribution<double> half(0.0, 0.1);
    SubareaSpans spans;
    for (int k = 0; k < k_count; ++k) {
        const double c = center(gen);
        const double h = half(gen);
        spans.subareas.push_back({c - h, c + h});
    }
    for (int j = 0; j < j_count; ++j)
        spans.ap_omegas.push_back(center(gen));
    return spans;
}

} // namespace

TEST_CASE("angular_deviation single subarea, single AP")
{
    SubareaSpans spans;
    spans.subareas.push_back({0.3, 0.42});
    spans.ap_omegas.push_back(0.1);
    Association assoc;
    assoc.num_aps = 1;
    assoc.ap_of = {0};
    const auto dev = angular_deviation(assoc, spans);
    CHECK(dev.delta_min == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(dev.delta_max == doctest::Approx(0.32).epsilon(1e-15));
    CHECK(dev.spread() == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("identity association on the uniform construction gives width/J")
{
    for (int j : {1, 2, 3, 5, 8}) {
        const auto spans = uniform_spans(j, 0.01, 0.9, 0.1);
        const auto dev = angular_deviation(uniform_association(j, j), spans);
        CHECK(dev.spread() == doctest::Approx(0.01).epsilon(1e-13));
    }
}

TEST_CASE("relabeling APs together with the assignment leaves the deviation unchanged")
{
    std::mt19937_64 gen(5);
    const auto spans = random_instance(gen, 4, 3);
    Association assoc;
    assoc.num_aps = 3;
    assoc.ap_of = {0, 2, 1, 0};
    const double base = angular_deviation(assoc, spans).spread();

    // permute AP labels
    const std::vector<int> perm{2, 0, 1};
    SubareaSpans permuted = spans;
    for (int j = 0; j < 3; ++j)
        permuted.ap_omegas[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] =
            spans.ap_omegas[static_cast<std::size_t>(j)];
    Association relabeled;
    relabeled.num_aps = 3;
    for (int v : assoc.ap_of)
        relabeled.ap_of.push_back(perm[static_cast<std::size_t>(v)]);
    CHECK(angular_deviation(relabeled, permuted).spread() ==
          doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("angular_deviation requires a complete assignment")
{
    CHECK_THROWS_AS(Association::from_matrix({{0, 0}, {1, 0}}), contract_error);
    CHECK_THROWS_AS(Association::from_matrix({{1, 1}}), contract_error);
    CHECK_NOTHROW(Association::from_matrix({{0, 1}, {1, 0}}));

    SubareaSpans spans;
    spans.subareas.push_back({0.0, 0.1});
    spans.ap_omegas.push_back(0.0);
    Association bad;
    bad.num_aps = 1;
    bad.ap_of = {3}; // out of range
    CHECK_THROWS_AS(angular_deviation(bad, spans), contract_error);
}

TEST_CASE("successive refinement with one AP has no freedom")
{
    SubareaSpans spans;
    spans.subareas.push_back({0.1, 0.2});
    spans.subareas.push_back({0.3, 0.5});
    spans.ap_omegas.push_back(0.25);
    const auto result = successive_refinement(spans);
    CHECK(result.assoc.ap_of == std::vector<int>{0, 0});
    CHECK(result.spread_trace.size() == 1);
    CHECK(result.spread_trace.front() == doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("successive refinement solves the uniform construction")
{
    for (int j : {1, 2, 3, 4, 5, 6}) {
        const auto spans = uniform_spans(j, 0.01, 0.9, 0.1);
        const auto result = successive_refinement(spans);
        CHECK(angular_deviation(result.assoc, spans).spread() ==
              doctest::Approx(0.01).epsilon(1e-12));
    }
}

TEST_CASE("refinement trace is strictly decreasing")
{
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 30; ++rep) {
        const int k_count = 2 + static_cast<int>(gen() % 5);
        const int j_count = 2 + static_cast<int>(gen() % 3);
        const auto spans = random_instance(gen, k_count, j_count);
        const auto result = successive_refinement(spans);
        for (std::size_t i = 1; i < result.spread_trace.size(); ++i)
            CHECK(result.spread_trace[i] < result.spread_trace[i - 1]);
        CHECK(angular_deviation(result.assoc, spans).spread() ==
              doctest::Approx(result.spread_trace.back()).epsilon(1e-14));
    }
}

TEST_CASE("uniform_association is the identity and requires K == J")
{
    const Association assoc = uniform_association(3, 3);
    CHECK(assoc.ap_of == std::vector<int>{0, 1, 2});
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            CHECK(assoc.lambda(k, j) == (k == j));
    CHECK_THROWS_AS(uniform_association(3, 4), contract_error);
}

TEST_CASE("reversed AP ordering maps to the anti-diagonal after sorting")
{
    // bands ascending, AP cosines given in descending order: sorting the APs
    // and applying the identity yields the anti-diagonal in original labels
    const int j_count = 4;
    const auto spans = uniform_spans(j_count, 0.01, 0.9, 0.1);
    SubareaSpans reversed = spans;
    std::reverse(reversed.ap_omegas.begin(), reversed.ap_omegas.end());

    std::vector<int> order(static_cast<std::size_t>(j_count));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return reversed.ap_omegas[static_cast<std::size_t>(a)] <
               reversed.ap_omegas[static_cast<std::size_t>(b)];
    });
    Association assoc;
    assoc.num_aps = j_count;
    for (int k = 0; k < j_count; ++k)
        assoc.ap_of.push_back(order[static_cast<std::size_t>(k)]);
    CHECK(assoc.ap_of == std::vector<int>{3, 2, 1, 0});
    CHECK(angular_deviation(assoc, reversed).spread() == doctest::Approx(0.01).epsilon(1e-13));
}

TEST_CASE("brute force association: direct scan for K=1")
{
    SubareaSpans spans;
    spans.subareas.push_back({0.40, 0.55});
    spans.ap_omegas = {0.0, 0.5, 0.2};
    const auto best = brute_force_association(spans);
    // a single subarea has the same spread under every AP; the lexicographic
    // tie-break keeps the first
    CHECK(best.ap_of == std::vector<int>{0});
}

TEST_CASE("brute force association finds the uniform optimum")
{
    for (int j : {2, 3, 4}) {
        const auto spans = uniform_spans(j, 0.01, 0.9, 0.1);
        const auto best = brute_force_association(spans);
        CHECK(angular_deviation(best, spans).spread() == doctest::Approx(0.01).epsilon(1e-12));
    }
}

TEST_CASE("no association beats width/J on the uniform construction")
{
    for (int j : {2, 3, 4}) {
        const auto spans = uniform_spans(j, 0.01, 0.9, 0.1);
        const auto best = brute_force_association(spans);
        CHECK(angular_deviation(best, spans).spread() >= 0.01 - 1e-12);
    }
}

TEST_CASE("oracle dominance over the heuristic")
{
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 40; ++rep) {
        const int k_count = 1 + static_cast<int>(gen() % 6);
        const int j_count = 1 + static_cast<int>(gen() % 4);
        const auto spans = random_instance(gen, k_count, j_count);
        const double heuristic = successive_refinement(spans).spread_trace.back();
        const double oracle =
            angular_deviation(brute_force_association(spans), spans).spread();
        CHECK(oracle <= heuristic + 1e-13);
        CHECK(oracle >= 0.0);
    }
}

TEST_CASE("brute force refuses oversized search spaces")
{
    SubareaSpans spans;
    for (int k = 0; k < 20; ++k)
        spans.subareas.push_back({0.0, 0.1});
    for (int j = 0; j < 8; ++j)
        spans.ap_omegas.push_back(0.1 * j);
    CHECK_THROWS_AS(brute_force_association(spans), search_space_error);
}

TEST_CASE("zero deviation only for identical offset intervals")
{
    SubareaSpans spans;
    spans.subareas.push_back({0.2, 0.2});
    spans.subareas.push_back({0.5, 0.5});
    spans.ap_omegas = {0.0, 0.3};
    Association assoc;
    assoc.num_aps = 2;
    assoc.ap_of = {0, 1};
    CHECK(angular_deviation(assoc, spans).spread() == doctest::Approx(0.0).epsilon(1e-15));
    assoc.ap_of = {0, 0};
    CHECK(angular_deviation(assoc, spans).spread() > 0.0);
}
