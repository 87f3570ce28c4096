#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "quadrature_oracles.hpp"
#include "ssamt/error.hpp"
#include "ssamt/hypothesis_tests.hpp"

using namespace ssamt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using V = std::vector<double>;
using G = GroupedSample::Group;

namespace {

// Kolmogorov-Smirnov distance of a sample from Uniform(0, 1).
double ks_uniform(V p) {
    std::sort(p.begin(), p.end());
    const auto n = static_cast<double>(p.size());
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - p[i], p[i] - static_cast<double>(i) / n});
    }
    return d;
}

V normals(std::mt19937_64& rng, std::size_t n, double mean = 0.0) {
    std::normal_distribution<double> z(mean, 1.0);
    V v(n);
    for (auto& x : v) {
        x = z(rng);
    }
    return v;
}

} // namespace

TEST_CASE("pooled t: identical and swapped groups") {
    const V a{2.0, 3.5, 1.0, 4.0};
    const auto same = two_sample_t(a, a, "x");
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    CHECK(same.variable_name == "x");
    CHECK(same.kind == TestKind::TwoSampleT);

    const V b{5.0, 6.5, 4.0, 7.5, 6.0};
    const auto ab = two_sample_t(a, b);
    const auto ba = two_sample_t(b, a);
    CHECK(ab.statistic == -ba.statistic);
    CHECK(ab.p_value == ba.p_value);
    CHECK(ab.dof == V{7.0});
}

TEST_CASE("pooled t: hand computed fixture") {
    // Means 2 and 3, both sample variances 1, pooled sd 1:
    // T = -1 / sqrt(1/3 + 1/3) = -sqrt(3/2) on 4 dof.
    const auto r = two_sample_t(V{1, 2, 3}, V{2, 3, 4});
    const double t = -std::sqrt(1.5);
    CHECK_THAT(r.statistic, WithinRel(t, 1e-14));
    CHECK(r.dof == V{4.0});
    CHECK_THAT(r.p_value, WithinAbs(2.0 * oracle::t_upper_tail(-t, 4.0), 1e-12));
}

TEST_CASE("pooled t: degenerate input") {
    CHECK_THROWS_AS(two_sample_t(V{1, 1, 1}, V{2, 2}), DegenerateError);
    CHECK_THROWS_AS(two_sample_t(V{1}, V{2, 3}), Error);
}

TEST_CASE("one-way F fixtures") {
    const auto flat = one_way_f(GroupedSample("v", {G{"a", {1, 3}}, G{"b", {0, 4}}, G{"c", {2, 2.0001, 1.9999}}}));
    CHECK_THAT(flat.statistic, WithinAbs(0.0, 1e-12));

    // Group means 1.5, 3.5, 5.5, 7.5 around 4.5: between SS 40 on 3 dof,
    // within SS 2 on 4 dof, F = (40/3) / (2/4).
    const auto r = one_way_f(GroupedSample("v", {G{"a", {1, 2}}, G{"b", {3, 4}}, G{"c", {5, 6}}, G{"d", {7, 8}}}));
    CHECK_THAT(r.statistic, WithinRel(80.0 / 3.0, 1e-13));
    CHECK(r.dof == V{3.0, 4.0});
    CHECK_THAT(r.p_value, WithinRel(oracle::f_upper_tail(80.0 / 3.0, 3.0, 4.0), 1e-8));
    CHECK(r.kind == TestKind::OneWayF);

    CHECK_THROWS_AS(one_way_f(GroupedSample("v", {G{"a", {1, 1}}, G{"b", {2, 2}}})), DegenerateError);
}

TEST_CASE("F with two groups is the squared t") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const V a = normals(rng, 5 + i % 7);
        const V b = normals(rng, 4 + i % 5, 0.5);
        const auto t = two_sample_t(a, b);
        const auto f = one_way_f(GroupedSample("v", {G{"a", a}, G{"b", b}}));
        CHECK_THAT(f.statistic, WithinRel(t.statistic * t.statistic, 1e-12));
        CHECK_THAT(f.p_value, WithinAbs(t.p_value, 1e-10));
    }
}

TEST_CASE("null p-values are uniform") {
    std::mt19937_64 rng(2718);
    V pt, pf;
    for (int rep = 0; rep < 10000; ++rep) {
        pt.push_back(two_sample_t(normals(rng, 10), normals(rng, 15)).p_value);
        pf.push_back(
            one_way_f(GroupedSample("v", {G{"a", normals(rng, 6)}, G{"b", normals(rng, 8)}, G{"c", normals(rng, 5)}}))
                .p_value);
    }
    // 1% critical value of the KS statistic.
    const double crit = 1.628 / std::sqrt(10000.0);
    CHECK(ks_uniform(pt) < crit);
    CHECK(ks_uniform(pf) < crit);
}

TEST_CASE("strong effects are detected") {
    std::mt19937_64 rng(5);
    CHECK(two_sample_t(normals(rng, 30), normals(rng, 30, 5.0)).p_value < 1e-12);
}
