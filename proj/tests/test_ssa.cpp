#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ssamt/diagnostics.hpp"
#include "ssamt/error.hpp"
#include "ssamt/simulation.hpp"
#include "ssamt/ssa.hpp"

using namespace ssamt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Anti-diagonal means by explicit enumeration of every (i, j) pair.
std::vector<double> diagonal_means(const Eigen::MatrixXd& m) {
    const auto rows = static_cast<std::size_t>(m.rows());
    const auto cols = static_cast<std::size_t>(m.cols());
    std::vector<double> sum(rows + cols - 1, 0.0);
    std::vector<int> count(rows + cols - 1, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            sum[i + j] += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            ++count[i + j];
        }
    }
    for (std::size_t k = 0; k < sum.size(); ++k) {
        sum[k] /= count[k];
    }
    return sum;
}

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    for (auto& x : v) {
        x = z(rng);
    }
    return v;
}

} // namespace

TEST_CASE("embed builds the Hankel trajectory matrix") {
    const auto x = embed(TimeSeries("s", {1, 2, 3, 4}), 2);
    REQUIRE(x.entries().rows() == 2);
    REQUIRE(x.entries().cols() == 3);
    Eigen::MatrixXd expected(2, 3);
    expected << 1, 2, 3, 2, 3, 4;
    CHECK(x.entries() == expected);
    REQUIRE(x.column_spans().size() == 1);
    CHECK(x.column_spans()[0].width() == 3);
}

TEST_CASE("embed of a constant series is constant") {
    const TimeSeries c("c", std::vector<double>(9, 2.5));
    for (std::size_t l = 2; l <= max_window_length(9); ++l) {
        CHECK((embed(c, l).entries().array() == 2.5).all());
    }
}

TEST_CASE("window length bounds") {
    // N = 3 admits only L = 2.
    CHECK(max_window_length(3) == 2);
    CHECK_NOTHROW(embed(TimeSeries("s", {1, 2, 3}), 2));
    CHECK(embed(TimeSeries("s", {1, 2, 3}), 2).entries().cols() == 2);
    CHECK_THROWS_AS(embed(TimeSeries("s", {1, 2, 3}), 3), Error);
    CHECK_THROWS_AS(embed(TimeSeries("s", {1, 2, 3}), 1), Error);
    CHECK_THROWS_AS(embed(TimeSeries("s", {1, 2}), 2), Error);
    CHECK(default_window_length(202) == 101);
    CHECK(default_window_length(3) == 2);
    CHECK_THROWS_AS(embed(TimeSeries("s", {1, 2, 3, 4}, {false, true, false, false}), 2), Error);
}

TEST_CASE("decompose a rank-one matrix") {
    Eigen::VectorXd u(3), v(4);
    u << 1, 2, 2;
    v << 1, -1, 1, -1;
    u.normalize();
    v.normalize();
    const Eigen::MatrixXd m = u * v.transpose();
    const auto dec = decompose(m);
    REQUIRE(dec.rank() == 1);
    CHECK_THAT(dec.singular_values()(0), WithinAbs(1.0, 1e-12));
    // First nonzero coordinate of u is positive, so u comes out unflipped.
    CHECK((dec.left_vectors().col(0) - u).norm() < 1e-12);
    CHECK((dec.right_vectors().col(0) - v).norm() < 1e-12);
}

TEST_CASE("constant series has one triple with sigma = c sqrt(LK)") {
    const double c = 1.75;
    const auto x = embed(TimeSeries("c", std::vector<double>(10, c)), 4);
    const auto dec = decompose(x);
    REQUIRE(dec.rank() == 1);
    CHECK_THAT(dec.singular_values()(0), WithinRel(c * std::sqrt(4.0 * 7.0), 1e-13));
}

TEST_CASE("2x2 Hankel matrix against closed-form eigenvalues") {
    // [1,0,1], L=2 -> [[1,0],[0,1]]: symmetric, eigenvalues both 1.
    const auto dec = decompose(embed(TimeSeries("s", {1, 0, 1}), 2));
    REQUIRE(dec.rank() == 2);
    CHECK_THAT(dec.singular_values()(0), WithinAbs(1.0, 1e-14));
    CHECK_THAT(dec.singular_values()(1), WithinAbs(1.0, 1e-14));

    // General 2x2 Hankel [[a,b],[b,c]]: singular values are |eigenvalues|.
    const double a = 3.0, b = -1.25, c = 0.5;
    const double mean = 0.5 * (a + c);
    const double radius = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    const double e1 = std::abs(mean + radius), e2 = std::abs(mean - radius);
    const auto d2 = decompose(embed(TimeSeries("s", {a, b, c}), 2));
    CHECK_THAT(d2.singular_values()(0), WithinRel(std::max(e1, e2), 1e-13));
    CHECK_THAT(d2.singular_values()(1), WithinRel(std::min(e1, e2), 1e-13));
}

TEST_CASE("sign convention: first nonzero coordinate of every u is positive") {
    std::mt19937_64 rng(11);
    const auto dec = decompose(embed(std::span<const double>(random_series(rng, 40)), 12));
    for (Eigen::Index k = 0; k < dec.left_vectors().cols(); ++k) {
        const auto u = dec.left_vectors().col(k);
        Eigen::Index first = 0;
        while (std::abs(u(first)) <= 1e-12) {
            ++first;
        }
        CHECK(u(first) > 0.0);
    }
}

TEST_CASE("zero matrix has rank zero") {
    const auto dec = decompose(embed(TimeSeries("z", std::vector<double>(8, 0.0)), 3));
    CHECK(dec.rank() == 0);
    CHECK_THROWS_AS(ssa_denoise(TimeSeries("z", std::vector<double>(8, 0.0)), 3), DegenerateError);
}

TEST_CASE("reconstruct_group sums elementary matrices") {
    std::mt19937_64 rng(3);
    const auto x = embed(std::span<const double>(random_series(rng, 30)), 10);
    const auto dec = decompose(x);
    REQUIRE(dec.rank() == 10);

    const std::size_t all[] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK((reconstruct_group(dec, all) - x.entries()).norm() <= 1e-10 * x.entries().norm());

    const Eigen::MatrixXd empty = reconstruct_group(dec, std::span<const std::size_t>{});
    CHECK(empty.rows() == 10);
    CHECK(empty.cols() == 21);
    CHECK(empty.isZero(0.0));

    // Triples 2, 3 and 5 (1-based) summed one outer product at a time.
    Eigen::MatrixXd brute = Eigen::MatrixXd::Zero(10, 21);
    for (Eigen::Index k : {1, 2, 4}) {
        for (Eigen::Index i = 0; i < 10; ++i) {
            for (Eigen::Index j = 0; j < 21; ++j) {
                brute(i, j) += dec.singular_values()(k) * dec.left_vectors()(i, k) * dec.right_vectors()(j, k);
            }
        }
    }
    const std::size_t picked[] = {1, 2, 4};
    CHECK((reconstruct_group(dec, picked) - brute).norm() <= 1e-12 * brute.norm());

    const std::size_t bad[] = {10};
    CHECK_THROWS_AS(reconstruct_group(dec, bad), Error);
    const std::size_t repeated[] = {1, 1};
    CHECK_THROWS_AS(reconstruct_group(dec, repeated), Error);
}

TEST_CASE("Grouping validation and additivity") {
    CHECK_THROWS_AS(Grouping({{0, 1}, {1}}, 3), Error);
    CHECK_THROWS_AS(Grouping({{}}, 3), Error);
    CHECK_THROWS_AS(Grouping({{3}}, 3), Error);

    std::mt19937_64 rng(5);
    const auto x = embed(std::span<const double>(random_series(rng, 25)), 8);
    const auto dec = decompose(x);
    const auto parts = reconstruct_groups(dec, Grouping({{0, 2}, {1}, {3, 4, 5, 6, 7}}, dec.rank()));
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(8, 18);
    for (const auto& p : parts) {
        total += p;
    }
    CHECK((total - x.entries()).norm() <= 1e-10 * x.entries().norm());
}

TEST_CASE("hankelize") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 3, 4;
    CHECK(hankelize(m) == std::vector<double>{1, 2.5, 4});

    const std::vector<double> s{3, -1, 4, 1, -5, 9, 2};
    CHECK(hankelize(embed(std::span<const double>(s), 3).entries()) == s);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd r(3, 4);
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            r(i) = z(rng);
        }
        const auto got = hankelize(r);
        const auto want = diagonal_means(r);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK_THAT(got[k], WithinAbs(want[k], 1e-15));
        }
        CHECK(hankelize(Eigen::MatrixXd(r.transpose())).size() == 6);
    }
}

TEST_CASE("full-rank denoising returns the series") {
    std::mt19937_64 rng(21);
    const auto v = random_series(rng, 64);
    const TimeSeries s("s", v);
    const auto d = ssa_denoise_detailed(s, 20, std::size_t{20});
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK_THAT(d.series.values()[i], WithinRel(v[i], 1e-8));
    }
    CHECK_THROWS_AS(ssa_denoise(s, 20, std::size_t{21}), Error);
    CHECK_THROWS_AS(ssa_denoise(s, 20, std::size_t{0}), Error);
}

TEST_CASE("noise-free sinusoid lives in two components") {
    std::vector<double> f(100);
    for (std::size_t t = 0; t < f.size(); ++t) {
        f[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t + 1) / 12.0);
    }
    const auto fitted = ssa_denoise(TimeSeries("sin", f), 50, std::size_t{2});
    CHECK(rmse(f, fitted.values()) <= 1e-6);
}

TEST_CASE("cumulative share rank") {
    std::mt19937_64 rng(4);
    const auto dec = decompose(embed(std::span<const double>(random_series(rng, 50)), 20));
    const auto lambda = dec.eigenvalues();
    const std::size_t r = cumulative_share_rank(dec);
    const double total = lambda.sum();
    CHECK(lambda.head(static_cast<Eigen::Index>(r)).sum() >= 0.9 * total);
    CHECK(lambda.head(static_cast<Eigen::Index>(r - 1)).sum() < 0.9 * total);
    CHECK(cumulative_share_rank(dec, 1.0) == dec.rank());
}

TEST_CASE("Sine+Exponential plus unit noise: RMSE below the noise level") {
    const TimeSeries truth = generate_signal(SignalModel(SignalKind::SinePlusExp, 100));
    int below = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const TimeSeries y = add_noise(truth, 1.0, replication_seed(2024, rep));
        const auto fitted = ssa_denoise(y, 50, signal_rank(SignalKind::SinePlusExp));
        below += rmse(truth.values(), fitted.values()) < 1.0 ? 1 : 0;
    }
    CHECK(below >= 95);
}

TEST_CASE("Sine+Exponential plus unit noise with the default rank rule") {
    const TimeSeries truth = generate_signal(SignalModel(SignalKind::SinePlusExp, 100));
    int below = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const TimeSeries y = add_noise(truth, 1.0, replication_seed(2024, rep));
        below += rmse(truth.values(), ssa_denoise(y, 50).values()) < 1.0 ? 1 : 0;
    }
    CHECK(below >= 95);
}

TEST_CASE("orthonormal factors and full-rank linearity") {
    std::mt19937_64 rng(17);
    for (std::size_t n : {9u, 31u, 80u}) {
        const auto v = random_series(rng, n);
        const std::size_t l = max_window_length(n);
        const auto dec = decompose(embed(std::span<const double>(v), l));
        const auto d = static_cast<Eigen::Index>(dec.rank());
        CHECK((dec.left_vectors().transpose() * dec.left_vectors() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((dec.right_vectors().transpose() * dec.right_vectors() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-8);
        for (Eigen::Index k = 1; k < d; ++k) {
            CHECK(dec.singular_values()(k) <= dec.singular_values()(k - 1));
        }

        std::vector<double> scaled(v);
        for (auto& x : scaled) {
            x *= -3.5;
        }
        const auto a = ssa_denoise(TimeSeries("a", v), l, dec.rank());
        const auto b = ssa_denoise(TimeSeries("b", scaled), l, dec.rank());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK_THAT(b.values()[i], WithinAbs(-3.5 * a.values()[i], 1e-9));
        }
    }
}
