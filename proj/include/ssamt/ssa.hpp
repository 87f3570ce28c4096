#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssamt/timeseries.hpp"

namespace ssamt {

/// Columns [first, last] of a trajectory matrix that came from one series.
struct ColumnSpan {
    std::string series_name;
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t width() const noexcept { return last - first + 1; }
};

/// L x K trajectory matrix together with where its columns came from. Built
/// by `embed` (one Hankel block) or `embed_multi` (stacked Hankel blocks).
class TrajectoryMatrix {
public:
    TrajectoryMatrix(Eigen::MatrixXd entries, std::vector<ColumnSpan> spans);

    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    std::size_t window_length() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t columns() const noexcept { return static_cast<std::size_t>(entries_.cols()); }
    const std::vector<ColumnSpan>& column_spans() const noexcept { return spans_; }

private:
    Eigen::MatrixXd entries_;
    std::vector<ColumnSpan> spans_;
};

/// Singular triples sigma_i, U_i, V_i of a trajectory matrix, keeping only the
/// numerically nonzero ones. Indices are 0-based: triple 0 is the largest.
class SsaDecomposition {
public:
    SsaDecomposition(Eigen::VectorXd singular_values, Eigen::MatrixXd left, Eigen::MatrixXd right);

    std::size_t rank() const noexcept { return static_cast<std::size_t>(sigma_.size()); }
    std::size_t window_length() const noexcept { return static_cast<std::size_t>(left_.rows()); }
    std::size_t columns() const noexcept { return static_cast<std::size_t>(right_.rows()); }

    const Eigen::VectorXd& singular_values() const noexcept { return sigma_; }
    /// L x d, column i is U_i.
    const Eigen::MatrixXd& left_vectors() const noexcept { return left_; }
    /// K x d, column i is V_i.
    const Eigen::MatrixXd& right_vectors() const noexcept { return right_; }

    /// Eigenvalues lambda_i = sigma_i^2 of X X^T.
    Eigen::VectorXd eigenvalues() const { return sigma_.array().square().matrix(); }

private:
    Eigen::VectorXd sigma_;
    Eigen::MatrixXd left_;
    Eigen::MatrixXd right_;
};

/// Disjoint, non-empty sets of component indices.
class Grouping {
public:
    Grouping(std::vector<std::vector<std::size_t>> groups, std::size_t rank);

    const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }

private:
    std::vector<std::vector<std::size_t>> groups_;
};

/// Largest admissible window for a series of length n: the window may not
/// exceed the number of lagged vectors, i.e. L <= ceil(n/2).
std::size_t max_window_length(std::size_t n) noexcept;

/// Default window, floor(n/2) but never below 2.
std::size_t default_window_length(std::size_t n) noexcept;

TrajectoryMatrix embed(const TimeSeries& series, std::size_t window);
TrajectoryMatrix embed(std::span<const double> values, std::size_t window, const std::string& name = {});

/// SVD of the trajectory matrix, sorted by decreasing singular value, with
/// sigma_i <= sigma_1 * 1e-12 * max(L, K) treated as zero. Each U_i has its
/// first nonzero coordinate positive.
SsaDecomposition decompose(const TrajectoryMatrix& x);
SsaDecomposition decompose(const Eigen::MatrixXd& x);

/// Sum of sigma_i U_i V_i^T over `indices`; an empty set gives the zero
/// matrix. Throws on out-of-range or repeated indices.
Eigen::MatrixXd reconstruct_group(const SsaDecomposition& dec, std::span<const std::size_t> indices);

/// One reconstructed matrix per group of `grouping`.
std::vector<Eigen::MatrixXd> reconstruct_groups(const SsaDecomposition& dec, const Grouping& grouping);

/// Diagonal averaging: element n of the result is the mean of m(i, j) over
/// i + j = n (0-based).
std::vector<double> hankelize(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Cumulative-eigenvalue rank rule: the smallest r with
/// sum_{i<r} lambda_i / sum_i lambda_i >= share.
inline constexpr double kDefaultEigenvalueShare = 0.90;
std::size_t cumulative_share_rank(const SsaDecomposition& dec, double share = kDefaultEigenvalueShare);

struct SsaDenoised {
    TimeSeries series;
    std::size_t window = 0;
    std::size_t rank = 0;
    /// d of the trajectory matrix.
    std::size_t full_rank = 0;
};

/// Embeds, decomposes, keeps the leading `rank` components and
/// diagonal-averages back to a series. Without `rank` the cumulative
/// eigenvalue rule picks it; an explicit rank must lie in [1, d].
SsaDenoised ssa_denoise_detailed(const TimeSeries& series, std::size_t window,
                                 std::optional<std::size_t> rank = std::nullopt);

TimeSeries ssa_denoise(const TimeSeries& series, std::size_t window, std::optional<std::size_t> rank = std::nullopt);

/// Rank-r reconstruction hankelized, for callers that already decomposed.
std::vector<double> reconstruct_series(const SsaDecomposition& dec, std::size_t rank);

} // namespace ssamt
