#include "ssamt/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "ssamt/error.hpp"

namespace ssamt {
namespace {

constexpr double kRankTolerance = 1e-12;
constexpr double kSignTolerance = 1e-12;

std::string dims(Eigen::Index rows, Eigen::Index cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

void check_window(std::size_t n, std::size_t window, const std::string& name) {
    if (window < 2 || window > max_window_length(n)) {
        throw Error("series '" + name + "' (length " + std::to_string(n) + "): window length " +
                    std::to_string(window) + " outside [2, " + std::to_string(max_window_length(n)) + "]");
    }
}

} // namespace

TrajectoryMatrix::TrajectoryMatrix(Eigen::MatrixXd entries, std::vector<ColumnSpan> spans)
    : entries_(std::move(entries)), spans_(std::move(spans)) {
    std::size_t next = 0;
    for (const auto& s : spans_) {
        if (s.first != next || s.last < s.first) {
            throw Error("trajectory matrix column spans must tile the columns in order");
        }
        next = s.last + 1;
    }
    if (next != static_cast<std::size_t>(entries_.cols())) {
        throw Error("trajectory matrix column spans cover " + std::to_string(next) + " of " +
                    std::to_string(entries_.cols()) + " columns");
    }
}

SsaDecomposition::SsaDecomposition(Eigen::VectorXd singular_values, Eigen::MatrixXd left, Eigen::MatrixXd right)
    : sigma_(std::move(singular_values)), left_(std::move(left)), right_(std::move(right)) {
    if (left_.cols() != sigma_.size() || right_.cols() != sigma_.size()) {
        throw Error("singular triple dimensions disagree");
    }
}

Grouping::Grouping(std::vector<std::vector<std::size_t>> groups, std::size_t rank) : groups_(std::move(groups)) {
    std::vector<bool> used(rank, false);
    for (const auto& g : groups_) {
        if (g.empty()) {
            throw Error("grouping contains an empty group");
        }
        for (std::size_t i : g) {
            if (i >= rank) {
                throw Error("component index " + std::to_string(i) + " out of range for rank " +
                            std::to_string(rank));
            }
            if (used[i]) {
                throw Error("component index " + std::to_string(i) + " appears in more than one group");
            }
            used[i] = true;
        }
    }
}

std::size_t max_window_length(std::size_t n) noexcept { return (n + 1) / 2; }

std::size_t default_window_length(std::size_t n) noexcept { return std::max<std::size_t>(2, n / 2); }

TrajectoryMatrix embed(std::span<const double> values, std::size_t window, const std::string& name) {
    const std::size_t n = values.size();
    check_window(n, window, name);
    const std::size_t k = n - window + 1;
    Eigen::MatrixXd x(window, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < window; ++i) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i + j];
        }
    }
    return TrajectoryMatrix(std::move(x), {ColumnSpan{name, 0, k - 1}});
}

TrajectoryMatrix embed(const TimeSeries& series, std::size_t window) {
    return embed(series.values(), window, series.name());
}

SsaDecomposition decompose(const Eigen::MatrixXd& x) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw Error("SVD did not converge for " + dims(x.rows(), x.cols()) + " trajectory matrix");
    }
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index d = 0;
    if (s.size() > 0 && s(0) > 0.0) {
        const double cutoff = s(0) * kRankTolerance * static_cast<double>(std::max(x.rows(), x.cols()));
        while (d < s.size() && s(d) > cutoff) {
            ++d;
        }
    }
    Eigen::MatrixXd u = svd.matrixU().leftCols(d);
    Eigen::MatrixXd v = svd.matrixV().leftCols(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            if (std::abs(u(r, i)) > kSignTolerance) {
                if (u(r, i) < 0.0) {
                    u.col(i) *= -1.0;
                    v.col(i) *= -1.0;
                }
                break;
            }
        }
    }
    return SsaDecomposition(s.head(d), std::move(u), std::move(v));
}

SsaDecomposition decompose(const TrajectoryMatrix& x) { return decompose(x.entries()); }

Eigen::MatrixXd reconstruct_group(const SsaDecomposition& dec, std::span<const std::size_t> indices) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dec.window_length()),
                                                static_cast<Eigen::Index>(dec.columns()));
    std::vector<bool> seen(dec.rank(), false);
    for (std::size_t i : indices) {
        if (i >= dec.rank()) {
            throw Error("component index " + std::to_string(i) + " out of range (rank " +
                        std::to_string(dec.rank()) + ")");
        }
        if (seen[i]) {
            throw Error("component index " + std::to_string(i) + " repeated in group");
        }
        seen[i] = true;
        const auto col = static_cast<Eigen::Index>(i);
        out.noalias() += dec.singular_values()(col) * dec.left_vectors().col(col) * dec.right_vectors().col(col).transpose();
    }
    return out;
}

std::vector<Eigen::MatrixXd> reconstruct_groups(const SsaDecomposition& dec, const Grouping& grouping) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(grouping.groups().size());
    for (const auto& g : grouping.groups()) {
        out.push_back(reconstruct_group(dec, g));
    }
    return out;
}

std::vector<double> hankelize(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    const auto rows = static_cast<std::size_t>(m.rows());
    const auto cols = static_cast<std::size_t>(m.cols());
    if (rows == 0 || cols == 0) {
        return {};
    }
    const std::size_t n = rows + cols - 1;
    std::vector<double> sum(n, 0.0);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            sum[i + j] += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            ++count[i + j];
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        sum[k] /= static_cast<double>(count[k]);
    }
    return sum;
}

std::size_t cumulative_share_rank(const SsaDecomposition& dec, double share) {
    if (!(share > 0.0 && share <= 1.0)) {
        throw Error("eigenvalue share must lie in (0, 1]");
    }
    const Eigen::VectorXd lambda = dec.eigenvalues();
    const double total = lambda.sum();
    if (lambda.size() == 0 || total <= 0.0) {
        return 0;
    }
    double acc = 0.0;
    for (Eigen::Index r = 0; r < lambda.size(); ++r) {
        acc += lambda(r);
        if (acc / total >= share) {
            return static_cast<std::size_t>(r + 1);
        }
    }
    return dec.rank();
}

std::vector<double> reconstruct_series(const SsaDecomposition& dec, std::size_t rank) {
    if (rank > dec.rank()) {
        throw Error("rank " + std::to_string(rank) + " exceeds trajectory matrix rank " + std::to_string(dec.rank()));
    }
    const auto r = static_cast<Eigen::Index>(rank);
    const Eigen::MatrixXd scaled = dec.left_vectors().leftCols(r) * dec.singular_values().head(r).asDiagonal();
    return hankelize(scaled * dec.right_vectors().leftCols(r).transpose());
}

SsaDenoised ssa_denoise_detailed(const TimeSeries& series, std::size_t window, std::optional<std::size_t> rank) {
    const auto dec = decompose(embed(series, window));
    if (dec.rank() == 0) {
        throw DegenerateError("series '" + series.name() + "' is identically zero; nothing to decompose");
    }
    const std::size_t r = rank.value_or(cumulative_share_rank(dec));
    if (r < 1 || r > dec.rank()) {
        throw Error("series '" + series.name() + "': rank " + std::to_string(r) + " outside [1, " +
                    std::to_string(dec.rank()) + "]");
    }
    return SsaDenoised{TimeSeries(series.name(), reconstruct_series(dec, r)), window, r, dec.rank()};
}

TimeSeries ssa_denoise(const TimeSeries& series, std::size_t window, std::optional<std::size_t> rank) {
    return ssa_denoise_detailed(series, window, rank).series;
}

} // namespace ssamt
