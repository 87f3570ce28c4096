#include "ssamt/mssa.hpp"

#include <algorithm>

#include "ssamt/error.hpp"

namespace ssamt {

MssaPlan::MssaPlan(std::size_t window, std::vector<std::size_t> series_lengths)
    : window_(window), lengths_(std::move(series_lengths)) {
    if (lengths_.empty()) {
        throw Error("MSSA needs at least one series");
    }
    const std::size_t shortest = *std::min_element(lengths_.begin(), lengths_.end());
    if (window_ < 2 || window_ >= shortest) {
        throw Error("MSSA window length " + std::to_string(window_) + " outside [2, " +
                    std::to_string(shortest) + ") for shortest series length " + std::to_string(shortest));
    }
    offsets_.reserve(lengths_.size());
    for (std::size_t n : lengths_) {
        offsets_.push_back(total_);
        total_ += n - window_ + 1;
    }
}

TrajectoryMatrix embed_multi(const MultiSeries& ms, std::size_t window) {
    std::vector<std::size_t> lengths;
    for (const auto& s : ms) {
        s.values(); // throws on missing entries
        lengths.push_back(s.size());
    }
    const MssaPlan plan(window, std::move(lengths));

    Eigen::MatrixXd x(static_cast<Eigen::Index>(window), static_cast<Eigen::Index>(plan.total_columns()));
    std::vector<ColumnSpan> spans;
    for (std::size_t p = 0; p < ms.size(); ++p) {
        const auto values = ms[p].values();
        const std::size_t offset = plan.column_offsets()[p];
        const std::size_t k = plan.block_columns(p);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < window; ++i) {
                x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(offset + j)) = values[i + j];
            }
        }
        spans.push_back(ColumnSpan{ms[p].name(), offset, offset + k - 1});
    }
    return TrajectoryMatrix(std::move(x), std::move(spans));
}

std::vector<TimeSeries> reconstruct_blocks(const TrajectoryMatrix& x, const SsaDecomposition& dec, std::size_t rank) {
    if (rank > dec.rank()) {
        throw Error("rank " + std::to_string(rank) + " exceeds trajectory matrix rank " + std::to_string(dec.rank()));
    }
    const auto r = static_cast<Eigen::Index>(rank);
    const Eigen::MatrixXd recon = (dec.left_vectors().leftCols(r) * dec.singular_values().head(r).asDiagonal()) *
                                  dec.right_vectors().leftCols(r).transpose();
    std::vector<TimeSeries> out;
    out.reserve(x.column_spans().size());
    for (const auto& span : x.column_spans()) {
        auto block = recon.middleCols(static_cast<Eigen::Index>(span.first), static_cast<Eigen::Index>(span.width()));
        out.emplace_back(span.series_name, hankelize(block));
    }
    return out;
}

MssaDenoised mssa_denoise_detailed(const MultiSeries& ms, std::size_t window, std::optional<std::size_t> rank) {
    const TrajectoryMatrix x = embed_multi(ms, window);
    const SsaDecomposition dec = decompose(x);
    if (dec.rank() == 0) {
        throw DegenerateError("all series are identically zero; nothing to decompose");
    }
    const std::size_t r = rank.value_or(cumulative_share_rank(dec));
    if (r < 1 || r > dec.rank()) {
        throw Error("MSSA rank " + std::to_string(r) + " outside [1, " + std::to_string(dec.rank()) + "]");
    }
    std::vector<TimeSeries> out = reconstruct_blocks(x, dec, r);
    return MssaDenoised{MultiSeries(std::move(out)), window, r, dec.rank()};
}

MultiSeries mssa_denoise(const MultiSeries& ms, std::size_t window, std::optional<std::size_t> rank) {
    return mssa_denoise_detailed(ms, window, rank).series;
}

} // namespace ssamt
