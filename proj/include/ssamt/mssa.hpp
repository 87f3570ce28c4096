#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ssamt/ssa.hpp"
#include "ssamt/timeseries.hpp"

namespace ssamt {

/// Layout of a stacked trajectory matrix: series p occupies columns
/// [column_offsets[p], column_offsets[p] + N_p - L].
class MssaPlan {
public:
    MssaPlan(std::size_t window, std::vector<std::size_t> series_lengths);

    std::size_t window_length() const noexcept { return window_; }
    const std::vector<std::size_t>& series_lengths() const noexcept { return lengths_; }
    const std::vector<std::size_t>& column_offsets() const noexcept { return offsets_; }
    std::size_t block_columns(std::size_t p) const { return lengths_.at(p) - window_ + 1; }
    std::size_t total_columns() const noexcept { return total_; }

private:
    std::size_t window_;
    std::vector<std::size_t> lengths_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
};

/// Horizontal concatenation of the per-series Hankel blocks, in series
/// order. Requires 2 <= L < min N_p and complete series.
TrajectoryMatrix embed_multi(const MultiSeries& ms, std::size_t window);

/// Rank-r reconstruction of a stacked trajectory matrix, split by its column
/// spans and diagonal-averaged block by block.
std::vector<TimeSeries> reconstruct_blocks(const TrajectoryMatrix& x, const SsaDecomposition& dec, std::size_t rank);

struct MssaDenoised {
    MultiSeries series;
    std::size_t window = 0;
    std::size_t rank = 0;
    std::size_t full_rank = 0;
};

/// One joint decomposition; the rank-r reconstruction is split back into
/// blocks and each block diagonal-averaged on its own. Without `rank` the
/// cumulative eigenvalue rule runs on the joint spectrum.
MssaDenoised mssa_denoise_detailed(const MultiSeries& ms, std::size_t window,
                                   std::optional<std::size_t> rank = std::nullopt);

MultiSeries mssa_denoise(const MultiSeries& ms, std::size_t window, std::optional<std::size_t> rank = std::nullopt);

} // namespace ssamt
