#pragma once

#include <cstddef>
#include <optional>

#include "ssamt/timeseries.hpp"

namespace ssamt {

struct ImputationOptions {
    /// Fixed rank; without it the cumulative eigenvalue rule is re-applied on
    /// every iteration.
    std::optional<std::size_t> rank;
    double tolerance = 1e-6;
    std::size_t max_iterations = 100;
};

struct ImputationResult {
    TimeSeries series;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Iterative SSA gap filling. Missing entries start at zero; each cycle
/// denoises the completed series and copies the reconstruction into the
/// missing positions only. Stops once the largest change at a missing
/// position is <= tolerance, or after max_iterations (converged = false).
/// Observed entries are returned unchanged.
ImputationResult impute(const TimeSeries& series, std::size_t window, const ImputationOptions& options = {});

} // namespace ssamt
