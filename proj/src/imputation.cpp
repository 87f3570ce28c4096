#include "ssamt/imputation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ssamt/error.hpp"
#include "ssamt/ssa.hpp"

namespace ssamt {

ImputationResult impute(const TimeSeries& series, std::size_t window, const ImputationOptions& options) {
    const std::size_t n = series.size();
    const std::size_t missing = series.missing_count();
    if (missing == 0) {
        throw Error("series '" + series.name() + "': nothing to impute");
    }
    if (missing == n) {
        throw Error("series '" + series.name() + "': all entries are missing");
    }
    if (n - missing < window) {
        throw Error("series '" + series.name() + "': " + std::to_string(n - missing) +
                    " observed entries, fewer than the window length " + std::to_string(window));
    }
    if (!(options.tolerance > 0.0)) {
        throw Error("imputation tolerance must be positive");
    }
    if (window < 2 || window > max_window_length(n)) {
        throw Error("series '" + series.name() + "': window length " + std::to_string(window) + " outside [2, " +
                    std::to_string(max_window_length(n)) + "]");
    }

    std::vector<std::size_t> gaps;
    std::vector<double> current(series.raw_values().begin(), series.raw_values().end());
    for (std::size_t i = 0; i < n; ++i) {
        if (series.is_missing(i)) {
            gaps.push_back(i);
            current[i] = 0.0;
        }
    }

    ImputationResult result{TimeSeries(series.name(), current), 0, false};
    while (result.iterations < options.max_iterations) {
        const auto recon = ssa_denoise(TimeSeries(series.name(), current), window, options.rank);
        const auto fitted = recon.values();
        double change = 0.0;
        for (std::size_t i : gaps) {
            change = std::max(change, std::abs(fitted[i] - current[i]));
            current[i] = fitted[i];
        }
        ++result.iterations;
        if (change <= options.tolerance) {
            result.converged = true;
            break;
        }
    }
    result.series = TimeSeries(series.name(), std::move(current));
    return result;
}

} // namespace ssamt
