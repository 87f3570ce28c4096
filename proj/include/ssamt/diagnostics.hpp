#pragma once

#include <cstddef>
#include <span>

namespace ssamt {

/// Ratio of root summed squared errors, est_a against est_b:
/// sqrt(sum (f - a)^2) / sqrt(sum (f - b)^2). Below 1 favours est_a.
double rrmse(std::span<const double> truth, std::span<const double> est_a, std::span<const double> est_b);

/// Ratio of summed absolute errors, sum |f - a| / sum |f - b|.
double rmae(std::span<const double> truth, std::span<const double> est_a, std::span<const double> est_b);

/// Root mean squared error.
double rmse(std::span<const double> truth, std::span<const double> estimate);

/// Empirical signal-to-noise ratio: sum of squared denoised values over the
/// sample variance (denominator N-1) of the residual observed - denoised.
/// Throws DegenerateError when the residual is constant.
double snr(std::span<const double> observed, std::span<const double> denoised);

/// Discrete roughness: sum over n >= 3 of the squared second difference.
double roughness(std::span<const double> f);

struct DenoisingScore {
    double snr = 0.0;
    double roughness = 0.0;
    /// 10 log10(snr + 1/roughness); +infinity when `affine_fit`.
    double goodness_db = 0.0;
    /// The denoised series has zero roughness (an exact affine fit), so the
    /// decibel score is unbounded.
    bool affine_fit = false;
};

/// Roughness at or below this counts as zero in the goodness score.
inline constexpr double kRoughnessFloor = 1e-300;

DenoisingScore goodness_of_denoising(std::span<const double> observed, std::span<const double> denoised);

/// w-weighted correlation with w_k = min(k, L, K, N - k + 1), k = 1..N,
/// K = N - L + 1: the number of times y_k appears in the trajectory matrix.
/// Throws DegenerateError when either series has zero w-norm.
double w_correlation(std::span<const double> x, std::span<const double> y, std::size_t window);

} // namespace ssamt
