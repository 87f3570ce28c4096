#include "ssamt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ssamt/error.hpp"

namespace ssamt {
namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error("series lengths differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) {
        throw Error("empty series");
    }
}

} // namespace

double rrmse(std::span<const double> truth, std::span<const double> est_a, std::span<const double> est_b) {
    require_same_length(truth, est_a);
    require_same_length(truth, est_b);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        num += (truth[i] - est_a[i]) * (truth[i] - est_a[i]);
        den += (truth[i] - est_b[i]) * (truth[i] - est_b[i]);
    }
    if (den == 0.0) {
        throw DegenerateError("RRMSE undefined: the reference estimate equals the truth");
    }
    return std::sqrt(num) / std::sqrt(den);
}

double rmae(std::span<const double> truth, std::span<const double> est_a, std::span<const double> est_b) {
    require_same_length(truth, est_a);
    require_same_length(truth, est_b);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        num += std::abs(truth[i] - est_a[i]);
        den += std::abs(truth[i] - est_b[i]);
    }
    if (den == 0.0) {
        throw DegenerateError("RMAE undefined: the reference estimate equals the truth");
    }
    return num / den;
}

double rmse(std::span<const double> truth, std::span<const double> estimate) {
    require_same_length(truth, estimate);
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        acc += (truth[i] - estimate[i]) * (truth[i] - estimate[i]);
    }
    return std::sqrt(acc / static_cast<double>(truth.size()));
}

double snr(std::span<const double> observed, std::span<const double> denoised) {
    require_same_length(observed, denoised);
    const std::size_t n = observed.size();
    if (n < 2) {
        throw DegenerateError("SNR needs at least two observations");
    }
    double mean = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += observed[i] - denoised[i];
        scale = std::max({scale, std::abs(observed[i]), std::abs(denoised[i])});
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    double signal = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = observed[i] - denoised[i] - mean;
        ss += r * r;
        signal += denoised[i] * denoised[i];
    }
    const double var = ss / static_cast<double>(n - 1);
    // A residual that only differs by rounding of the inputs is constant.
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (var <= noise_floor * noise_floor) {
        throw DegenerateError("SNR undefined: residual has zero empirical variance");
    }
    return signal / var;
}

double roughness(std::span<const double> f) {
    if (f.size() < 3) {
        throw Error("roughness needs a series of length >= 3");
    }
    double acc = 0.0;
    for (std::size_t n = 2; n < f.size(); ++n) {
        const double d2 = f[n] - 2.0 * f[n - 1] + f[n - 2];
        acc += d2 * d2;
    }
    return acc;
}

DenoisingScore goodness_of_denoising(std::span<const double> observed, std::span<const double> denoised) {
    DenoisingScore score;
    score.snr = snr(observed, denoised);
    score.roughness = roughness(denoised);
    if (score.roughness <= kRoughnessFloor) {
        score.affine_fit = true;
        score.goodness_db = std::numeric_limits<double>::infinity();
    } else {
        score.goodness_db = 10.0 * std::log10(score.snr + 1.0 / score.roughness);
    }
    return score;
}

double w_correlation(std::span<const double> x, std::span<const double> y, std::size_t window) {
    require_same_length(x, y);
    const std::size_t n = x.size();
    if (window < 2 || window + 1 > n) {
        throw Error("w-correlation window " + std::to_string(window) + " outside [2, " + std::to_string(n - 1) + "]");
    }
    // Multiplicity of position k in an L x K Hankel matrix; symmetric in L, K.
    const std::size_t lower = std::min(window, n - window + 1);
    double xy = 0.0;
    double xx = 0.0;
    double yy = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto w = static_cast<double>(std::min({k, lower, n - k + 1}));
        xy += w * x[k - 1] * y[k - 1];
        xx += w * x[k - 1] * x[k - 1];
        yy += w * y[k - 1] * y[k - 1];
    }
    if (xx == 0.0 || yy == 0.0) {
        throw DegenerateError("w-correlation undefined: a series has zero w-norm");
    }
    // Rounding can overshoot the Cauchy-Schwarz bound by a few ulps on
    // collinear inputs.
    return std::clamp(xy / (std::sqrt(xx) * std::sqrt(yy)), -1.0, 1.0);
}

} // namespace ssamt
