#include "ssamt/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "ssamt/diagnostics.hpp"
#include "ssamt/error.hpp"
#include "ssamt/ssa.hpp"

namespace ssamt {

std::string_view to_string(SignalKind kind) noexcept {
    switch (kind) {
    case SignalKind::SinePlusExp:
        return "sine_plus_exp";
    case SignalKind::CosinePlusLinear:
        return "cosine_plus_linear";
    case SignalKind::SineTimesExp:
        return "sine_times_exp";
    case SignalKind::SineLinearExp:
        return "sine_linear_exp";
    }
    return "unknown";
}

SignalKind parse_signal_kind(std::string_view name) {
    for (SignalKind k : kAllSignalKinds) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error("unknown model '" + std::string(name) +
                "' (valid: sine_plus_exp, cosine_plus_linear, sine_times_exp, sine_linear_exp)");
}

SignalModel::SignalModel(SignalKind k, std::size_t n) : kind(k), length(n) {
    if (length < 4) {
        throw Error("signal length must be at least 4");
    }
}

TimeSeries generate_signal(const SignalModel& model) {
    constexpr double pi = std::numbers::pi;
    std::vector<double> f(model.length);
    for (std::size_t i = 0; i < model.length; ++i) {
        const auto t = static_cast<double>(i + 1);
        switch (model.kind) {
        case SignalKind::SinePlusExp:
            f[i] = std::sin(2.0 * pi * t / 12.0) + std::exp(0.01 * t);
            break;
        case SignalKind::CosinePlusLinear:
            f[i] = 0.8 * std::cos(pi * t / 3.0) + 0.6 * t;
            break;
        case SignalKind::SineTimesExp:
            f[i] = std::sin(2.0 * pi * t / 12.0) * std::exp(0.01 * t);
            break;
        case SignalKind::SineLinearExp:
            f[i] = std::sin(3.0 * pi * t / 12.0) + 0.5 * t + std::exp(0.03 * t);
            break;
        }
    }
    return TimeSeries(std::string(to_string(model.kind)), std::move(f));
}

std::size_t signal_rank(SignalKind kind) noexcept {
    switch (kind) {
    case SignalKind::SinePlusExp:
        return 3;
    case SignalKind::CosinePlusLinear:
        return 4;
    case SignalKind::SineTimesExp:
        return 2;
    case SignalKind::SineLinearExp:
        return 5;
    }
    return 1;
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t index) noexcept { return mix_seed(seed + index); }

GaussianStream::GaussianStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

TimeSeries add_noise(const TimeSeries& signal, double sigma, std::uint64_t seed) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error("noise standard deviation must be positive");
    }
    const auto f = signal.values();
    GaussianStream z(seed);
    std::vector<double> y(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        y[i] = f[i] + sigma * z.next();
    }
    return TimeSeries(signal.name(), std::move(y));
}

std::string RankPolicy::describe() const {
    switch (kind) {
    case Kind::Signal:
        return "signal";
    case Kind::CumulativeShare:
        return "auto";
    case Kind::Fixed:
        return std::to_string(fixed);
    }
    return "unknown";
}

SimReport run_study(const StudyConfig& config) {
    if (config.replications < 1) {
        throw Error("at least one replication is required");
    }
    if (config.window_lengths.empty()) {
        throw Error("at least one window length is required");
    }
    const SignalModel model(config.kind, config.length);
    for (std::size_t w : config.window_lengths) {
        if (w < 2 || w > max_window_length(config.length)) {
            throw Error("window length " + std::to_string(w) + " outside [2, " +
                        std::to_string(max_window_length(config.length)) + "] for N = " +
                        std::to_string(config.length));
        }
    }
    if (config.rank.kind == RankPolicy::Kind::Fixed && config.rank.fixed < 1) {
        throw Error("fixed rank must be at least 1");
    }
    if (!(config.sigma > 0.0)) {
        throw Error("noise standard deviation must be positive");
    }

    const TimeSeries truth = generate_signal(model);
    const std::size_t windows = config.window_lengths.size();

    SimReport report;
    report.kind = config.kind;
    report.length = config.length;
    report.sigma = config.sigma;
    report.seed = config.seed;
    report.replications = config.replications;
    report.rank_policy = config.rank.describe();
    report.window_lengths = config.window_lengths;
    report.rmse.assign(config.replications, std::vector<double>(windows, 0.0));
    std::vector<std::vector<double>> mae(config.replications, std::vector<double>(windows, 0.0));

    auto run_one = [&](std::size_t rep) {
        const TimeSeries y = add_noise(truth, config.sigma, replication_seed(config.seed, rep));
        for (std::size_t w = 0; w < windows; ++w) {
            const auto dec = decompose(embed(y, config.window_lengths[w]));
            std::size_t r = 0;
            switch (config.rank.kind) {
            case RankPolicy::Kind::Signal:
                r = signal_rank(config.kind);
                break;
            case RankPolicy::Kind::CumulativeShare:
                r = cumulative_share_rank(dec);
                break;
            case RankPolicy::Kind::Fixed:
                r = config.rank.fixed;
                break;
            }
            r = std::min(r, dec.rank());
            const auto fitted = reconstruct_series(dec, r);
            report.rmse[rep][w] = rmse(truth.values(), fitted);
            double abs_err = 0.0;
            for (std::size_t i = 0; i < fitted.size(); ++i) {
                abs_err += std::abs(truth.values()[i] - fitted[i]);
            }
            mae[rep][w] = abs_err / static_cast<double>(fitted.size());
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, config.replications);
    if (threads == 1) {
        for (std::size_t rep = 0; rep < config.replications; ++rep) {
            run_one(rep);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t rep = next++; rep < config.replications; rep = next++) {
                    try {
                        run_one(rep);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        pool.clear();
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    // Summation in replication order keeps the means independent of the
    // thread schedule.
    report.mean_rmse.assign(windows, 0.0);
    report.mean_mae.assign(windows, 0.0);
    for (std::size_t rep = 0; rep < config.replications; ++rep) {
        for (std::size_t w = 0; w < windows; ++w) {
            report.mean_rmse[w] += report.rmse[rep][w];
            report.mean_mae[w] += mae[rep][w];
        }
    }
    for (std::size_t w = 0; w < windows; ++w) {
        report.mean_rmse[w] /= static_cast<double>(config.replications);
        report.mean_mae[w] /= static_cast<double>(config.replications);
    }
    return report;
}

} // namespace ssamt
