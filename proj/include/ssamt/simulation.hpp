#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ssamt/timeseries.hpp"

namespace ssamt {

enum class SignalKind { SinePlusExp, CosinePlusLinear, SineTimesExp, SineLinearExp };

inline constexpr SignalKind kAllSignalKinds[] = {SignalKind::SinePlusExp, SignalKind::CosinePlusLinear,
                                                 SignalKind::SineTimesExp, SignalKind::SineLinearExp};

/// "sine_plus_exp", "cosine_plus_linear", "sine_times_exp", "sine_linear_exp".
std::string_view to_string(SignalKind kind) noexcept;
SignalKind parse_signal_kind(std::string_view name);

struct SignalModel {
    SignalModel(SignalKind kind, std::size_t length);

    SignalKind kind;
    std::size_t length;
};

/// Noise-free f_t, t = 1..N:
///   sine_plus_exp       sin(2 pi t / 12) + exp(0.01 t)
///   cosine_plus_linear  0.8 cos(pi t / 3) + 0.6 t
///   sine_times_exp      sin(2 pi t / 12) exp(0.01 t)
///   sine_linear_exp     sin(3 pi t / 12) + 0.5 t + exp(0.03 t)
TimeSeries generate_signal(const SignalModel& model);

/// Rank of the trajectory matrix of the noise-free signal (2 per sinusoid,
/// 2 per linear trend, 1 per exponential, 2 for a modulated sinusoid).
std::size_t signal_rank(SignalKind kind) noexcept;

/// Deterministic standard-normal stream: a 64-bit Mersenne Twister seeded
/// through splitmix64, 53-bit uniforms, and the Box-Muller transform using
/// both outputs of each pair. The same seed gives the same sequence on every
/// platform.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed);
    double next();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer, used to derive per-replication seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed of replication `index` under master seed `seed`:
/// mix_seed(seed + index).
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// y_t = f_t + sigma * z_t with z_t drawn from GaussianStream(seed).
TimeSeries add_noise(const TimeSeries& signal, double sigma, std::uint64_t seed);

/// How the study picks the number of SSA components.
struct RankPolicy {
    enum class Kind { Signal, CumulativeShare, Fixed };
    Kind kind = Kind::Signal;
    std::size_t fixed = 0;

    static RankPolicy signal() { return {Kind::Signal, 0}; }
    static RankPolicy cumulative_share() { return {Kind::CumulativeShare, 0}; }
    static RankPolicy fixed_rank(std::size_t r) { return {Kind::Fixed, r}; }
    std::string describe() const;
};

struct StudyConfig {
    SignalKind kind = SignalKind::SinePlusExp;
    std::size_t length = 100;
    std::vector<std::size_t> window_lengths = {50};
    std::size_t replications = 100;
    double sigma = 1.0;
    std::uint64_t seed = 1;
    RankPolicy rank = RankPolicy::signal();
    std::size_t threads = 1;
};

struct SimReport {
    SignalKind kind = SignalKind::SinePlusExp;
    std::size_t length = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::size_t replications = 0;
    std::string rank_policy;
    std::vector<std::size_t> window_lengths;
    /// Mean over replications of the RMSE between SSA reconstruction and f.
    std::vector<double> mean_rmse;
    /// Mean absolute error, averaged the same way.
    std::vector<double> mean_mae;
    /// Per replication (outer) and window (inner).
    std::vector<std::vector<double>> rmse;
};

/// For each replication r: noise from replication_seed(seed, r), one noisy
/// series shared by all windows, SSA reconstruction per window, error
/// against the true signal. Replications may run on several threads; the
/// report does not depend on the thread count.
SimReport run_study(const StudyConfig& config);

} // namespace ssamt
