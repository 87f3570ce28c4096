#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ssamt {

/// FWER-controlling multiple test procedures.
enum class Procedure { Bonferroni, Holm, SidakSingleStep, SidakStepDown, Hochberg };

inline constexpr Procedure kAllProcedures[] = {Procedure::Bonferroni, Procedure::Holm, Procedure::SidakSingleStep,
                                               Procedure::SidakStepDown, Procedure::Hochberg};

/// "bonferroni", "holm", "sidak_ss", "sidak_sd", "hochberg".
std::string_view to_string(Procedure p) noexcept;
Procedure parse_procedure(std::string_view name);

/// Decisions of one procedure on m p-values, in the caller's order.
/// `adjusted_thresholds[i]` is the local level hypothesis i was (or would
/// have been) compared against; every comparison is strict, p < threshold.
struct MtpReport {
    Procedure procedure = Procedure::Bonferroni;
    double alpha = 0.05;
    std::vector<bool> decisions;
    std::size_t rejection_count = 0;
    std::vector<double> adjusted_thresholds;
};

/// Reject p_i < alpha / m.
MtpReport bonferroni(std::span<const double> p, double alpha);
/// Step-down over ascending p with alpha / (m - j + 1), j = 1..m.
MtpReport holm(std::span<const double> p, double alpha);
/// Reject p_i < 1 - (1 - alpha)^(1/m).
MtpReport sidak_ss(std::span<const double> p, double alpha);
/// Step-down over ascending p with 1 - (1 - alpha)^(1/(m - j + 1)).
MtpReport sidak_sd(std::span<const double> p, double alpha);
/// Step-up: the largest j with p_(j) < alpha / (m - j + 1) rejects the j
/// smallest p-values.
MtpReport hochberg(std::span<const double> p, double alpha);

MtpReport run_procedure(Procedure procedure, std::span<const double> p, double alpha);

/// 1 - (1 - alpha)^(1/k) without cancellation for small alpha.
double sidak_level(double alpha, double k);

} // namespace ssamt
