#include "ssamt/mtp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ssamt/error.hpp"

namespace ssamt {
namespace {

void validate(std::span<const double> p, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error("alpha must lie in (0, 1)");
    }
    if (p.empty()) {
        throw Error("at least one p-value is required");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
            throw Error("p-value " + std::to_string(i + 1) + " outside [0, 1]");
        }
    }
}

// Indices ordered by ascending p, ties by original index.
std::vector<std::size_t> ascending_order(std::span<const double> p) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    return order;
}

MtpReport make_report(Procedure procedure, double alpha, std::size_t m) {
    MtpReport r;
    r.procedure = procedure;
    r.alpha = alpha;
    r.decisions.assign(m, false);
    r.adjusted_thresholds.assign(m, 0.0);
    return r;
}

template <typename Level>
MtpReport single_step(Procedure procedure, std::span<const double> p, double alpha, Level level) {
    validate(p, alpha);
    MtpReport r = make_report(procedure, alpha, p.size());
    const double threshold = level(static_cast<double>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        r.adjusted_thresholds[i] = threshold;
        r.decisions[i] = p[i] < threshold;
        r.rejection_count += r.decisions[i] ? 1 : 0;
    }
    return r;
}

// `level(k)` is the threshold of the ordered p-value with k hypotheses
// still in play, i.e. k = m - j + 1 for the j-th smallest.
template <typename Level>
MtpReport step_down(Procedure procedure, std::span<const double> p, double alpha, Level level) {
    validate(p, alpha);
    const std::size_t m = p.size();
    MtpReport r = make_report(procedure, alpha, m);
    const auto order = ascending_order(p);
    bool stopped = false;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t idx = order[j];
        r.adjusted_thresholds[idx] = level(static_cast<double>(m - j));
        if (!stopped && p[idx] < r.adjusted_thresholds[idx]) {
            r.decisions[idx] = true;
            ++r.rejection_count;
        } else {
            stopped = true;
        }
    }
    return r;
}

} // namespace

std::string_view to_string(Procedure p) noexcept {
    switch (p) {
    case Procedure::Bonferroni:
        return "bonferroni";
    case Procedure::Holm:
        return "holm";
    case Procedure::SidakSingleStep:
        return "sidak_ss";
    case Procedure::SidakStepDown:
        return "sidak_sd";
    case Procedure::Hochberg:
        return "hochberg";
    }
    return "unknown";
}

Procedure parse_procedure(std::string_view name) {
    for (Procedure p : kAllProcedures) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw Error("unknown procedure '" + std::string(name) +
                "' (expected bonferroni, holm, sidak_ss, sidak_sd or hochberg)");
}

double sidak_level(double alpha, double k) {
    if (k == 1.0) {
        return alpha;
    }
    return -std::expm1(std::log1p(-alpha) / k);
}

MtpReport bonferroni(std::span<const double> p, double alpha) {
    return single_step(Procedure::Bonferroni, p, alpha, [alpha](double m) { return alpha / m; });
}

MtpReport sidak_ss(std::span<const double> p, double alpha) {
    return single_step(Procedure::SidakSingleStep, p, alpha, [alpha](double m) { return sidak_level(alpha, m); });
}

MtpReport holm(std::span<const double> p, double alpha) {
    return step_down(Procedure::Holm, p, alpha, [alpha](double k) { return alpha / k; });
}

MtpReport sidak_sd(std::span<const double> p, double alpha) {
    return step_down(Procedure::SidakStepDown, p, alpha, [alpha](double k) { return sidak_level(alpha, k); });
}

MtpReport hochberg(std::span<const double> p, double alpha) {
    validate(p, alpha);
    const std::size_t m = p.size();
    MtpReport r = make_report(Procedure::Hochberg, alpha, m);
    const auto order = ascending_order(p);
    for (std::size_t j = 0; j < m; ++j) {
        r.adjusted_thresholds[order[j]] = alpha / static_cast<double>(m - j);
    }
    // Scan from the largest p-value down; the first one under its
    // threshold rejects itself and everything smaller.
    std::size_t cut = 0;
    for (std::size_t j = m; j-- > 0;) {
        if (p[order[j]] < r.adjusted_thresholds[order[j]]) {
            cut = j + 1;
            break;
        }
    }
    for (std::size_t j = 0; j < cut; ++j) {
        r.decisions[order[j]] = true;
    }
    r.rejection_count = cut;
    return r;
}

MtpReport run_procedure(Procedure procedure, std::span<const double> p, double alpha) {
    switch (procedure) {
    case Procedure::Bonferroni:
        return bonferroni(p, alpha);
    case Procedure::Holm:
        return holm(p, alpha);
    case Procedure::SidakSingleStep:
        return sidak_ss(p, alpha);
    case Procedure::SidakStepDown:
        return sidak_sd(p, alpha);
    case Procedure::Hochberg:
        return hochberg(p, alpha);
    }
    throw Error("unknown procedure");
}

} // namespace ssamt
