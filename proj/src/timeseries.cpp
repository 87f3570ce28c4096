#include "ssamt/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ssamt/error.hpp"

namespace ssamt {

TimeSeries::TimeSeries(std::string name, std::vector<double> values)
    : TimeSeries(std::move(name), std::move(values), std::vector<bool>{}) {}

TimeSeries::TimeSeries(std::string name, std::vector<double> values, std::vector<bool> missing)
    : name_(std::move(name)), values_(std::move(values)), missing_(std::move(missing)) {
    if (values_.empty()) {
        throw Error("series '" + name_ + "' must have at least one entry");
    }
    if (missing_.empty()) {
        missing_.assign(values_.size(), false);
    }
    if (missing_.size() != values_.size()) {
        throw Error("series '" + name_ + "': missing mask length differs from value count");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (missing_[i]) {
            values_[i] = std::numeric_limits<double>::quiet_NaN();
        } else if (!std::isfinite(values_[i])) {
            throw Error("series '" + name_ + "': non-finite value at position " + std::to_string(i + 1));
        }
    }
}

TimeSeries TimeSeries::from_optional(std::string name, const std::vector<std::optional<double>>& cells) {
    std::vector<double> values(cells.size(), 0.0);
    std::vector<bool> missing(cells.size(), false);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i]) {
            values[i] = *cells[i];
        } else {
            missing[i] = true;
        }
    }
    return TimeSeries(std::move(name), std::move(values), std::move(missing));
}

std::size_t TimeSeries::missing_count() const noexcept {
    return static_cast<std::size_t>(std::count(missing_.begin(), missing_.end(), true));
}

std::size_t TimeSeries::effective_length() const noexcept {
    std::size_t n = missing_.size();
    while (n > 0 && missing_[n - 1]) {
        --n;
    }
    return n;
}

std::span<const double> TimeSeries::values() const {
    if (has_missing()) {
        throw Error("series '" + name_ + "' has " + std::to_string(missing_count()) +
                    " missing entries; impute them first");
    }
    return values_;
}

TimeSeries TimeSeries::head(std::size_t n) const {
    if (n == 0 || n > values_.size()) {
        throw Error("series '" + name_ + "': cannot take " + std::to_string(n) + " of " +
                    std::to_string(values_.size()) + " entries");
    }
    std::vector<double> v(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<bool> m(missing_.begin(), missing_.begin() + static_cast<std::ptrdiff_t>(n));
    TimeSeries out(name_, std::move(v), std::move(m));
    out.values(); // rejects interior gaps
    return out;
}

TimeSeries TimeSeries::renamed(std::string name) const {
    TimeSeries out = *this;
    out.name_ = std::move(name);
    return out;
}

bool operator==(const TimeSeries& a, const TimeSeries& b) {
    if (a.name() != b.name() || a.size() != b.size() || a.missing_mask() != b.missing_mask()) {
        return false;
    }
    const auto av = a.raw_values();
    const auto bv = b.raw_values();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.is_missing(i) && av[i] != bv[i]) {
            return false;
        }
    }
    return true;
}

MultiSeries::MultiSeries(std::vector<TimeSeries> series) : series_(std::move(series)) {
    if (series_.empty()) {
        throw Error("a multivariate series needs at least one member");
    }
    std::set<std::string> seen;
    for (const auto& s : series_) {
        if (!seen.insert(s.name()).second) {
            throw Error("duplicate series name '" + s.name() + "'");
        }
    }
}

const TimeSeries* MultiSeries::find(const std::string& name) const {
    auto it = std::find_if(series_.begin(), series_.end(), [&](const TimeSeries& s) { return s.name() == name; });
    return it == series_.end() ? nullptr : &*it;
}

std::vector<std::string> MultiSeries::names() const {
    std::vector<std::string> out;
    out.reserve(series_.size());
    for (const auto& s : series_) {
        out.push_back(s.name());
    }
    return out;
}

GroupedSample::GroupedSample(std::string name, std::vector<Group> gs)
    : variable_name(std::move(name)), groups(std::move(gs)) {
    if (groups.size() < 2) {
        throw Error("variable '" + variable_name + "': at least two groups are required");
    }
    for (const auto& g : groups) {
        if (g.values.size() < 2) {
            throw Error("variable '" + variable_name + "': group '" + g.label +
                        "' has fewer than two observations");
        }
        for (double v : g.values) {
            if (!std::isfinite(v)) {
                throw Error("variable '" + variable_name + "': non-finite observation in group '" + g.label + "'");
            }
        }
    }
}

} // namespace ssamt
