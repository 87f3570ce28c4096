#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssamt {

/// A named, ordered sequence of real observations with an optional
/// missing-value mask. Missing positions store NaN; nothing downstream reads
/// them.
class TimeSeries {
public:
    /// Complete series (no missing entries). Every value must be finite.
    TimeSeries(std::string name, std::vector<double> values);

    /// Series with an explicit mask; `missing[i] == true` marks position i.
    TimeSeries(std::string name, std::vector<double> values, std::vector<bool> missing);

    /// Builds a series from optional cells, `std::nullopt` being missing.
    static TimeSeries from_optional(std::string name, const std::vector<std::optional<double>>& cells);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return values_.size(); }

    bool is_missing(std::size_t i) const { return missing_.at(i); }
    const std::vector<bool>& missing_mask() const noexcept { return missing_; }
    std::size_t missing_count() const noexcept;
    bool has_missing() const noexcept { return missing_count() > 0; }

    /// Number of leading positions up to and including the last observed
    /// entry. Trailing missing markers encode a shorter series in a
    /// rectangular file.
    std::size_t effective_length() const noexcept;

    /// Raw storage, NaN at missing positions.
    std::span<const double> raw_values() const noexcept { return values_; }

    /// Values of a series that has no missing entries. Throws otherwise, so
    /// algorithms that need complete data cannot silently read a mask.
    std::span<const double> values() const;

    /// The first `n` entries as a new complete series; throws if any of them
    /// is missing.
    TimeSeries head(std::size_t n) const;

    TimeSeries renamed(std::string name) const;

private:
    std::string name_;
    std::vector<double> values_;
    std::vector<bool> missing_;
};

bool operator==(const TimeSeries& a, const TimeSeries& b);

/// An ordered collection of uniquely named series, possibly of different
/// lengths.
class MultiSeries {
public:
    explicit MultiSeries(std::vector<TimeSeries> series);

    std::size_t size() const noexcept { return series_.size(); }
    const TimeSeries& operator[](std::size_t i) const { return series_.at(i); }
    const TimeSeries* find(const std::string& name) const;
    std::vector<std::string> names() const;

    auto begin() const noexcept { return series_.begin(); }
    auto end() const noexcept { return series_.end(); }

    friend bool operator==(const MultiSeries&, const MultiSeries&) = default;

private:
    std::vector<TimeSeries> series_;
};

/// One variable observed in several groups, the input of a group
/// comparison test.
struct GroupedSample {
    struct Group {
        std::string label;
        std::vector<double> values;
    };

    GroupedSample(std::string variable_name, std::vector<Group> groups);

    std::string variable_name;
    std::vector<Group> groups;
};

} // namespace ssamt
