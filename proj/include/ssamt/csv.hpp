#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ssamt/timeseries.hpp"

namespace ssamt {

struct CsvOptions {
    /// Treat the first column as an ordinal index/time column: it is kept as
    /// a text column (and written back) but never analysed.
    bool skip_index_column = false;
    /// Columns kept verbatim as text (group labels and the like) instead of
    /// being parsed as numbers.
    std::vector<std::string> text_columns;
};

struct TextColumn {
    std::string name;
    std::vector<std::string> cells;
};

/// A rectangular CSV file: numeric columns as series plus any text columns,
/// with the file's column order remembered for writing it back.
struct DataTable {
    std::vector<std::string> header;
    std::vector<TimeSeries> numeric;
    std::vector<TextColumn> text;

    std::size_t rows() const;
    MultiSeries series() const { return MultiSeries(numeric); }
    const TextColumn* text_column(const std::string& name) const;
    const TimeSeries* numeric_column(const std::string& name) const;
};

/// Reads a header-first CSV. Empty cells and "NA"/"NaN" (any case) become
/// missing entries. Parse failures name the file line and the column.
DataTable read_table(const std::filesystem::path& path, const CsvOptions& options = {});
DataTable parse_table(const std::string& content, const CsvOptions& options = {});

/// Writes the table in header order. Numbers use the shortest decimal form
/// that reads back to the same double; missing entries become "NA".
void write_table(const DataTable& table, const std::filesystem::path& path);
std::string format_table(const DataTable& table);

/// Numeric-only convenience wrappers. Text columns must be declared in
/// `options` and are dropped.
MultiSeries read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Series shorter than the longest one are padded with "NA".
void write_csv(const MultiSeries& series, const std::filesystem::path& path);

/// Shortest round-trip decimal representation of a finite double.
std::string format_number(double value);

} // namespace ssamt
