#include "ssamt/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

#include "ssamt/error.hpp"

namespace ssamt {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool is_missing_marker(std::string_view cell) {
    return cell.empty() || iequals(cell, "NA") || iequals(cell, "NaN");
}

// Splits one line into cells. Double-quoted cells may contain commas and
// doubled quotes; embedded newlines are not supported.
std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"' && trim(cell).empty()) {
            cell.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            cells.push_back(was_quoted ? cell : std::string(trim(cell)));
            cell.clear();
            was_quoted = false;
        } else {
            cell.push_back(c);
        }
    }
    if (quoted) {
        throw Error("line " + std::to_string(line_no) + ": unterminated quoted cell");
    }
    cells.push_back(was_quoted ? cell : std::string(trim(cell)));
    return cells;
}

std::optional<double> parse_number(std::string_view cell, bool& ok) {
    ok = true;
    if (is_missing_marker(cell)) {
        return std::nullopt;
    }
    std::string_view digits = cell;
    if (!digits.empty() && digits.front() == '+') {
        digits.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
        ok = false;
        return std::nullopt;
    }
    return value;
}

std::string quote_if_needed(const std::string& s) {
    const bool needs = s.find_first_of(",\"") != std::string::npos || s != trim(s) || is_missing_marker(s);
    if (!needs) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out += '"';
    return out;
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        throw Error("cannot format number");
    }
    return std::string(buf, ptr);
}

std::size_t DataTable::rows() const {
    if (!numeric.empty()) {
        return numeric.front().size();
    }
    return text.empty() ? 0 : text.front().cells.size();
}

const TextColumn* DataTable::text_column(const std::string& name) const {
    auto it = std::find_if(text.begin(), text.end(), [&](const TextColumn& c) { return c.name == name; });
    return it == text.end() ? nullptr : &*it;
}

const TimeSeries* DataTable::numeric_column(const std::string& name) const {
    auto it = std::find_if(numeric.begin(), numeric.end(), [&](const TimeSeries& c) { return c.name() == name; });
    return it == numeric.end() ? nullptr : &*it;
}

DataTable parse_table(const std::string& content, const CsvOptions& options) {
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (!trim(line).empty()) {
            header = split_line(line, line_no);
            break;
        }
    }
    if (header.empty()) {
        throw Error("empty file");
    }
    // An index column is carried along as text and never parsed.
    const std::size_t first = options.skip_index_column ? 1 : 0;
    if (header.size() <= first) {
        throw Error("no data columns in header");
    }
    {
        std::set<std::string> seen;
        for (std::size_t c = first; c < header.size(); ++c) {
            if (header[c].empty()) {
                throw Error("empty column name in header (column " + std::to_string(c + 1) + ")");
            }
            if (!seen.insert(header[c]).second) {
                throw Error("duplicate column name '" + header[c] + "'");
            }
        }
        for (const auto& t : options.text_columns) {
            if (!seen.contains(t)) {
                throw Error("text column '" + t + "' not found in header");
            }
        }
    }
    const auto is_text = [&](const std::string& name) {
        return std::find(options.text_columns.begin(), options.text_columns.end(), name) !=
               options.text_columns.end();
    };

    const std::size_t width = header.size();
    std::vector<std::vector<std::optional<double>>> numbers(width);
    std::vector<std::vector<std::string>> texts(width);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto cells = split_line(line, line_no);
        if (cells.size() != width) {
            throw Error("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " cells, found " +
                        std::to_string(cells.size()));
        }
        if (first == 1) {
            texts[0].push_back(cells[0]);
        }
        for (std::size_t c = first; c < width; ++c) {
            if (is_text(header[c])) {
                texts[c].push_back(cells[c]);
                continue;
            }
            bool ok = true;
            auto v = parse_number(cells[c], ok);
            if (!ok) {
                throw Error("parse error at row " + std::to_string(line_no) + ", column \"" + header[c] +
                            "\": '" + cells[c] + "' is not a number");
            }
            numbers[c].push_back(v);
        }
        ++rows;
    }
    if (rows == 0) {
        throw Error("empty data");
    }

    DataTable table;
    if (first == 1) {
        table.header.push_back(header[0]);
        table.text.push_back({header[0], std::move(texts[0])});
    }
    for (std::size_t c = first; c < width; ++c) {
        table.header.push_back(header[c]);
        if (is_text(header[c])) {
            table.text.push_back({header[c], std::move(texts[c])});
        } else {
            table.numeric.push_back(TimeSeries::from_optional(header[c], numbers[c]));
        }
    }
    return table;
}

DataTable read_table(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_table(buf.str(), options);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

std::string format_table(const DataTable& table) {
    std::size_t rows = 0;
    for (const auto& s : table.numeric) {
        rows = std::max(rows, s.size());
    }
    for (const auto& t : table.text) {
        rows = std::max(rows, t.cells.size());
    }

    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        out += (c ? "," : "") + quote_if_needed(table.header[c]);
    }
    out += '\n';

    struct Column {
        const TimeSeries* numeric = nullptr;
        const TextColumn* text = nullptr;
    };
    std::vector<Column> columns;
    for (const auto& name : table.header) {
        Column col{table.numeric_column(name), table.text_column(name)};
        if (!col.numeric && !col.text) {
            throw Error("header names unknown column '" + name + "'");
        }
        columns.push_back(col);
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) {
                out += ',';
            }
            if (const auto* s = columns[c].numeric) {
                out += (r < s->size() && !s->is_missing(r)) ? format_number(s->raw_values()[r]) : "NA";
            } else {
                const auto& cells = columns[c].text->cells;
                out += r < cells.size() ? quote_if_needed(cells[r]) : "";
            }
        }
        out += '\n';
    }
    return out;
}

void write_table(const DataTable& table, const std::filesystem::path& path) {
    const std::string content = format_table(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw Error("write to '" + path.string() + "' failed");
    }
}

MultiSeries read_csv(const std::filesystem::path& path, const CsvOptions& options) {
    auto table = read_table(path, options);
    if (table.numeric.empty()) {
        throw Error(path.string() + ": no numeric columns");
    }
    return table.series();
}

void write_csv(const MultiSeries& series, const std::filesystem::path& path) {
    DataTable table;
    for (const auto& s : series) {
        table.header.push_back(s.name());
        table.numeric.push_back(s);
    }
    write_table(table, path);
}

} // namespace ssamt
