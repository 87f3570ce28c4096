#include "ssamt/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "ssamt/diagnostics.hpp"
#include "ssamt/error.hpp"
#include "ssamt/imputation.hpp"
#include "ssamt/mssa.hpp"
#include "ssamt/simulation.hpp"
#include "ssamt/ssa.hpp"

namespace ssamt {
namespace fs = std::filesystem;

namespace {

std::size_t parse_count(std::string_view text, const char* what) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

void write_json(const fs::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw Error("write to '" + path.string() + "' failed");
    }
}

CsvOptions csv_options(const PipelineConfig& config) {
    CsvOptions opts;
    opts.skip_index_column = config.skip_index_column;
    if (config.group_column) {
        opts.text_columns.push_back(*config.group_column);
    }
    return opts;
}

struct GroupRows {
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> rows;
};

// Groups in order of first appearance.
GroupRows partition(const std::vector<std::string>& labels) {
    GroupRows g;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < labels.size(); ++r) {
        auto [it, inserted] = index.emplace(labels[r], g.labels.size());
        if (inserted) {
            g.labels.push_back(labels[r]);
            g.rows.emplace_back();
        }
        g.rows[it->second].push_back(r);
    }
    return g;
}

std::size_t resolve_rank(const RankSpec& spec, const SsaDecomposition& dec, const std::string& what) {
    if (dec.rank() == 0) {
        throw DegenerateError(what + ": trajectory matrix is zero");
    }
    std::size_t r = 0;
    switch (spec.kind) {
    case RankSpec::Kind::Auto:
        r = cumulative_share_rank(dec);
        break;
    case RankSpec::Kind::Full:
        r = dec.rank();
        break;
    case RankSpec::Kind::Fixed:
        r = spec.value;
        break;
    case RankSpec::Kind::Signal:
        throw Error("rank 'signal' is only meaningful for simulate");
    }
    if (r < 1 || r > dec.rank()) {
        throw Error(what + ": rank " + std::to_string(r) + " outside [1, " + std::to_string(dec.rank()) + "]");
    }
    return r;
}

std::vector<double> gather(std::span<const double> values, const std::vector<std::size_t>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r : rows) {
        out.push_back(values[r]);
    }
    return out;
}

// A numeric column as the complete prefix that holds data.
TimeSeries observed_prefix(const TimeSeries& column) {
    const std::size_t n = column.effective_length();
    if (n == 0) {
        throw Error("column '" + column.name() + "' has no observations");
    }
    const TimeSeries head = TimeSeries(column.name(),
                                       std::vector<double>(column.raw_values().begin(), column.raw_values().begin() + static_cast<std::ptrdiff_t>(n)),
                                       std::vector<bool>(column.missing_mask().begin(), column.missing_mask().begin() + static_cast<std::ptrdiff_t>(n)));
    if (head.has_missing()) {
        throw Error("column '" + column.name() + "' has " + std::to_string(head.missing_count()) +
                    " missing values; run 'impute' first");
    }
    return head;
}

// Writes `fitted` into the first fitted.size() rows (or the given rows) of a
// copy of `column`.
TimeSeries with_values(const TimeSeries& column, const std::vector<double>& fitted,
                       const std::vector<std::size_t>* rows = nullptr) {
    std::vector<double> values(column.raw_values().begin(), column.raw_values().end());
    std::vector<bool> missing = column.missing_mask();
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        const std::size_t r = rows ? (*rows)[i] : i;
        values[r] = fitted[i];
        missing[r] = false;
    }
    return TimeSeries(column.name(), std::move(values), std::move(missing));
}

Json number_or_text(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

Json test_json(const TestResult& t) {
    Json j;
    j["variable_name"] = t.variable_name;
    j["statistic"] = number_or_text(t.statistic);
    j["dof"] = t.dof;
    j["p_value"] = t.p_value;
    j["kind"] = std::string(to_string(t.kind));
    return j;
}

Json procedure_json(const MtpReport& r, const std::vector<TestResult>& tests) {
    Json j;
    j["procedure"] = std::string(to_string(r.procedure));
    j["alpha"] = r.alpha;
    Json decisions = Json::array();
    Json rejected = Json::array();
    for (std::size_t i = 0; i < r.decisions.size(); ++i) {
        decisions.push_back(static_cast<bool>(r.decisions[i]));
        if (r.decisions[i]) {
            rejected.push_back(tests[i].variable_name);
        }
    }
    j["decisions"] = decisions;
    j["rejection_count"] = r.rejection_count;
    j["adjusted_thresholds"] = r.adjusted_thresholds;
    j["rejected_variables"] = rejected;
    return j;
}

Json report_skeleton(const std::string& dataset) {
    Json j;
    j["dataset"] = dataset;
    j["preprocessing"] = Json{{"method", "none"}, {"L", nullptr}, {"rank", nullptr}};
    j["tests"] = Json::array();
    j["procedures"] = Json::array();
    j["diagnostics"] = Json::object();
    j["warnings"] = Json::array();
    return j;
}

void ensure_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
}

} // namespace

std::string_view to_string(Preprocessing p) noexcept {
    switch (p) {
    case Preprocessing::None:
        return "none";
    case Preprocessing::Ssa:
        return "ssa";
    case Preprocessing::Mssa:
        return "mssa";
    }
    return "unknown";
}

Preprocessing parse_preprocessing(std::string_view name) {
    for (Preprocessing p : {Preprocessing::None, Preprocessing::Ssa, Preprocessing::Mssa}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw Error("unknown preprocessing method '" + std::string(name) + "' (expected none, ssa or mssa)");
}

RankSpec RankSpec::parse(std::string_view text) {
    if (text == "auto") {
        return {Kind::Auto, 0};
    }
    if (text == "full") {
        return {Kind::Full, 0};
    }
    if (text == "signal") {
        return {Kind::Signal, 0};
    }
    const std::size_t r = parse_count(text, "rank");
    if (r < 1) {
        throw Error("rank must be at least 1");
    }
    return {Kind::Fixed, r};
}

std::string RankSpec::describe() const {
    switch (kind) {
    case Kind::Auto:
        return "auto";
    case Kind::Full:
        return "full";
    case Kind::Signal:
        return "signal";
    case Kind::Fixed:
        return std::to_string(value);
    }
    return "unknown";
}

DenoiseOutput denoise_table(const DataTable& table, const PipelineConfig& config) {
    DenoiseOutput out;
    out.table = table;
    out.diagnostics = Json::object();
    const RankSpec rank = config.rank.value_or(RankSpec{});
    out.preprocessing = Json{{"method", std::string(to_string(config.method))},
                             {"L", config.window ? Json(*config.window) : Json("floor(N/2)")},
                             {"rank", config.method == Preprocessing::None ? Json(nullptr) : Json(rank.describe())}};
    if (config.method == Preprocessing::None) {
        out.preprocessing["L"] = nullptr;
        return out;
    }
    if (table.numeric.empty()) {
        throw Error("no numeric columns to denoise");
    }

    std::optional<GroupRows> groups;
    if (config.per_group) {
        if (!config.group_column) {
            throw Error("--per-group needs --group-column");
        }
        const auto* labels = table.text_column(*config.group_column);
        if (!labels) {
            throw Error("group column '" + *config.group_column + "' not found");
        }
        groups = partition(labels->cells);
    }
    out.preprocessing["per_group"] = config.per_group;

    Json windows_used = Json::object();
    Json ranks_used = Json::object();
    std::vector<TimeSeries>& columns = out.table.numeric;

    if (config.method == Preprocessing::Ssa) {
        for (auto& column : columns) {
            const TimeSeries observed = observed_prefix(column);
            if (!groups) {
                const std::size_t window = config.window.value_or(default_window_length(observed.size()));
                const auto dec = decompose(embed(observed, window));
                const std::size_t r = resolve_rank(rank, dec, column.name());
                column = with_values(column, reconstruct_series(dec, r));
                windows_used[column.name()] = window;
                ranks_used[column.name()] = r;
                continue;
            }
            if (observed.size() != column.size()) {
                throw Error("column '" + column.name() + "' has missing values; per-group denoising needs complete columns");
            }
            Json gw = Json::object();
            Json gr = Json::object();
            TimeSeries updated = column;
            for (std::size_t g = 0; g < groups->labels.size(); ++g) {
                const auto& rows = groups->rows[g];
                const TimeSeries part(column.name(), gather(observed.values(), rows));
                const std::size_t window = config.window.value_or(default_window_length(part.size()));
                const auto dec = decompose(embed(part, window));
                const std::size_t r = resolve_rank(rank, dec, column.name() + "[" + groups->labels[g] + "]");
                updated = with_values(updated, reconstruct_series(dec, r), &rows);
                gw[groups->labels[g]] = window;
                gr[groups->labels[g]] = r;
            }
            column = updated;
            windows_used[column.name()] = gw;
            ranks_used[column.name()] = gr;
        }
    } else {
        std::vector<TimeSeries> observed;
        for (const auto& column : columns) {
            observed.push_back(observed_prefix(column));
        }
        auto run_stack = [&](const std::vector<TimeSeries>& parts, const std::string& label) {
            std::size_t shortest = parts.front().size();
            for (const auto& p : parts) {
                shortest = std::min(shortest, p.size());
            }
            const std::size_t window = config.window.value_or(default_window_length(shortest));
            const TrajectoryMatrix x = embed_multi(MultiSeries(parts), window);
            const auto dec = decompose(x);
            const std::size_t r = resolve_rank(rank, dec, label);
            return std::make_tuple(reconstruct_blocks(x, dec, r), window, r);
        };
        if (!groups) {
            auto [fitted, window, r] = run_stack(observed, "joint MSSA stack");
            for (std::size_t c = 0; c < columns.size(); ++c) {
                const auto v = fitted[c].values();
                columns[c] = with_values(columns[c], std::vector<double>(v.begin(), v.end()));
            }
            out.preprocessing["L"] = window;
            out.preprocessing["ranks_used"] = r;
        } else {
            Json gw = Json::object();
            Json gr = Json::object();
            for (std::size_t c = 0; c < columns.size(); ++c) {
                if (observed[c].size() != columns[c].size()) {
                    throw Error("column '" + columns[c].name() +
                                "' has missing values; per-group denoising needs complete columns");
                }
            }
            for (std::size_t g = 0; g < groups->labels.size(); ++g) {
                const auto& rows = groups->rows[g];
                std::vector<TimeSeries> parts;
                for (const auto& o : observed) {
                    parts.emplace_back(o.name(), gather(o.values(), rows));
                }
                auto [fitted, window, r] = run_stack(parts, "MSSA stack for group '" + groups->labels[g] + "'");
                for (std::size_t c = 0; c < columns.size(); ++c) {
                    const auto v = fitted[c].values();
                    columns[c] = with_values(columns[c], std::vector<double>(v.begin(), v.end()), &rows);
                }
                gw[groups->labels[g]] = window;
                gr[groups->labels[g]] = r;
            }
            out.preprocessing["L"] = gw;
            out.preprocessing["ranks_used"] = gr;
        }
    }
    if (config.method == Preprocessing::Ssa) {
        out.preprocessing["windows_used"] = windows_used;
        out.preprocessing["ranks_used"] = ranks_used;
        if (config.window) {
            out.preprocessing["L"] = *config.window;
        }
    }

    // Goodness of denoising and separability of fit and residual, per
    // variable over the whole column.
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const std::string& name = columns[c].name();
        try {
            const TimeSeries observed = observed_prefix(table.numeric[c]);
            const auto fitted = columns[c].raw_values().first(observed.size());
            const auto y = observed.values();
            std::vector<double> residual(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) {
                residual[i] = y[i] - fitted[i];
            }
            const std::size_t window =
                std::min(config.window.value_or(default_window_length(y.size())), y.size() - 1);
            Json d;
            const DenoisingScore score = goodness_of_denoising(y, fitted);
            d["goodness_db"] = score.affine_fit ? Json("inf (affine fit)") : Json(score.goodness_db);
            d["snr"] = score.snr;
            d["roughness"] = score.roughness;
            d["w_correlation"] = w_correlation(fitted, residual, window);
            out.diagnostics[name] = d;
        } catch (const Error& e) {
            out.diagnostics[name] = Json{{"error", e.what()}};
            out.warnings.push_back("diagnostics for '" + name + "' unavailable: " + e.what());
        }
    }
    return out;
}

TestOutput test_groups(const DataTable& table, const std::vector<std::string>& labels, const PipelineConfig& config) {
    if (config.procedures.empty()) {
        throw Error("no multiple test procedure selected");
    }
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw Error("alpha must lie in (0, 1)");
    }
    if (labels.size() != table.rows()) {
        throw Error("group labels cover " + std::to_string(labels.size()) + " of " + std::to_string(table.rows()) +
                    " rows");
    }
    const GroupRows groups = partition(labels);
    if (groups.labels.size() < 2) {
        throw Error("at least two groups are required, found " + std::to_string(groups.labels.size()));
    }
    if (config.test == TestKind::TwoSampleT && groups.labels.size() != 2) {
        throw Error("the two-sample t test needs exactly two groups, found " + std::to_string(groups.labels.size()));
    }

    TestOutput out;
    if (config.test == TestKind::OneWayF) {
        out.warnings.push_back("F tests use (k-1, N-k) degrees of freedom");
    }
    for (const auto& column : table.numeric) {
        std::vector<GroupedSample::Group> parts;
        for (std::size_t g = 0; g < groups.labels.size(); ++g) {
            GroupedSample::Group part{groups.labels[g], {}};
            for (std::size_t r : groups.rows[g]) {
                if (!column.is_missing(r)) {
                    part.values.push_back(column.raw_values()[r]);
                }
            }
            parts.push_back(std::move(part));
        }
        try {
            if (config.test == TestKind::TwoSampleT) {
                out.tests.push_back(two_sample_t(parts[0].values, parts[1].values, column.name()));
            } else {
                out.tests.push_back(one_way_f(GroupedSample(column.name(), std::move(parts))));
            }
        } catch (const Error& e) {
            out.warnings.push_back("variable '" + column.name() + "' excluded: " + e.what());
        }
    }
    if (out.tests.empty()) {
        out.warnings.push_back("no variable could be tested");
        return out;
    }
    std::vector<double> p;
    for (const auto& t : out.tests) {
        p.push_back(t.p_value);
    }
    for (Procedure proc : config.procedures) {
        out.procedures.push_back(run_procedure(proc, p, config.alpha));
    }
    return out;
}

CommandOutcome cmd_denoise(const PipelineConfig& config) {
    const DataTable table = read_table(config.input, csv_options(config));
    DenoiseOutput d = denoise_table(table, config);
    ensure_output_dir(config.output_dir);

    CommandOutcome outcome;
    const fs::path csv = config.output_dir / "denoised.csv";
    if (config.method == Preprocessing::None) {
        fs::copy_file(config.input, csv, fs::copy_options::overwrite_existing);
    } else {
        write_table(d.table, csv);
    }
    Json report = report_skeleton(config.input.stem().string());
    report["preprocessing"] = d.preprocessing;
    report["diagnostics"] = d.diagnostics;
    report["warnings"] = d.warnings;
    const fs::path json = config.output_dir / "diagnostics.json";
    write_json(json, report);
    outcome.files = {csv, json};
    outcome.warnings = d.warnings;
    outcome.report = std::move(report);
    return outcome;
}

CommandOutcome cmd_test(const PipelineConfig& config) {
    ensure_output_dir(config.output_dir);
    CommandOutcome outcome;
    Json report = report_skeleton(config.input.stem().string());
    std::vector<std::string> warnings;

    // Preprocessing writes its CSV, and the test stage reads only that file.
    auto preprocess = [&](const fs::path& input, const std::string& suffix, Json& diagnostics) -> fs::path {
        if (config.method == Preprocessing::None) {
            return input;
        }
        const DataTable raw = read_table(input, csv_options(config));
        DenoiseOutput d = denoise_table(raw, config);
        const fs::path csv = config.output_dir / ("denoised" + suffix + ".csv");
        write_table(d.table, csv);
        outcome.files.push_back(csv);
        report["preprocessing"] = d.preprocessing;
        for (auto& [k, v] : d.diagnostics.items()) {
            diagnostics[k + suffix] = v;
        }
        warnings.insert(warnings.end(), d.warnings.begin(), d.warnings.end());
        return csv;
    };

    Json diagnostics = Json::object();
    DataTable table;
    std::vector<std::string> labels;
    if (config.input_b) {
        const std::string label_a = config.input.stem().string();
        std::string label_b = config.input_b->stem().string();
        if (label_b == label_a) {
            label_b += "_b";
        }
        const DataTable a = read_table(preprocess(config.input, "_" + label_a, diagnostics), csv_options(config));
        const DataTable b = read_table(preprocess(*config.input_b, "_" + label_b, diagnostics), csv_options(config));
        for (const auto& col_a : a.numeric) {
            const TimeSeries* col_b = b.numeric_column(col_a.name());
            if (!col_b) {
                warnings.push_back("variable '" + col_a.name() + "' missing from the second file; skipped");
                continue;
            }
            std::vector<double> values(col_a.raw_values().begin(), col_a.raw_values().end());
            values.insert(values.end(), col_b->raw_values().begin(), col_b->raw_values().end());
            std::vector<bool> missing = col_a.missing_mask();
            missing.insert(missing.end(), col_b->missing_mask().begin(), col_b->missing_mask().end());
            table.header.push_back(col_a.name());
            table.numeric.emplace_back(col_a.name(), std::move(values), std::move(missing));
        }
        if (table.numeric.empty()) {
            throw Error("the two input files share no numeric column");
        }
        labels.assign(a.rows(), label_a);
        labels.insert(labels.end(), b.rows(), label_b);
        report["dataset"] = label_a + "+" + label_b;
    } else {
        if (!config.group_column) {
            throw Error("grouping needs --group-column or a second input file (--input-b)");
        }
        table = read_table(preprocess(config.input, "", diagnostics), csv_options(config));
        const TextColumn* group = table.text_column(*config.group_column);
        if (!group) {
            throw Error("group column '" + *config.group_column + "' not found");
        }
        labels = group->cells;
    }
    if (config.method != Preprocessing::None) {
        report["preprocessing"]["order"] = "denoise full series, then group";
    }

    TestOutput t = test_groups(table, labels, config);
    warnings.insert(warnings.end(), t.warnings.begin(), t.warnings.end());
    for (const auto& r : t.tests) {
        report["tests"].push_back(test_json(r));
    }
    for (const auto& p : t.procedures) {
        report["procedures"].push_back(procedure_json(p, t.tests));
    }
    report["diagnostics"] = diagnostics;
    report["warnings"] = warnings;

    const fs::path json = config.output_dir / "test_report.json";
    write_json(json, report);
    outcome.files.push_back(json);
    outcome.warnings = warnings;
    outcome.report = std::move(report);
    return outcome;
}

CommandOutcome cmd_impute(const PipelineConfig& config) {
    const DataTable table = read_table(config.input, csv_options(config));
    std::optional<std::size_t> rank;
    if (config.rank) {
        if (config.rank->kind == RankSpec::Kind::Fixed) {
            rank = config.rank->value;
        } else if (config.rank->kind != RankSpec::Kind::Auto) {
            throw Error("impute accepts rank 'auto' or an explicit count");
        }
    }
    bool any_missing = false;
    for (const auto& c : table.numeric) {
        const std::size_t n = c.effective_length();
        any_missing = any_missing || n == 0 || std::any_of(c.missing_mask().begin(), c.missing_mask().begin() + static_cast<std::ptrdiff_t>(n), [](bool m) { return m; });
    }
    if (!any_missing) {
        throw Error(config.input.string() + ": nothing to impute (no missing values)");
    }

    DataTable out = table;
    Json report;
    report["dataset"] = config.input.stem().string();
    report["tolerance"] = config.tolerance;
    report["max_iterations"] = config.max_iterations;
    report["rank"] = rank ? Json(*rank) : Json("auto");
    Json variables = Json::object();
    std::vector<std::string> warnings;
    for (auto& column : out.numeric) {
        Json v;
        const std::size_t n = column.effective_length();
        try {
            if (n == 0) {
                throw Error("series '" + column.name() + "': all entries are missing");
            }
            std::vector<double> head(column.raw_values().begin(), column.raw_values().begin() + static_cast<std::ptrdiff_t>(n));
            std::vector<bool> mask(column.missing_mask().begin(), column.missing_mask().begin() + static_cast<std::ptrdiff_t>(n));
            const TimeSeries prefix(column.name(), std::move(head), std::move(mask));
            v["missing"] = prefix.missing_count();
            if (!prefix.has_missing()) {
                v["status"] = "complete";
                variables[column.name()] = v;
                continue;
            }
            const std::size_t window = config.window.value_or(default_window_length(n));
            ImputationOptions opts;
            opts.rank = rank;
            opts.tolerance = config.tolerance;
            opts.max_iterations = config.max_iterations;
            const ImputationResult r = impute(prefix, window, opts);
            const auto filled = r.series.values();
            column = with_values(column, std::vector<double>(filled.begin(), filled.end()));
            v["status"] = "imputed";
            v["window"] = window;
            v["iterations"] = r.iterations;
            v["converged"] = r.converged;
            if (!r.converged) {
                warnings.push_back("'" + column.name() + "' did not converge within " +
                                   std::to_string(config.max_iterations) + " iterations");
            }
        } catch (const Error& e) {
            v["status"] = "error";
            v["error"] = e.what();
            warnings.push_back(e.what());
        }
        variables[column.name()] = v;
    }
    report["variables"] = variables;
    report["warnings"] = warnings;

    ensure_output_dir(config.output_dir);
    const fs::path csv = config.output_dir / "imputed.csv";
    const fs::path json = config.output_dir / "imputation.json";
    write_table(out, csv);
    write_json(json, report);
    CommandOutcome outcome;
    outcome.files = {csv, json};
    outcome.warnings = warnings;
    outcome.report = std::move(report);
    return outcome;
}

CommandOutcome cmd_simulate(const PipelineConfig& config) {
    std::vector<SignalKind> kinds;
    for (const auto& m : config.models) {
        if (m == "all") {
            kinds.insert(kinds.end(), std::begin(kAllSignalKinds), std::end(kAllSignalKinds));
        } else {
            kinds.push_back(parse_signal_kind(m));
        }
    }
    if (kinds.empty()) {
        throw Error("no simulation model selected");
    }
    RankPolicy policy = RankPolicy::signal();
    if (config.rank) {
        switch (config.rank->kind) {
        case RankSpec::Kind::Signal:
            break;
        case RankSpec::Kind::Auto:
            policy = RankPolicy::cumulative_share();
            break;
        case RankSpec::Kind::Fixed:
            policy = RankPolicy::fixed_rank(config.rank->value);
            break;
        case RankSpec::Kind::Full:
            throw Error("simulate accepts rank 'signal', 'auto' or an explicit count");
        }
    }

    ensure_output_dir(config.output_dir);
    CommandOutcome outcome;
    Json all = Json::array();
    for (SignalKind kind : kinds) {
        StudyConfig sc;
        sc.kind = kind;
        sc.length = config.length;
        sc.window_lengths = config.windows;
        sc.replications = config.replications;
        sc.sigma = config.sigma;
        sc.seed = config.seed;
        sc.rank = policy;
        sc.threads = config.threads;
        const SimReport r = run_study(sc);

        Json j;
        j["model"] = std::string(to_string(r.kind));
        j["length"] = r.length;
        j["sigma"] = r.sigma;
        j["seed"] = r.seed;
        j["replications"] = r.replications;
        j["rank_policy"] = r.rank_policy;
        Json windows = Json::array();
        std::string csv = "window,mean_rmse,mean_mae\n";
        for (std::size_t w = 0; w < r.window_lengths.size(); ++w) {
            windows.push_back(Json{{"window", r.window_lengths[w]},
                                   {"mean_rmse", r.mean_rmse[w]},
                                   {"mean_mae", r.mean_mae[w]}});
            csv += std::to_string(r.window_lengths[w]) + "," + format_number(r.mean_rmse[w]) + "," +
                   format_number(r.mean_mae[w]) + "\n";
        }
        j["windows"] = windows;

        const std::string stem = "simulate_" + std::string(to_string(kind));
        const fs::path json_path = config.output_dir / (stem + ".json");
        const fs::path csv_path = config.output_dir / (stem + ".csv");
        write_json(json_path, j);
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        out << csv;
        if (!out) {
            throw Error("write to '" + csv_path.string() + "' failed");
        }
        outcome.files.push_back(csv_path);
        outcome.files.push_back(json_path);
        all.push_back(std::move(j));
    }
    outcome.report = std::move(all);
    return outcome;
}

std::vector<std::string> config_file_arguments(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file '" + path.string() + "'");
    }
    std::vector<std::string> args;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        while (!key.empty() && key.front() == '-') {
            key.erase(0, 1);
        }
        std::replace(key.begin(), key.end(), '_', '-');
        if (key.empty()) {
            throw Error(path.string() + ":" + std::to_string(line_no) + ": empty key");
        }
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

} // namespace ssamt
