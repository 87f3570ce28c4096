#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ssamt/csv.hpp"
#include "ssamt/hypothesis_tests.hpp"
#include "ssamt/mtp.hpp"

namespace ssamt {

using Json = nlohmann::ordered_json;

enum class Preprocessing { None, Ssa, Mssa };

std::string_view to_string(Preprocessing p) noexcept;
Preprocessing parse_preprocessing(std::string_view name);

/// Number of components kept when denoising: the cumulative eigenvalue rule
/// ("auto"), every nonzero component ("full"), the noise-free signal rank
/// ("signal", simulation only) or an explicit count.
struct RankSpec {
    enum class Kind { Auto, Full, Signal, Fixed };
    Kind kind = Kind::Auto;
    std::size_t value = 0;

    static RankSpec parse(std::string_view text);
    std::string describe() const;
};

struct PipelineConfig {
    std::filesystem::path input;
    /// Second file for two-file group designs; each file is one group.
    std::optional<std::filesystem::path> input_b;
    std::filesystem::path output_dir = ".";
    bool skip_index_column = false;

    Preprocessing method = Preprocessing::None;
    std::optional<std::size_t> window;
    /// Unset means the command's default: "auto" for denoise/impute/test,
    /// "signal" for simulate.
    std::optional<RankSpec> rank;
    /// Stack (MSSA) or denoise (SSA) within the rows of each group.
    bool per_group = false;

    TestKind test = TestKind::TwoSampleT;
    std::vector<Procedure> procedures{std::begin(kAllProcedures), std::end(kAllProcedures)};
    double alpha = 0.05;
    std::optional<std::string> group_column;

    double tolerance = 1e-6;
    std::size_t max_iterations = 100;

    std::vector<std::string> models = {"all"};
    std::size_t length = 100;
    std::vector<std::size_t> windows = {50};
    std::size_t replications = 100;
    double sigma = 1.0;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

struct CommandOutcome {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
    Json report;
};

/// Result of the preprocessing stage on an in-memory table.
struct DenoiseOutput {
    DataTable table;
    Json preprocessing;
    Json diagnostics;
    std::vector<std::string> warnings;
};

DenoiseOutput denoise_table(const DataTable& table, const PipelineConfig& config);

/// Marginal tests plus the requested procedures on a table whose rows are
/// assigned to groups by `labels` (one label per row).
struct TestOutput {
    std::vector<TestResult> tests;
    std::vector<MtpReport> procedures;
    std::vector<std::string> warnings;
};

TestOutput test_groups(const DataTable& table, const std::vector<std::string>& labels, const PipelineConfig& config);

/// denoise: writes <output-dir>/denoised.csv and diagnostics.json.
CommandOutcome cmd_denoise(const PipelineConfig& config);
/// test: optional preprocessing through denoised CSV files, then writes
/// <output-dir>/test_report.json.
CommandOutcome cmd_test(const PipelineConfig& config);
/// impute: writes <output-dir>/imputed.csv and imputation.json.
CommandOutcome cmd_impute(const PipelineConfig& config);
/// simulate: writes simulate_<model>.csv and simulate_<model>.json per model.
CommandOutcome cmd_simulate(const PipelineConfig& config);

/// Flat key=value configuration (blank lines and '#' comments ignored),
/// converted to "--key value" arguments.
std::vector<std::string> config_file_arguments(const std::filesystem::path& path);

} // namespace ssamt
