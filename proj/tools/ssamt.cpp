// Command line front end: denoise, impute, test and simulate.
#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssamt/commands.hpp"
#include "ssamt/error.hpp"

namespace {

using ssamt::PipelineConfig;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        std::string item = text.substr(start, end - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::size_t to_size(const std::string& text, const char* what) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ssamt::Error(std::string("invalid ") + what + " '" + text + "'");
    }
    return v;
}

struct RawOptions {
    std::string input;
    std::string input_b;
    std::string output_dir = ".";
    std::string method = "none";
    std::string window;
    std::string rank;
    std::string test = "t";
    std::string procedures = "bonferroni,holm,sidak_ss,sidak_sd,hochberg";
    double alpha = 0.05;
    std::string group_column;
    std::string model = "all";
    std::size_t replications = 100;
    double sigma = 1.0;
    std::uint64_t seed = 1;
    bool per_group = false;
    std::size_t length = 100;
    std::size_t threads = 1;
    double tolerance = 1e-6;
    std::size_t max_iterations = 100;
    bool index_column = false;
    std::string config;
};

PipelineConfig to_config(const RawOptions& raw, bool simulate) {
    PipelineConfig c;
    c.input = raw.input;
    if (!raw.input_b.empty()) {
        c.input_b = raw.input_b;
    }
    c.output_dir = raw.output_dir;
    c.skip_index_column = raw.index_column;
    c.method = ssamt::parse_preprocessing(raw.method);
    if (!raw.window.empty()) {
        if (simulate) {
            c.windows.clear();
            for (const auto& w : split_list(raw.window)) {
                c.windows.push_back(to_size(w, "window length"));
            }
        } else {
            c.window = to_size(raw.window, "window length");
        }
    }
    if (!raw.rank.empty()) {
        c.rank = ssamt::RankSpec::parse(raw.rank);
    }
    c.per_group = raw.per_group;
    if (raw.test == "t") {
        c.test = ssamt::TestKind::TwoSampleT;
    } else if (raw.test == "f") {
        c.test = ssamt::TestKind::OneWayF;
    } else {
        throw ssamt::Error("unknown test '" + raw.test + "' (expected t or f)");
    }
    c.procedures.clear();
    for (const auto& p : split_list(raw.procedures)) {
        c.procedures.push_back(ssamt::parse_procedure(p));
    }
    c.alpha = raw.alpha;
    if (!raw.group_column.empty()) {
        c.group_column = raw.group_column;
    }
    c.tolerance = raw.tolerance;
    c.max_iterations = raw.max_iterations;
    c.models = split_list(raw.model);
    c.length = raw.length;
    c.replications = raw.replications;
    c.sigma = raw.sigma;
    c.seed = raw.seed;
    c.threads = raw.threads;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SSA denoising and multiple testing pipeline", "ssamt"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RawOptions raw;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", raw.config, "key=value file; command line flags take precedence");
        sub->add_option("--output-dir", raw.output_dir, "Directory for output files")->capture_default_str();
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", raw.input, "Input CSV")->required();
        sub->add_flag("--index-column", raw.index_column, "Ignore the first column (row index)");
    };
    auto add_denoise = [&](CLI::App* sub) {
        sub->add_option("--method", raw.method, "none, ssa or mssa")->capture_default_str();
        sub->add_option("--window", raw.window, "Window length L (default floor(N/2))");
        sub->add_option("--rank", raw.rank, "auto, full or a component count");
        sub->add_flag("--per-group", raw.per_group, "Denoise within the groups of --group-column");
        sub->add_option("--group-column", raw.group_column, "Column holding group labels");
    };

    auto* denoise = app.add_subcommand("denoise", "Denoise every numeric column");
    add_common(denoise);
    add_input(denoise);
    add_denoise(denoise);

    auto* impute = app.add_subcommand("impute", "Fill missing values by iterative SSA");
    add_common(impute);
    add_input(impute);
    impute->add_option("--window", raw.window, "Window length L (default floor(N/2))");
    impute->add_option("--rank", raw.rank, "auto or a component count");
    impute->add_option("--tol", raw.tolerance, "Convergence tolerance")->capture_default_str();
    impute->add_option("--max-iter", raw.max_iterations, "Iteration cap")->capture_default_str();

    auto* test = app.add_subcommand("test", "Per-variable group tests with multiple testing control");
    add_common(test);
    add_input(test);
    add_denoise(test);
    test->add_option("--input-b", raw.input_b, "Second group as its own CSV file");
    test->add_option("--test", raw.test, "t (two-sample) or f (one-way ANOVA)")->capture_default_str();
    test->add_option("--procedures", raw.procedures, "Comma-separated procedures")->capture_default_str();
    test->add_option("--alpha", raw.alpha, "Family-wise error level")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo denoising study");
    add_common(simulate);
    simulate->add_option("--model", raw.model, "Comma-separated models or 'all'")->capture_default_str();
    simulate->add_option("--window", raw.window, "Comma-separated window lengths (default 50)");
    simulate->add_option("--rank", raw.rank, "signal, auto or a component count (default signal)");
    simulate->add_option("--length", raw.length, "Series length")->capture_default_str();
    simulate->add_option("--replications", raw.replications, "Replications")->capture_default_str();
    simulate->add_option("--sigma", raw.sigma, "Noise standard deviation")->capture_default_str();
    simulate->add_option("--seed", raw.seed, "Base seed")->capture_default_str();
    simulate->add_option("--threads", raw.threads, "Worker threads")->capture_default_str();

    // Config file entries go right after the subcommand so that explicit
    // flags, which come later, win under TakeLast.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i].rfind("--config=", 0) == 0) {
                path = args[i].substr(9);
            } else if (args[i] == "--config" && i + 1 < args.size()) {
                path = args[i + 1];
            } else {
                continue;
            }
            const auto extra = ssamt::config_file_arguments(path);
            if (!args.empty()) {
                args.insert(args.begin() + 1, extra.begin(), extra.end());
            }
            break;
        }
    } catch (const ssamt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        ssamt::CommandOutcome outcome;
        if (*denoise) {
            outcome = ssamt::cmd_denoise(to_config(raw, false));
        } else if (*impute) {
            outcome = ssamt::cmd_impute(to_config(raw, false));
        } else if (*test) {
            outcome = ssamt::cmd_test(to_config(raw, false));
        } else {
            outcome = ssamt::cmd_simulate(to_config(raw, true));
        }
        for (const auto& w : outcome.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        for (const auto& f : outcome.files) {
            std::cout << f.string() << '\n';
        }
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
