#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "betting/cli.hpp"
#include "betting/simgen.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitInvariantFailure = 3;

std::optional<std::uint64_t> seed_override() {
    if (const char* env = std::getenv("BETTING_ENHANCER_SEED")) {
        return std::stoull(env);
    }
    return std::nullopt;
}

double block_mean(const std::vector<double>& values, std::size_t begin, std::size_t end) {
    if (end <= begin) {
        return 0.0;
    }
    return std::accumulate(values.begin() + begin, values.begin() + end, 0.0) /
           static_cast<double>(end - begin);
}

int cmd_generate(const betting::ChangepointSpec& spec, const std::string& output) {
    const auto values = betting::generate(spec);
    std::ofstream out(output);
    if (!out) {
        std::cerr << "error: cannot open " << output << " for writing\n";
        return kExitConfigError;
    }
    betting::write_dataset(out, spec, values);
    std::cout << "wrote " << values.size() << " observations to " << output << "\n"
              << "pre-block mean:  " << block_mean(values, 0, spec.n_pre) << "\n"
              << "post-block mean: " << block_mean(values, spec.n_pre, values.size())
              << "\n";
    return 0;
}

int cmd_run(betting::ExperimentConfig config) {
    config.validate();

    std::vector<double> observations;
    if (config.dataset_path) {
        std::ifstream in(*config.dataset_path);
        if (!in) {
            throw betting::ConfigError("cannot open dataset " + *config.dataset_path);
        }
        auto file = betting::read_dataset_file(in);
        observations = std::move(file.values);
        // The header records how the data was generated; use it as the
        // oracle and changepoint unless the config says otherwise.
        if (file.spec) {
            const auto& s = *file.spec;
            if (config.oracle.empty()) {
                config.oracle = {{s.n_pre, s.mean_pre, s.sd_pre},
                                 {s.n_post, s.mean_post, s.sd_post}};
            }
            if (!config.changepoint_index) {
                config.changepoint_index = s.n_pre;
            }
        }
    } else {
        observations = betting::generate(*config.inline_spec);
    }

    const auto result = betting::run_configured(config, observations);

    const std::string csv_path = config.output + ".csv";
    std::ofstream csv(csv_path);
    if (!csv) {
        throw betting::ConfigError("cannot open " + csv_path + " for writing");
    }
    betting::write_trajectory_csv(csv, result.ledger);

    const auto summary = betting::summarize(config, result);
    const std::string json_path = config.output + ".json";
    std::ofstream json_out(json_path);
    if (!json_out) {
        throw betting::ConfigError("cannot open " + json_path + " for writing");
    }
    json_out << summary.dump(2) << "\n";

    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_selftest() {
    const auto results = betting::selftest();
    bool all_passed = true;
    for (const auto& check : results) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << " ("
                  << check.detail << ")\n";
        all_passed = all_passed && check.passed;
    }
    return all_passed ? 0 : kExitInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Test a probabilistic forecaster by betting against it and "
                 "enhance it with the accumulated evidence"};
    app.require_subcommand(1);

    // generate
    betting::ChangepointSpec spec;
    std::string gen_output = "dataset.txt";
    auto* generate = app.add_subcommand("generate", "Write a changepoint dataset");
    generate->add_option("--n-pre", spec.n_pre, "Observations before the changepoint");
    generate->add_option("--n-post", spec.n_post, "Observations after the changepoint");
    generate->add_option("--mean-pre", spec.mean_pre, "Pre-changepoint mean");
    generate->add_option("--sd-pre", spec.sd_pre, "Pre-changepoint stddev");
    generate->add_option("--mean-post", spec.mean_post, "Post-changepoint mean");
    generate->add_option("--sd-post", spec.sd_post, "Post-changepoint stddev");
    generate->add_option("--seed", spec.seed, "RNG seed");
    generate->add_option("--output", gen_output, "Output path");

    // run
    nlohmann::json run_json = nlohmann::json::object();
    std::string config_path;
    std::string dataset_path;
    std::string kind;
    double jump_rate = -1.0, range = -1.0, base_mean = 0.0, base_sd = -1.0;
    std::vector<double> jump_rates;
    std::string run_output;
    std::int64_t changepoint_index = -1;
    bool inline_dataset = false;
    bool natural_log = false;
    betting::ChangepointSpec run_spec;
    auto* run = app.add_subcommand("run", "Run an experiment, emit CSV + summary JSON");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--dataset", dataset_path, "Dataset file from `generate`");
    run->add_flag("--inline-changepoint", inline_dataset,
                  "Generate the changepoint dataset in-process");
    run->add_option("--n-pre", run_spec.n_pre, "Inline: observations before the changepoint");
    run->add_option("--n-post", run_spec.n_post, "Inline: observations after");
    run->add_option("--mean-pre", run_spec.mean_pre, "Inline: pre mean");
    run->add_option("--sd-pre", run_spec.sd_pre, "Inline: pre stddev");
    run->add_option("--mean-post", run_spec.mean_post, "Inline: post mean");
    run->add_option("--sd-post", run_spec.sd_post, "Inline: post stddev");
    run->add_option("--seed", run_spec.seed, "Inline: RNG seed");
    run->add_option("--martingale-kind", kind, "simple|mean");
    run->add_option("--jump-rate", jump_rate, "Simple Jumper jump rate J");
    run->add_option("--jump-rates", jump_rates, "Mean Jumper jump-rate set (must contain 1)");
    run->add_option("--range", range, "Calibrator range E in (0,2]");
    run->add_option("--base-mean", base_mean, "Base forecast mean");
    run->add_option("--base-sd", base_sd, "Base forecast stddev");
    run->add_flag("--natural-log", natural_log, "Score losses in natural log instead of log10");
    run->add_option("--output", run_output, "Output stem (.csv and .json appended)");
    run->add_option("--changepoint-index", changepoint_index,
                    "Report capital at this step in the summary");

    auto* selftest = app.add_subcommand("selftest", "Run built-in invariant checks");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (generate->parsed()) {
            if (const auto seed = seed_override()) {
                spec.seed = *seed;
            }
            return cmd_generate(spec, gen_output);
        }
        if (run->parsed()) {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) {
                    throw betting::ConfigError("cannot open config " + config_path);
                }
                run_json = nlohmann::json::parse(in);
            }
            auto config = betting::ExperimentConfig::from_json(run_json);
            // Command-line flags override the config file.
            if (!dataset_path.empty()) {
                config.dataset_path = dataset_path;
                config.inline_spec.reset();
            }
            if (inline_dataset || run->count("--n-pre") || run->count("--n-post")) {
                config.inline_spec = run_spec;
                config.dataset_path.reset();
            }
            if (!kind.empty()) {
                if (kind == "simple") {
                    config.martingale_kind = betting::ExperimentConfig::Kind::simple;
                } else if (kind == "mean") {
                    config.martingale_kind = betting::ExperimentConfig::Kind::mean;
                } else {
                    throw betting::ConfigError("--martingale-kind must be simple or mean");
                }
            }
            if (jump_rate > 0.0) config.jump_rate = jump_rate;
            if (!jump_rates.empty()) {
                config.jump_rates = jump_rates;
                config.martingale_kind = betting::ExperimentConfig::Kind::mean;
            }
            if (range > 0.0) config.range = range;
            if (run->count("--base-mean")) config.base.mean = base_mean;
            if (base_sd > 0.0) config.base.sd = base_sd;
            if (natural_log) config.loss_base10 = false;
            if (!run_output.empty()) config.output = run_output;
            if (changepoint_index >= 0) {
                config.changepoint_index = static_cast<std::size_t>(changepoint_index);
            }
            if (const auto seed = seed_override(); seed && config.inline_spec) {
                config.inline_spec->seed = *seed;
            }
            return cmd_run(std::move(config));
        }
        return cmd_selftest();
    } catch (const betting::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariantFailure;
    }
}
