#ifndef BETTING_CLI_HPP
#define BETTING_CLI_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "betting/evalloss.hpp"
#include "betting/simgen.hpp"

namespace betting {

// Invalid or inconsistent user input; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GaussianSpec {
    double mean = 0.0;
    double sd = 1.0;
};

// One oracle segment: n steps of N(mean, sd); the last segment extends to
// the end of the dataset.
struct OracleSegment {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 1.0;
};

struct ExperimentConfig {
    // Exactly one of dataset_path / inline_spec feeds the run.
    std::optional<std::string> dataset_path;
    std::optional<ChangepointSpec> inline_spec;

    enum class Kind { simple, mean };
    Kind martingale_kind = Kind::simple;
    double jump_rate = 0.01;
    std::vector<double> jump_rates{1e-3, 1e-2, 1e-1, 1.0};
    double range = 1.0;
    GaussianSpec base;
    std::vector<OracleSegment> oracle;  // empty: derived from inline spec, else = base
    bool loss_base10 = true;
    std::string output = "trajectory";
    std::optional<std::size_t> changepoint_index;

    static ExperimentConfig from_json(const nlohmann::json& j);
    void validate() const;  // throws ConfigError
};

struct RunResult {
    LossLedger ledger;
    double final_log10_capital = 0.0;
    double min_capital = 0.0;
    std::optional<double> capital_at_changepoint;
};

RunResult run_configured(const ExperimentConfig& config,
                         const std::vector<double>& observations);

void write_trajectory_csv(std::ostream& out, const LossLedger& ledger);
nlohmann::json summarize(const ExperimentConfig& config, const RunResult& result);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Built-in invariant checks for `selftest`: the two-step hand trace,
// enhanced-density normalization, the loss-gap identity, and the Mean
// Jumper floor.
std::vector<CheckResult> selftest();

}  // namespace betting

#endif
