#include "betting/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace betting {

namespace {

ChangepointSpec changepoint_from_json(const nlohmann::json& j) {
    ChangepointSpec spec;
    spec.n_pre = j.value("n_pre", spec.n_pre);
    spec.n_post = j.value("n_post", spec.n_post);
    spec.mean_pre = j.value("mean_pre", spec.mean_pre);
    spec.sd_pre = j.value("sd_pre", spec.sd_pre);
    spec.mean_post = j.value("mean_post", spec.mean_post);
    spec.sd_post = j.value("sd_post", spec.sd_post);
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

ForecastPolicy constant_policy(const GaussianSpec& g) {
    auto forecast = std::make_shared<GaussianForecast>(g.mean, g.sd);
    return [forecast](std::size_t) { return forecast; };
}

ForecastPolicy segment_policy(const std::vector<OracleSegment>& segments) {
    std::vector<std::size_t> bounds;
    std::vector<std::shared_ptr<const ContinuousForecast>> forecasts;
    std::size_t upto = 0;
    for (const auto& seg : segments) {
        upto += seg.n;
        bounds.push_back(upto);
        forecasts.push_back(std::make_shared<GaussianForecast>(seg.mean, seg.sd));
    }
    return [bounds, forecasts](std::size_t step) {
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
            if (step < bounds[i]) {
                return forecasts[i];
            }
        }
        return forecasts.back();
    };
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    if (j.contains("dataset")) {
        config.dataset_path = j.at("dataset").get<std::string>();
    }
    if (j.contains("changepoint")) {
        config.inline_spec = changepoint_from_json(j.at("changepoint"));
    }
    if (j.contains("martingale_kind")) {
        const auto kind = j.at("martingale_kind").get<std::string>();
        if (kind == "simple") {
            config.martingale_kind = Kind::simple;
        } else if (kind == "mean") {
            config.martingale_kind = Kind::mean;
        } else {
            throw ConfigError("martingale_kind must be 'simple' or 'mean'");
        }
    }
    config.jump_rate = j.value("jump_rate", config.jump_rate);
    if (j.contains("jump_rates")) {
        config.jump_rates = j.at("jump_rates").get<std::vector<double>>();
    }
    config.range = j.value("range", config.range);
    if (j.contains("base")) {
        config.base.mean = j.at("base").value("mean", 0.0);
        config.base.sd = j.at("base").value("sd", 1.0);
    }
    if (j.contains("oracle")) {
        for (const auto& seg : j.at("oracle")) {
            config.oracle.push_back({seg.value("n", std::size_t{0}),
                                     seg.value("mean", 0.0), seg.value("sd", 1.0)});
        }
    }
    config.loss_base10 = j.value("loss_base10", true);
    config.output = j.value("output", config.output);
    if (j.contains("changepoint_index")) {
        config.changepoint_index = j.at("changepoint_index").get<std::size_t>();
    }
    return config;
}

void ExperimentConfig::validate() const {
    if (dataset_path.has_value() == inline_spec.has_value()) {
        throw ConfigError("exactly one of a dataset path or an inline changepoint spec is required");
    }
    if (inline_spec && !(inline_spec->sd_pre > 0.0 && inline_spec->sd_post > 0.0)) {
        throw ConfigError("changepoint standard deviations must be positive");
    }
    if (!(jump_rate > 0.0 && jump_rate <= 1.0)) {
        throw ConfigError("jump rate must lie in (0,1]");
    }
    if (!(range > 0.0 && range <= 2.0)) {
        throw ConfigError("range must lie in (0,2]");
    }
    if (martingale_kind == Kind::mean) {
        if (jump_rates.empty() ||
            std::none_of(jump_rates.begin(), jump_rates.end(),
                         [](double v) { return v == 1.0; })) {
            throw ConfigError("jump-rate set must be nonempty and contain 1");
        }
        for (double v : jump_rates) {
            if (!(v > 0.0 && v <= 1.0)) {
                throw ConfigError("jump rates must lie in (0,1]");
            }
        }
    }
    if (!(base.sd > 0.0)) {
        throw ConfigError("base standard deviation must be positive");
    }
    for (const auto& seg : oracle) {
        if (!(seg.sd > 0.0)) {
            throw ConfigError("oracle standard deviations must be positive");
        }
    }
}

RunResult run_configured(const ExperimentConfig& config,
                         const std::vector<double>& observations) {
    const auto loss_base =
        config.loss_base10 ? LogBase::ten : LogBase::natural;
    const auto base_policy = constant_policy(config.base);

    ForecastPolicy oracle_policy;
    if (!config.oracle.empty()) {
        oracle_policy = segment_policy(config.oracle);
    } else if (config.inline_spec) {
        const auto& s = *config.inline_spec;
        oracle_policy = segment_policy(
            {{s.n_pre, s.mean_pre, s.sd_pre}, {s.n_post, s.mean_post, s.sd_post}});
    } else {
        oracle_policy = base_policy;
    }

    RunResult result;
    if (config.martingale_kind == ExperimentConfig::Kind::simple) {
        SimpleJumper martingale(config.jump_rate, config.range);
        result.ledger = run_experiment(std::span(observations), base_policy,
                                       martingale, oracle_policy, loss_base);
        result.final_log10_capital = martingale.log10_capital();
    } else {
        MeanJumper martingale(config.jump_rates, config.range);
        result.ledger = run_experiment(std::span(observations), base_policy,
                                       martingale, oracle_policy, loss_base);
        result.final_log10_capital = martingale.log10_capital();
    }

    result.min_capital = std::numeric_limits<double>::infinity();
    for (const auto& row : result.ledger.per_step) {
        result.min_capital = std::min(result.min_capital,
                                      std::pow(10.0, row.log10_capital));
    }
    std::optional<std::size_t> cp = config.changepoint_index;
    if (!cp && config.inline_spec) {
        cp = config.inline_spec->n_pre;
    }
    if (cp && *cp >= 1 && *cp <= result.ledger.per_step.size()) {
        result.capital_at_changepoint =
            std::pow(10.0, result.ledger.per_step[*cp - 1].log10_capital);
    }
    return result;
}

void write_trajectory_csv(std::ostream& out, const LossLedger& ledger) {
    out.precision(17);
    out << "step,y,u,eps_eff,log10_capital,loss_base,loss_enh,loss_oracle,median_enh\n";
    for (const auto& row : ledger.per_step) {
        out << row.step << ',' << row.y << ',' << row.u << ',' << row.eps_eff << ','
            << row.log10_capital << ',' << row.loss_base << ',' << row.loss_enhanced
            << ',' << row.loss_oracle << ',' << row.median_enhanced << "\n";
    }
}

nlohmann::json summarize(const ExperimentConfig& config, const RunResult& result) {
    nlohmann::json summary{
        {"steps", result.ledger.per_step.size()},
        {"final_log10_capital", result.final_log10_capital},
        {"final_cum_loss_base", result.ledger.cum_base},
        {"final_cum_loss_enhanced", result.ledger.cum_enhanced},
        {"final_cum_loss_oracle", result.ledger.cum_oracle},
        {"min_capital", result.min_capital},
        {"loss_base10", config.loss_base10},
    };
    if (result.capital_at_changepoint) {
        summary["capital_at_changepoint"] = *result.capital_at_changepoint;
    }
    return summary;
}

std::vector<CheckResult> selftest() {
    std::vector<CheckResult> results;
    auto record = [&results](const std::string& name, bool ok, std::string detail) {
        results.push_back({name, ok, std::move(detail)});
    };

    {
        // Two steps of u = 1 with J = 0.01, E = 1 must give S_2 = 1.165.
        SimpleJumper jumper(0.01, 1.0);
        const double s1 = jumper.step(1.0);
        const double s2 = jumper.step(1.0);
        std::ostringstream detail;
        detail << "S_1=" << s1 << " S_2=" << s2;
        record("hand_trace_s2", std::abs(s1 - 1.0) <= 1e-12 &&
                                    std::abs(s2 - 1.165) <= 1e-12,
               detail.str());
    }
    {
        // Enhanced density must integrate to 1 (Simpson over [-10,10]).
        auto base = std::make_shared<GaussianForecast>(0.0, 1.0);
        bool ok = true;
        double worst = 0.0;
        for (double eps : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const EnhancedForecast enhanced(base, BettingLine{eps});
            const int n = 4000;
            double integral = 0.0;
            const double h = 20.0 / n;
            for (int i = 0; i < n; ++i) {
                const double a = -10.0 + i * h;
                integral += h / 6.0 *
                            (enhanced.density(a) + 4.0 * enhanced.density(a + h / 2.0) +
                             enhanced.density(a + h));
            }
            worst = std::max(worst, std::abs(integral - 1.0));
            ok = ok && std::abs(integral - 1.0) <= 1e-8;
        }
        record("enhanced_density_normalization", ok,
               "max |integral - 1| = " + std::to_string(worst));
    }
    {
        // cum_base - cum_enhanced must equal log10 capital.
        ChangepointSpec spec;
        spec.n_pre = 200;
        spec.n_post = 200;
        const auto observations = generate(spec);
        ExperimentConfig config;
        config.inline_spec = spec;
        const auto result = run_configured(config, observations);
        const double gap =
            result.ledger.cum_base - result.ledger.cum_enhanced;
        std::ostringstream detail;
        detail << "|gap - log10_capital| = "
               << std::abs(gap - result.final_log10_capital);
        record("loss_gap_identity",
               std::abs(gap - result.final_log10_capital) <= 1e-9, detail.str());
    }
    {
        // Mean Jumper never drops below 1/|J-set| on an adversarial stream.
        MeanJumper martingale({1e-3, 1e-2, 1e-1, 1.0}, 1.0);
        double min_capital = 1.0;
        for (int i = 0; i < 500; ++i) {
            min_capital = std::min(min_capital, martingale.step(i % 2 == 0 ? 0.0 : 1.0));
        }
        record("mean_jumper_floor", min_capital >= 0.25 - 1e-12,
               "min capital = " + std::to_string(min_capital));
    }
    return results;
}

}  // namespace betting
