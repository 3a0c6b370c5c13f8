// End-to-end acceptance suite. Each criterion prints a single pass/fail
// line; the process exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "betting/enhance.hpp"
#include "betting/evalloss.hpp"
#include "betting/forecast.hpp"
#include "betting/martingale.hpp"
#include "betting/simgen.hpp"
#include "oracles.hpp"

#undef CHECK_ABS
#undef REQUIRE_ABS

using namespace betting;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool passed,
            const std::string& detail) {
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": "
              << name << " (" << detail << ")\n";
    if (!passed) {
        ++failures;
    }
}

ForecastPolicy constant(double mean, double sd) {
    auto f = std::make_shared<GaussianForecast>(mean, sd);
    return [f](std::size_t) { return f; };
}

ForecastPolicy changepoint_oracle(std::size_t cp) {
    auto pre = std::make_shared<GaussianForecast>(0.0, 1.0);
    auto post = std::make_shared<GaussianForecast>(1.0, 1.0);
    return [pre, post, cp](std::size_t n) -> std::shared_ptr<const ContinuousForecast> {
        return n < cp ? pre : post;
    };
}

struct PaperRun {
    LossLedger ledger;
    double final_log10 = 0.0;
    double capital_at_cp = 0.0;
};

PaperRun run_paper(std::uint64_t seed, double range) {
    ChangepointSpec spec;
    spec.seed = seed;
    const auto ys = generate(spec);
    SimpleJumper martingale(0.01, range);
    PaperRun run;
    run.ledger = run_experiment(std::span(ys), constant(0.0, 1.0), martingale,
                                changepoint_oracle(1000));
    run.final_log10 = martingale.log10_capital();
    run.capital_at_cp = std::pow(10.0, run.ledger.per_step[999].log10_capital);
    return run;
}

// Observations whose PIT values under N(0,1) equal the given stream.
std::vector<double> observations_for_pits(const std::vector<double>& us) {
    std::vector<double> ys;
    ys.reserve(us.size());
    for (double u : us) {
        ys.push_back(gaussian_quantile(std::clamp(u, 1e-12, 1.0 - 1e-12)));
    }
    return ys;
}

void criterion_1_changepoint_reproduction() {
    const auto start = std::chrono::steady_clock::now();
    const auto default_run = run_paper(2021, 1.0);
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();

    std::vector<double> finals;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        finals.push_back(run_paper(seed, 1.0).final_log10);
    }
    std::sort(finals.begin(), finals.end());
    const double median = 0.5 * (finals[9] + finals[10]);

    const bool passed = default_run.final_log10 >= 70.0 &&
                        default_run.final_log10 <= 110.0 && median >= 80.0 &&
                        median <= 100.0 && default_run.capital_at_cp >= 1e-4 &&
                        default_run.capital_at_cp <= 1.0 && elapsed < 1.0;
    std::ostringstream detail;
    detail << "final log10 capital " << default_run.final_log10 << ", 20-seed median "
           << median << ", capital at changepoint " << default_run.capital_at_cp
           << ", runtime " << elapsed << " s";
    report(1, "changepoint reproduction", passed, detail.str());
}

void criterion_2_loss_gap_identity() {
    const auto run = run_paper(2021, 1.0);
    double cum_base = 0.0, cum_enhanced = 0.0, worst = 0.0;
    for (const auto& row : run.ledger.per_step) {
        cum_base += row.loss_base;
        cum_enhanced += row.loss_enhanced;
        worst = std::max(worst,
                         std::abs(cum_base - cum_enhanced - row.log10_capital));
    }
    std::ostringstream detail;
    detail << "max |loss gap - log10 capital| = " << worst << " over "
           << run.ledger.per_step.size() << " steps";
    report(2, "loss gap equals capital", worst <= 1e-9, detail.str());
}

void criterion_3_mean_jumper_guarantees() {
    bool passed = true;
    double min_capital = 1.0, worst_excess = -1.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto us = uniform_stream(seed, 2000);
        // lace uniform streams with adversarial segments
        for (std::size_t i = 0; i < us.size(); ++i) {
            if (seed % 4 == 1 && i % 3 == 0) us[i] = 0.0;
            if (seed % 4 == 2 && i % 3 == 0) us[i] = 1.0;
            if (seed % 4 == 3 && i < 500) us[i] = (i % 2) ? 1.0 : 0.0;
        }
        const auto ys = observations_for_pits(us);
        MeanJumper martingale({1e-3, 1e-2, 1e-1, 1.0}, 1.0);
        const auto ledger = run_experiment(std::span(ys), constant(0.0, 1.0),
                                           martingale, constant(0.0, 1.0));
        for (const auto& row : ledger.per_step) {
            min_capital = std::min(min_capital, std::pow(10.0, row.log10_capital));
        }
        const double excess = ledger.cum_enhanced - ledger.cum_base;
        worst_excess = std::max(worst_excess, excess);
        passed = passed && min_capital >= 0.25 - 1e-12 &&
                 excess <= std::log10(4.0) + 1e-9;
    }
    std::ostringstream detail;
    detail << "min capital " << min_capital << ", max loss excess " << worst_excess
           << " vs bound " << std::log10(4.0);
    report(3, "mean jumper guarantees", passed, detail.str());
}

void criterion_4_martingale_property() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t streams = 10000;
    double total = 0.0;
    bool first_step_neutral = true;
    for (std::size_t s = 0; s < streams; ++s) {
        SimpleJumper jumper(0.01, 1.0);
        const auto us = uniform_stream(40000 + s, 50);
        double capital = jumper.step(us[0]);
        first_step_neutral = first_step_neutral && std::abs(capital - 1.0) <= 1e-12;
        for (std::size_t i = 1; i < us.size(); ++i) {
            capital = jumper.step(us[i]);
        }
        total += capital;
    }
    const double mean = total / streams;
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    const bool passed =
        mean >= 0.95 && mean <= 1.05 && first_step_neutral && elapsed < 10.0;
    std::ostringstream detail;
    detail << "mean final capital " << mean << ", S_1 neutral on all streams, runtime "
           << elapsed << " s";
    report(4, "martingale property", passed, detail.str());
}

void criterion_5_enhancement_calculus() {
    const auto base = std::make_shared<GaussianForecast>(0.0, 1.0);
    bool passed = true;
    double worst_mass = 0.0;
    for (double eps : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        const EnhancedForecast e(base, BettingLine{eps});
        const double mass = oracles::adaptive_simpson(
            [&e](double y) { return e.density(y); }, -10.0, 10.0, 1e-10);
        worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
        passed = passed && std::abs(mass - 1.0) <= 1e-8;
    }

    double worst_quantile = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double eps = -2.0 + 4.0 * i / 20.0;
        const BettingLine line{eps};
        for (int k = 1; k <= 19; ++k) {
            const double q = k / 20.0;
            const double v = betting_quantile(line, q);
            const double ref = oracles::bisect(
                [&line, q](double x) { return betting_integral(line, x) - q; }, 0.0,
                1.0);
            worst_quantile = std::max(worst_quantile, std::abs(v - ref));
            passed = passed && std::abs(v - ref) <= 1e-12;
        }
    }

    double worst_median = 0.0;
    for (double eps : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
        const double closed = (eps - 2.0 + std::sqrt(eps * eps + 4.0)) / (2.0 * eps);
        const double v = betting_quantile(BettingLine{eps}, 0.5);
        worst_median = std::max(worst_median, std::abs(v - closed));
        passed = passed && std::abs(v - closed) <= 1e-12;
    }

    std::ostringstream detail;
    detail << "max |mass - 1| = " << worst_mass << ", max quantile error "
           << worst_quantile << ", max median formula error " << worst_median;
    report(5, "enhancement calculus", passed, detail.str());
}

void criterion_6_algorithm_oracle_equivalence() {
    bool passed = true;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const auto us = uniform_stream(90000 + seed, 100);
        const auto expected = oracles::raw_jumper_log10(us, 0.01, 1.0);
        SimpleJumper jumper(0.01, 1.0);
        for (std::size_t i = 0; i < us.size(); ++i) {
            jumper.step(us[i]);
            worst = std::max(worst, std::abs(jumper.log10_capital() - expected[i]));
        }
    }
    passed = passed && worst <= 1e-9;

    SimpleJumper hand(0.01, 1.0);
    hand.step(1.0);
    const double s2 = hand.step(1.0);
    passed = passed && std::abs(s2 - 1.165) <= 1e-12;

    std::ostringstream detail;
    detail << "max log10 deviation " << worst << ", hand trace S_2 = " << s2;
    report(6, "raw trace equivalence", passed, detail.str());
}

void criterion_7_wider_range_improvement() {
    const auto run_e1 = run_paper(2021, 1.0);
    const auto run_e2 = run_paper(2021, 2.0);
    const double gap_e1 = run_e1.ledger.cum_enhanced - run_e1.ledger.cum_oracle;
    const double gap_e2 = run_e2.ledger.cum_enhanced - run_e2.ledger.cum_oracle;

    const auto post_median_mean = [](const PaperRun& run) {
        double total = 0.0;
        for (std::size_t i = 1000; i < 2000; ++i) {
            total += run.ledger.per_step[i].median_enhanced;
        }
        return total / 1000.0;
    };
    const double median_e1 = post_median_mean(run_e1);
    const double median_e2 = post_median_mean(run_e2);

    const bool passed = gap_e2 < gap_e1 &&
                        std::abs(median_e2 - 1.0) < std::abs(median_e1 - 1.0);
    std::ostringstream detail;
    detail << "loss gap to oracle: E=1 " << gap_e1 << " vs E=2 " << gap_e2
           << "; post-changepoint mean median: E=1 " << median_e1 << " vs E=2 "
           << median_e2;
    report(7, "E=2 improvement", passed, detail.str());
}

}  // namespace

int main() {
    criterion_1_changepoint_reproduction();
    criterion_2_loss_gap_identity();
    criterion_3_mean_jumper_guarantees();
    criterion_4_martingale_property();
    criterion_5_enhancement_calculus();
    criterion_6_algorithm_oracle_equivalence();
    criterion_7_wider_range_improvement();
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
