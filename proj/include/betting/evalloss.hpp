#ifndef BETTING_EVALLOSS_HPP
#define BETTING_EVALLOSS_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "betting/enhance.hpp"
#include "betting/forecast.hpp"
#include "betting/martingale.hpp"

namespace betting {

enum class LogBase { ten, natural };

// -log(density) in the chosen base. Nonpositive density yields +inf, so
// adversarial runs complete instead of aborting.
double log_loss(double density_value, LogBase base = LogBase::ten);

struct TrajectoryRow {
    std::size_t step = 0;       // 1-based
    double y = 0.0;
    double u = 0.0;             // PIT of y under the base forecast
    double eps_eff = 0.0;       // betting line used for this step
    double log10_capital = 0.0; // after stepping the martingale
    double loss_base = 0.0;
    double loss_enhanced = 0.0;
    double loss_oracle = 0.0;
    double median_enhanced = 0.0;
};

struct LossLedger {
    double cum_base = 0.0;
    double cum_enhanced = 0.0;
    double cum_oracle = 0.0;
    std::vector<TrajectoryRow> per_step;
};

// Produces the forecast for step n (0-based).
using ForecastPolicy =
    std::function<std::shared_ptr<const ContinuousForecast>(std::size_t)>;

// Runs the online loop: peek the betting line, enhance, score base /
// enhanced / oracle at y_n, then feed the PIT value to the martingale.
// The betting line for step n is fixed before y_n is seen, so the enhanced
// forecaster is a proper online predictor. The ledger satisfies
// cum_base - cum_enhanced = log10_capital at every step.
template <typename Martingale>
LossLedger run_experiment(std::span<const double> observations,
                          const ForecastPolicy& base_policy, Martingale& martingale,
                          const ForecastPolicy& oracle_policy,
                          LogBase loss_base = LogBase::ten) {
    LossLedger ledger;
    ledger.per_step.reserve(observations.size());
    for (std::size_t n = 0; n < observations.size(); ++n) {
        const double y = observations[n];
        const auto base = base_policy(n);
        const auto oracle = oracle_policy(n);
        const BettingLine line = martingale.peek_betting();
        const EnhancedForecast enhanced(base, line);

        TrajectoryRow row;
        row.step = n + 1;
        row.y = y;
        row.u = pit(*base, y);
        row.eps_eff = line.eps_eff;
        row.loss_base = log_loss(base->density(y), loss_base);
        row.loss_enhanced = log_loss(enhanced.density(y), loss_base);
        row.loss_oracle = log_loss(oracle->density(y), loss_base);
        row.median_enhanced = enhanced.quantile(0.5);

        martingale.step(row.u);
        row.log10_capital = martingale.log10_capital();

        ledger.cum_base += row.loss_base;
        ledger.cum_enhanced += row.loss_enhanced;
        ledger.cum_oracle += row.loss_oracle;
        ledger.per_step.push_back(row);
    }
    return ledger;
}

}  // namespace betting

#endif
