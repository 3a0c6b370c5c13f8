#ifndef BETTING_ENHANCE_HPP
#define BETTING_ENHANCE_HPP

#include <memory>

#include "betting/forecast.hpp"
#include "betting/martingale.hpp"

namespace betting {

// B(v) = integral of b over [0,v] = (1 - eps/2) v + (eps/2) v^2.
double betting_integral(const BettingLine& line, double v);

// The unique v in (0,1) with B(v) = q, for q in (0,1) and |eps| <= 2.
// Below |eps| = 1e-9 the linear limit v = q is used; the quadratic formula
// cancels catastrophically as eps -> 0.
double betting_quantile(const BettingLine& line, double q);

// Forecaster with density b(F)f and distribution function B(F). Satisfies
// the full ContinuousForecast contract, so enhancement composes.
class EnhancedForecast final : public ContinuousForecast {
public:
    EnhancedForecast(std::shared_ptr<const ContinuousForecast> base, BettingLine line);

    double density(double y) const override;
    double cdf(double y) const override;
    double quantile(double p) const override;

    const ContinuousForecast& base() const { return *base_; }
    const BettingLine& line() const { return line_; }

private:
    std::shared_ptr<const ContinuousForecast> base_;
    BettingLine line_;
};

}  // namespace betting

#endif
