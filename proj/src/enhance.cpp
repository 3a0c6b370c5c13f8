#include "betting/enhance.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace betting {

double betting_integral(const BettingLine& line, double v) {
    const double eps = line.eps_eff;
    return (1.0 - 0.5 * eps) * v + 0.5 * eps * v * v;
}

double betting_quantile(const BettingLine& line, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("betting_quantile: q must lie in (0,1)");
    }
    const double eps = line.eps_eff;
    if (std::abs(eps) < 1e-9) {
        return q;
    }
    const double half = 1.0 - 0.5 * eps;
    return (-half + std::sqrt(half * half + 2.0 * eps * q)) / eps;
}

EnhancedForecast::EnhancedForecast(std::shared_ptr<const ContinuousForecast> base,
                                   BettingLine line)
    : base_(std::move(base)), line_(line) {
    if (!base_) {
        throw std::invalid_argument("EnhancedForecast: base forecast required");
    }
    if (!(std::abs(line.eps_eff) <= 2.0)) {
        throw std::invalid_argument("EnhancedForecast: |eps_eff| must not exceed 2");
    }
}

double EnhancedForecast::density(double y) const {
    return line_(base_->cdf(y)) * base_->density(y);
}

double EnhancedForecast::cdf(double y) const {
    return betting_integral(line_, base_->cdf(y));
}

double EnhancedForecast::quantile(double p) const {
    return base_->quantile(betting_quantile(line_, p));
}

}  // namespace betting
