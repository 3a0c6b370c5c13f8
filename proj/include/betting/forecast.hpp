#ifndef BETTING_FORECAST_HPP
#define BETTING_FORECAST_HPP

#include <memory>

namespace betting {

// One-dimensional predictive distribution. Implementations must be
// continuous: cdf strictly increasing where density > 0, quantile the
// (infimum) inverse of cdf.
class ContinuousForecast {
public:
    virtual ~ContinuousForecast() = default;

    virtual double density(double y) const = 0;
    virtual double cdf(double y) const = 0;
    // p must lie in (0,1); throws std::domain_error otherwise.
    virtual double quantile(double p) const = 0;
};

// Standard normal CDF, absolute error below 1e-15 for |x| <= 8.
double gaussian_cdf(double x);

// Inverse of gaussian_cdf on (0,1). Rational initial estimate refined by a
// Halley step against gaussian_cdf. Throws std::domain_error off (0,1).
double gaussian_quantile(double p);

class GaussianForecast final : public ContinuousForecast {
public:
    GaussianForecast(double mean, double stddev);

    double density(double y) const override;
    double cdf(double y) const override;
    double quantile(double p) const override;

    double mean() const { return mean_; }
    double stddev() const { return stddev_; }

private:
    double mean_;
    double stddev_;
};

// Probability integral transform u = F(y), clamped to [1e-15, 1 - 1e-15]
// so downstream betting functions never see an exact 0 or 1 produced by
// float underflow in the tails.
double pit(const ContinuousForecast& forecast, double y);

}  // namespace betting

#endif
