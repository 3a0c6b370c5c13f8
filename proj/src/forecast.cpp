#include "betting/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betting {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kPitClamp = 1e-15;

// Acklam's rational approximation to the standard normal quantile,
// relative error below 1.15e-9 before refinement.
double acklam_estimate(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double gaussian_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double gaussian_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("gaussian_quantile: p must lie in (0,1)");
    }
    double x = acklam_estimate(p);
    // Two Halley refinement steps against gaussian_cdf.
    for (int i = 0; i < 2; ++i) {
        const double e = gaussian_cdf(x) - p;
        const double phi = kInvSqrt2Pi * std::exp(-0.5 * x * x);
        if (phi <= 0.0) break;
        const double u = e / phi;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

GaussianForecast::GaussianForecast(double mean, double stddev)
    : mean_(mean), stddev_(stddev) {
    if (!(stddev > 0.0) || !std::isfinite(stddev) || !std::isfinite(mean)) {
        throw std::invalid_argument("GaussianForecast: stddev must be positive and finite");
    }
}

double GaussianForecast::density(double y) const {
    const double z = (y - mean_) / stddev_;
    return kInvSqrt2Pi * std::exp(-0.5 * z * z) / stddev_;
}

double GaussianForecast::cdf(double y) const {
    return gaussian_cdf((y - mean_) / stddev_);
}

double GaussianForecast::quantile(double p) const {
    return mean_ + stddev_ * gaussian_quantile(p);
}

double pit(const ContinuousForecast& forecast, double y) {
    return std::clamp(forecast.cdf(y), kPitClamp, 1.0 - kPitClamp);
}

}  // namespace betting
