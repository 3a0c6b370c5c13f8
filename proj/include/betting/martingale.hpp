#ifndef BETTING_MARTINGALE_HPP
#define BETTING_MARTINGALE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace betting {

// The effective linear betting function b(u) = 1 + eps_eff * (u - 0.5).
// Nonnegative on [0,1] iff |eps_eff| <= 2, and integrates to 1 for any eps.
struct BettingLine {
    double eps_eff = 0.0;

    double operator()(double u) const { return 1.0 + eps_eff * (u - 0.5); }
};

// Regime-switching betting martingale over the three calibrators
// f_eps(u) = 1 + eps(u - 0.5), eps in {-E, 0, +E}. Weights are kept
// normalized; capital is carried as log10 so long streams cannot overflow
// (the paper-scale study already reaches 1e91 in 2000 steps).
class SimpleJumper {
public:
    // jump_rate in (0,1], range in (0,2]; throws std::invalid_argument.
    SimpleJumper(double jump_rate, double range);

    // The betting line the next call to step() will use: jump mixing applied
    // to a copy of the current weights, then eps_eff = (w_pos - w_neg) * E.
    BettingLine peek_betting() const;

    // One round of Algorithm "jump, bet, renormalize" on a PIT value.
    // Returns the capital S_n = 10^log10_capital. u outside [0,1] throws
    // std::domain_error.
    double step(double u);

    double capital() const;
    double log10_capital() const { return log10_capital_; }
    double jump_rate() const { return jump_rate_; }
    double range() const { return range_; }
    std::uint64_t steps() const { return steps_; }
    // Normalized weights for eps = -E, 0, +E.
    const std::array<double, 3>& weights() const { return weights_; }

    // Flat JSON snapshot: w_neg, w_zero, w_pos, jump_rate, range,
    // log10_capital, steps.
    std::string to_json() const;
    static SimpleJumper from_json(const std::string& text);

private:
    std::array<double, 3> weights_{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double jump_rate_;
    double range_;
    double log10_capital_ = 0.0;
    std::uint64_t steps_ = 0;

    std::array<double, 3> mixed_weights() const;
};

// Equal-weight average of Simple Jumpers over a set of jump rates that must
// contain J = 1. The J = 1 component stays at capital 1, so the average
// never drops below 1/|J-set|.
class MeanJumper {
public:
    MeanJumper(const std::vector<double>& jump_rates, double range);

    // Capital-weighted mixture of the component betting lines; a convex
    // mixture of lines 1 + eps(u-0.5) is again such a line.
    BettingLine peek_betting() const;

    // Steps every component; returns the mean of component capitals.
    double step(double u);

    double capital() const;
    double log10_capital() const;
    double range() const { return range_; }
    std::uint64_t steps() const { return steps_; }
    const std::vector<SimpleJumper>& components() const { return components_; }

private:
    std::vector<SimpleJumper> components_;
    double range_;
    std::uint64_t steps_ = 0;
};

}  // namespace betting

#endif
