#include "betting/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace betting {

SimpleJumper::SimpleJumper(double jump_rate, double range)
    : jump_rate_(jump_rate), range_(range) {
    if (!(jump_rate > 0.0 && jump_rate <= 1.0)) {
        throw std::invalid_argument("SimpleJumper: jump rate must lie in (0,1]");
    }
    if (!(range > 0.0 && range <= 2.0)) {
        throw std::invalid_argument("SimpleJumper: range must lie in (0,2]");
    }
}

std::array<double, 3> SimpleJumper::mixed_weights() const {
    // Weights sum to 1, so the total capital factors out of the jump mix.
    std::array<double, 3> mixed;
    for (std::size_t i = 0; i < 3; ++i) {
        mixed[i] = (1.0 - jump_rate_) * weights_[i] + jump_rate_ / 3.0;
    }
    return mixed;
}

BettingLine SimpleJumper::peek_betting() const {
    const auto mixed = mixed_weights();
    return BettingLine{(mixed[2] - mixed[0]) * range_};
}

double SimpleJumper::step(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("SimpleJumper::step: u must lie in [0,1]");
    }
    auto mixed = mixed_weights();
    const std::array<double, 3> eps{-range_, 0.0, range_};
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        mixed[i] *= 1.0 + eps[i] * (u - 0.5);
        total += mixed[i];
    }
    for (std::size_t i = 0; i < 3; ++i) {
        weights_[i] = mixed[i] / total;
    }
    log10_capital_ += std::log10(total);
    ++steps_;
    return capital();
}

double SimpleJumper::capital() const {
    return std::pow(10.0, log10_capital_);
}

std::string SimpleJumper::to_json() const {
    nlohmann::json j{{"w_neg", weights_[0]},
                     {"w_zero", weights_[1]},
                     {"w_pos", weights_[2]},
                     {"jump_rate", jump_rate_},
                     {"range", range_},
                     {"log10_capital", log10_capital_},
                     {"steps", steps_}};
    return j.dump();
}

SimpleJumper SimpleJumper::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    SimpleJumper s(j.at("jump_rate").get<double>(), j.at("range").get<double>());
    s.weights_ = {j.at("w_neg").get<double>(), j.at("w_zero").get<double>(),
                  j.at("w_pos").get<double>()};
    s.log10_capital_ = j.at("log10_capital").get<double>();
    s.steps_ = j.at("steps").get<std::uint64_t>();
    const double total = s.weights_[0] + s.weights_[1] + s.weights_[2];
    if (!(std::abs(total - 1.0) <= 1e-9) ||
        !std::all_of(s.weights_.begin(), s.weights_.end(),
                     [](double w) { return w >= 0.0; })) {
        throw std::invalid_argument("SimpleJumper::from_json: weights must be normalized");
    }
    return s;
}

MeanJumper::MeanJumper(const std::vector<double>& jump_rates, double range)
    : range_(range) {
    if (jump_rates.empty()) {
        throw std::invalid_argument("MeanJumper: jump-rate set must be nonempty");
    }
    if (std::none_of(jump_rates.begin(), jump_rates.end(),
                     [](double j) { return j == 1.0; })) {
        throw std::invalid_argument("MeanJumper: jump-rate set must contain J = 1");
    }
    components_.reserve(jump_rates.size());
    for (double j : jump_rates) {
        components_.emplace_back(j, range);
    }
}

BettingLine MeanJumper::peek_betting() const {
    double weighted_eps = 0.0;
    double total_capital = 0.0;
    for (const auto& c : components_) {
        const double cap = c.capital();
        weighted_eps += cap * c.peek_betting().eps_eff;
        total_capital += cap;
    }
    return BettingLine{weighted_eps / total_capital};
}

double MeanJumper::step(double u) {
    for (auto& c : components_) {
        c.step(u);
    }
    ++steps_;
    return capital();
}

double MeanJumper::capital() const {
    double total = 0.0;
    for (const auto& c : components_) {
        total += c.capital();
    }
    return total / static_cast<double>(components_.size());
}

double MeanJumper::log10_capital() const {
    return std::log10(capital());
}

}  // namespace betting
