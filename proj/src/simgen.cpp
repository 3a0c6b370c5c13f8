#include "betting/simgen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "betting/forecast.hpp"

namespace betting {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) {
        s = splitmix64(sm);
    }
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double Xoshiro256pp::uniform53() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<double> generate(const ChangepointSpec& spec) {
    if (!(spec.sd_pre > 0.0) || !(spec.sd_post > 0.0)) {
        throw std::invalid_argument("generate: standard deviations must be positive");
    }
    Xoshiro256pp rng(spec.seed);
    std::vector<double> values;
    values.reserve(spec.n_pre + spec.n_post);
    auto draw = [&rng](double mean, double sd) {
        // Guard the measure-zero u = 0 so the inverse CDF stays finite.
        const double u = std::clamp(rng.uniform53(), 0x1.0p-54, 1.0 - 0x1.0p-54);
        return mean + sd * gaussian_quantile(u);
    };
    for (std::size_t i = 0; i < spec.n_pre; ++i) {
        values.push_back(draw(spec.mean_pre, spec.sd_pre));
    }
    for (std::size_t i = 0; i < spec.n_post; ++i) {
        values.push_back(draw(spec.mean_post, spec.sd_post));
    }
    return values;
}

std::vector<double> uniform_stream(std::uint64_t seed, std::size_t n) {
    Xoshiro256pp rng(seed);
    std::vector<double> values(n);
    for (auto& v : values) {
        v = rng.uniform53();
    }
    return values;
}

void write_dataset(std::ostream& out, const ChangepointSpec& spec,
                   const std::vector<double>& values) {
    out.precision(17);
    out << "# changepoint n_pre=" << spec.n_pre << " n_post=" << spec.n_post
        << " mean_pre=" << spec.mean_pre << " sd_pre=" << spec.sd_pre
        << " mean_post=" << spec.mean_post << " sd_post=" << spec.sd_post
        << " seed=" << spec.seed << "\n";
    for (double v : values) {
        out << v << "\n";
    }
}

std::vector<double> read_dataset(std::istream& in) {
    return read_dataset_file(in).values;
}

DatasetFile read_dataset_file(std::istream& in) {
    DatasetFile file;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (!file.spec && line.find("# changepoint ") == 0) {
                ChangepointSpec spec;
                std::istringstream fields(line.substr(14));
                std::string field;
                bool ok = true;
                while (fields >> field) {
                    const auto eq = field.find('=');
                    if (eq == std::string::npos) {
                        ok = false;
                        break;
                    }
                    const auto key = field.substr(0, eq);
                    const auto value = field.substr(eq + 1);
                    try {
                        if (key == "n_pre") spec.n_pre = std::stoull(value);
                        else if (key == "n_post") spec.n_post = std::stoull(value);
                        else if (key == "mean_pre") spec.mean_pre = std::stod(value);
                        else if (key == "sd_pre") spec.sd_pre = std::stod(value);
                        else if (key == "mean_post") spec.mean_post = std::stod(value);
                        else if (key == "sd_post") spec.sd_post = std::stod(value);
                        else if (key == "seed") spec.seed = std::stoull(value);
                        else ok = false;
                    } catch (const std::exception&) {
                        ok = false;
                    }
                    if (!ok) break;
                }
                if (ok) {
                    file.spec = spec;
                }
            }
            continue;
        }
        file.values.push_back(std::stod(line));
    }
    return file;
}

}  // namespace betting
