#ifndef BETTING_SIMGEN_HPP
#define BETTING_SIMGEN_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace betting {

// xoshiro256++ seeded through splitmix64. The whole dataset pipeline is a
// pure function of the 64-bit seed, so runs reproduce bit-identically on
// any platform or language.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed);

    std::uint64_t next();
    // Uniform on [0,1) from the top 53 bits.
    double uniform53();

private:
    std::uint64_t state_[4];
};

// Two-block Gaussian changepoint dataset.
struct ChangepointSpec {
    std::size_t n_pre = 1000;
    std::size_t n_post = 1000;
    double mean_pre = 0.0;
    double sd_pre = 1.0;
    double mean_post = 1.0;
    double sd_post = 1.0;
    std::uint64_t seed = 2021;
};

// n_pre draws from N(mean_pre, sd_pre) followed by n_post draws from
// N(mean_post, sd_post). Gaussians come from the inverse CDF of the
// uniform stream. Throws std::invalid_argument on nonpositive sd.
std::vector<double> generate(const ChangepointSpec& spec);

// Deterministic 53-bit uniforms, for fuzz streams.
std::vector<double> uniform_stream(std::uint64_t seed, std::size_t n);

// One observation per line, 17 significant digits, preceded by a header
// comment carrying the full spec.
void write_dataset(std::ostream& out, const ChangepointSpec& spec,
                   const std::vector<double>& values);
std::vector<double> read_dataset(std::istream& in);

struct DatasetFile {
    std::optional<ChangepointSpec> spec;  // recovered from the header, if present
    std::vector<double> values;
};

DatasetFile read_dataset_file(std::istream& in);

}  // namespace betting

#endif
