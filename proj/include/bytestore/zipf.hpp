#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "bytestore/error.hpp"

namespace bytestore {

/// Name of the generator recorded in store manifests.
inline constexpr std::string_view kPrngName = "mt19937_64";

struct ZipfSpec {
    double skew = 1.0;          // s; 0 is uniform
    unsigned domain_bits = 12;  // D = 2^d
    std::size_t n_rows = 1000;
    std::uint64_t seed = 1;

    void validate() const {
        if (domain_bits < 4 || domain_bits > 24) throw UsageError("domain bits must be in [4, 24]");
        if (!(skew >= 0.0) || !std::isfinite(skew)) throw UsageError("skew must be a finite value >= 0");
    }
    std::size_t domain() const noexcept { return std::size_t{1} << domain_bits; }
};

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Inverse-CDF sampler: rank k (1-based) has probability proportional to
/// k^-s and is emitted as value k - 1.
class ZipfSampler {
public:
    explicit ZipfSampler(const ZipfSpec& spec) {
        spec.validate();
        const std::size_t d = spec.domain();
        cdf_.resize(d);
        double acc = 0.0;
        for (std::size_t k = 1; k <= d; ++k) {
            acc += std::pow(static_cast<double>(k), -spec.skew);
            cdf_[k - 1] = acc;
        }
        for (auto& c : cdf_) c /= acc;
        cdf_.back() = 1.0;
    }

    /// P(value <= v).
    double cdf(std::size_t v) const { return cdf_.at(v); }
    std::size_t domain() const noexcept { return cdf_.size(); }

    std::int64_t sample(std::mt19937_64& rng) const {
        const double u = unit_double(rng);
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<std::int64_t>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1));
    }

private:
    std::vector<double> cdf_;
};

inline std::vector<std::int64_t> gen_zipf(const ZipfSpec& spec) {
    const ZipfSampler sampler(spec);
    std::mt19937_64 rng(spec.seed);
    std::vector<std::int64_t> out(spec.n_rows);
    for (auto& v : out) v = sampler.sample(rng);
    return out;
}

}  // namespace bytestore
