#pragma once

// Deterministic random streams for dataset generation and splitting.
//
// mt19937_64 output is bit-exact across standard libraries, but the standard
// <random> distributions are not (their algorithms are implementation
// defined). Reports here must be byte-identical across reruns and toolchains,
// so the uniform/normal/shuffle transforms are spelled out explicitly.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ncr {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw from [lo, hi) using the top 53 bits of the engine output.
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    // Normal draw parameterized by VARIANCE, not standard deviation. The
    // synthetic benchmark specs quote noise levels as variances, so keeping
    // that convention at the source avoids a silent sqrt mix-up downstream.
    double normal(double mean, double variance) {
        return mean + std::sqrt(variance) * standard_normal();
    }

    // Box-Muller pair, second value cached so consumption order stays fixed.
    double standard_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite.
        const double u1 =
            (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Unbiased integer draw from [0, n) by rejection.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Fisher-Yates shuffle driven by bounded() draws.
    template <class T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ncr
