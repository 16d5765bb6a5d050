#pragma once

#include <cmath>
#include <cstdint>

namespace aml {

/// Splittable 64-bit generator (SplitMix64 core).
///
/// Streams are derived by hashing (seed, a, b, c) through the SplitMix64
/// finalizer, so any (trial, purpose) pair gets an independent, reproducible
/// stream regardless of evaluation order.  The experiment harness uses
/// purpose ids 0 = design draw, 1 = solution truth, 2 = additive noise.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
        std::uint64_t s = mix(seed ^ 0x9e3779b97f4a7c15ULL);
        s = mix(s ^ a);
        s = mix(s ^ b);
        s = mix(s ^ c);
        return Rng(s);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform on [0,1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0,1); safe as a log/tan argument.
    double open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Inclusive integer range.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = open01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Standard Cauchy.
    double cauchy() { return std::tan(M_PI * (open01() - 0.5)); }

    double exponential(double rate) { return -std::log(open01()) / rate; }

    /// Double exponential (Laplace) with the given rate.
    double laplace(double rate) {
        const double u = open01() - 0.5;
        return -std::copysign(std::log(1.0 - 2.0 * std::fabs(u)), u) / rate;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace aml
