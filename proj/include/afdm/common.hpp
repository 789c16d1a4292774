// common.hpp - Shared scalar types, phase helpers and deterministic RNG streams
#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <random>

namespace afdm {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/** Raised for invalid configuration (bad sizes, infeasible layouts, bad files). */
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * exp(i*2*pi*cycles) with the argument reduced modulo one cycle first.
 * All phase bookkeeping in the library goes through here so large phase
 * arguments (c1*n^2 grows to ~1e4 cycles) keep full fractional precision.
 */
inline cd cis_cycles(double cycles) {
    const double r = cycles - std::nearbyint(cycles);
    return std::polar(1.0, kTwoPi * r);
}

/**
 * Deterministic random stream derived from (master seed, stream index).
 *
 * The generator is std::mt19937_64 (bit-exact by the standard); the variates
 * are produced from raw 64-bit draws here instead of std::*_distribution so a
 * given (seed, stream) pair yields the same bytes on every toolchain.
 */
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : gen_(mix(seed, stream)) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    /// Circularly symmetric complex normal with E[|z|^2] = variance.
    cd cnormal(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    std::uint64_t raw() { return gen_(); }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 over the pair; decorrelates neighbouring stream ids.
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace afdm
