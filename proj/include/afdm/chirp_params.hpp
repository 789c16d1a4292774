// chirp_params.hpp - AFDM frame geometry: sizes, chirp rates and sample timing
#pragma once

#include <cmath>
#include <cstddef>

#include "afdm/common.hpp"

namespace afdm {

/**
 * Static parameters of one AFDM frame.
 *
 * N        subcarrier count (even, >= 16)
 * M        chirp-periodic prefix length in samples (0 < M < N)
 * c1, c2   discrete chirp rates of the transform
 * dt       sample spacing in seconds
 *
 * Derived:
 *   T = N*dt    frame body duration
 *   C = 2*c1*N  full-band chirp slope in subcarrier spacings per frame
 */
struct ChirpParams {
    std::size_t N = 0;
    std::size_t M = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double dt = 1.0;

    double T() const { return static_cast<double>(N) * dt; }
    double C() const { return 2.0 * c1 * static_cast<double>(N); }

    /// True when C is an integer (prefix reduces to a plain cyclic prefix).
    bool integer_slope(double tol = 1e-9) const {
        return std::abs(C() - std::nearbyint(C())) <= tol;
    }

    /**
     * Smallest c1 that separates delay-Doppler echoes up to k_f + k_max
     * Doppler bins: c1 = (k_f + k_max) / N.
     */
    static double default_c1(std::size_t N, int k_f, int k_max) {
        return static_cast<double>(k_f + k_max) / static_cast<double>(N);
    }

    void validate() const {
        if (N < 16 || N % 2 != 0)
            throw ConfigError("ChirpParams: N must be even and >= 16");
        if (M == 0 || M >= N)
            throw ConfigError("ChirpParams: M must satisfy 0 < M < N");
        if (dt <= 0.0)
            throw ConfigError("ChirpParams: dt must be positive");
        if (c1 < 0.0)
            throw ConfigError("ChirpParams: c1 must be non-negative");
    }
};

}  // namespace afdm
