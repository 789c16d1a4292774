// channel.hpp - Doubly selective multipath channel with fractional shifts
#pragma once

#include <cstddef>
#include <vector>

#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"
#include "afdm/frame.hpp"

namespace afdm {

/** Integer/fractional split x = whole + frac with frac in (-1/2, 1/2]. */
struct ShiftParts {
    long whole = 0;
    double frac = 0.0;
};

ShiftParts split_shift(double x);

/**
 * One propagation path: complex gain, delay in seconds, Doppler in Hz.
 *
 * In sample units the delay is l + iota = tau/dt and the Doppler is
 * k + kappa = T*f. The echo of DAFT symbol m lands (for integer shifts)
 * at m - l_eq with the equivalent delay l_eq = T*f + C*tau/dt.
 */
struct Target {
    cd h{0.0, 0.0};
    double tau = 0.0;
    double f = 0.0;

    ShiftParts delay_parts(double dt) const { return split_shift(tau / dt); }
    ShiftParts doppler_parts(double T) const { return split_shift(T * f); }
    double l_eq(const ChirpParams& p) const {
        return p.T() * f + p.C() * tau / p.dt;
    }
};

/**
 * A sensing scene: P reflecting targets, an optional direct leakage path h0
 * (zero delay, zero Doppler) and the noise power N0 per complex sample.
 */
struct Scene {
    std::vector<Target> targets;
    cd h0{0.0, 0.0};
    double N0 = 0.0;
};

/**
 * Noise-free received frame body after prefix removal:
 *   r[n] = sqrt(dt) * sum_i h_i exp(-i 2 pi f_i n dt) s_cpp(n dt - tau_i)
 * plus the h0 term at zero delay/Doppler when h0 != 0. The fractional-delay
 * values come from the closed-form continuous-time signal, so no
 * interpolation error enters.
 *
 * Throws ConfigError when a delay is negative or exceeds the prefix M*dt.
 */
CVec apply_channel(const CVec& x, const Scene& scene, const ChirpParams& p);
CVec apply_channel(const DaftFrame& frame, const Scene& scene, const ChirpParams& p);

/** r + w with w i.i.d. circularly symmetric CN(0, N0) per sample. */
CVec add_noise(const CVec& r, double N0, RngStream& rng);

/**
 * Random scene: tau ~ U[0, tau_max], f ~ U[-f_max, f_max], h ~ CN(0, 1),
 * drawn in that order per target. h0 and N0 are left for the caller.
 */
Scene gen_scene(std::size_t P, double tau_max, double f_max, RngStream& rng);

}  // namespace afdm
