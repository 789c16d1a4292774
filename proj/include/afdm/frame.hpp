// frame.hpp - Pilot/guard/data layout of the DAFT-domain frame
#pragma once

#include <cstddef>
#include <vector>

#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"

namespace afdm {

using IndexSet = std::vector<std::size_t>;

/**
 * Frame geometry knobs.
 *
 * k_f      Doppler guard margin in bins
 * k_max    largest expected Doppler magnitude in bins
 * l_max    largest expected delay in samples
 * m0       pilot position; -1 selects the default C*l_max + k_f + k_max,
 *          which keeps the pilot window contiguous without modular wrap
 * overhead target pilot+guard fraction rho; the null budget is round(rho*N)
 *          and 0 requests the minimum feasible layout
 */
struct FrameConfig {
    std::size_t N = 0;
    int k_f = 0;
    int k_max = 0;
    int l_max = 0;
    long m0 = -1;
    double overhead = 0.0;
    int modulation_bits = 2;
};

/// Delay spread in whole samples: ceil(tau_max / dt).
int delay_bins(double tau_max, double dt);

/// Doppler spread in whole bins: ceil(T * f_max).
int doppler_bins(double f_max, double T);

/**
 * Disjoint partition of {0..N-1} into pilot, pilot guard interval (the indices
 * the pilot's own echoes land on), data guard interval (nulls that keep data
 * echoes out of the pilot window) and data positions.
 *
 * boost is the pilot power factor |P_GI| + |D_GI|: every null donates its unit
 * of power to the pilot, so the frame average power stays at one per symbol.
 */
struct FrameLayout {
    std::size_t N = 0;
    std::size_t m0 = 0;
    IndexSet p_gi;    // sorted representatives in [0, N)
    IndexSet d_gi;    // sorted representatives in [0, N)
    IndexSet d_data;  // sorted representatives in [0, N)
    std::size_t boost = 0;
    std::size_t window_lo = 0;  // pilot window reach below m0 (mod N)
    std::size_t window_hi = 0;  // pilot window reach above m0 (mod N)

    double overhead() const {
        return static_cast<double>(boost + 1) / static_cast<double>(N);
    }

    /**
     * The pilot observation window P_GI U {m0} as an ordered walk
     * m0-window_lo, ..., m0, ..., m0+window_hi (mod N). Length |P_GI|+1.
     */
    IndexSet pilot_window() const;

    /// Position of DAFT index m inside pilot_window(), or -1 if outside.
    long window_position(std::size_t m) const;
};

/**
 * Build the frame layout for a configuration.
 *
 * The pilot window spans [m0 - (k_f+k_max) - C*l_max, m0 + (k_f+k_max)]
 * (mod N). D_GI is a block of width k_f+k_max immediately left of the window
 * plus a block of width (k_f+k_max) + C*l_max immediately right, so any data
 * echo within the delay/Doppler bounds stays clear of the window. A null
 * budget above the minimum widens D_GI by symmetric pairs (an odd remainder
 * is left to data).
 *
 * Throws ConfigError when C*l_max is not an integer, m0 is out of range, or
 * round(rho*N) cannot cover the minimum pilot+null count.
 */
FrameLayout build_layout(const FrameConfig& cfg, const ChirpParams& params);

/** DAFT-domain symbol vector together with the layout that shaped it. */
struct DaftFrame {
    CVec x;
    FrameLayout layout;
};

/**
 * Place sqrt(boost) at m0, the given unit-power data symbols over D_data in
 * ascending index order, and zeros on the guard sets.
 */
DaftFrame assemble_frame(const FrameLayout& layout, const CVec& data);

/** Same, filling D_data with random QPSK symbols drawn from rng. */
DaftFrame assemble_frame(const FrameLayout& layout, RngStream& rng);

/// |D_data| unit-power QPSK symbols (+-1 +- i)/sqrt(2).
CVec random_qpsk(std::size_t count, RngStream& rng);

/** Slice the pilot observation window out of a full DAFT-domain vector. */
CVec extract_pilot_slice(const CVec& y_tot, const FrameLayout& layout);

}  // namespace afdm
