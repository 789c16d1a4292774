// sic.hpp - Analog-style self-interference cancellation front-end model
#pragma once

#include <cstddef>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"
#include "afdm/frame.hpp"

namespace afdm {

/**
 * Stand-in for the analog receive domain: one frame with its prefix on
 * [-M*dt, T), sampled at rate l_os/dt. samples[j] corresponds to
 * t = (j/l_os - M)*dt and stores sqrt(dt)*r(t), the same normalization as
 * the digital receive samples, so decimating the body (the last l_os*N
 * samples) by l_os at offset 0 reproduces r[n] exactly.
 */
struct OversampledFrame {
    CVec samples;          // l_os*(M+N) values covering [-M*dt, T)
    std::size_t l_os = 1;  // oversampling factor
    double dt_os = 0.0;    // sample period dt/l_os
};

/** sqrt(dt)*s_cpp(t) over [-M*dt, T) for the DAFT-domain frame x. */
OversampledFrame oversample_tx(const CVec& x, const ChirpParams& p,
                               std::size_t l_os);

/**
 * Analog-domain received frame: every target echo (and the direct path h0
 * when present) evaluated through the closed-form transmit signal,
 *   sqrt(dt) * sum_i h_i exp(-i 2 pi f_i t) s_cpp(t - tau_i),
 * with contributions before the prefix start treated as zero. Noise is not
 * added here; see add_noise_os.
 */
OversampledFrame oversample_scene(const CVec& x, const Scene& scene,
                                  const ChirpParams& p, std::size_t l_os);

/**
 * Adds CN(0, N0*l_os) per oversampled sample: the variance scales with l_os
 * so the noise spectral density matches a digital receiver with per-sample
 * power N0. After the passband filter and decimation roughly twice the
 * central-band density folds into each kept bin (the edge bands alias onto
 * the central band); no re-whitening is applied.
 */
OversampledFrame add_noise_os(const OversampledFrame& sig, double N0,
                              RngStream& rng);

/**
 * Multiply by the conjugate pilot-chirp reference R(t), where
 *   R(t) = (1/sqrt(T)) exp(i 2 pi Phi_{m0}(t))            on [0, T)
 * extended over the prefix by the same chirp-periodic law as the transmit
 * signal, so the direct path h0*s_cpp dechirps to an exact constant across
 * the whole record. Echoes of chirp m become piecewise tones at offset
 * (m - m0 - l_eq)/T with residual jumps of +-1/dt at the frequency-wrap
 * boundaries.
 */
OversampledFrame dechirp(const OversampledFrame& r_os, std::size_t m0,
                         const ChirpParams& p);

/**
 * Passband mask on the l_os*N-point DFT of the frame body.
 *
 * Bins hold frequencies k/T for k = 0..l_os*N-1 (negative frequencies at the
 * top). With w_lo/w_hi the pilot window reach below/above m0:
 *
 *   central  {-w_lo..w_hi}: the pilot echo band around DC, |P_GI|+1 bins
 *   upper    {N-w_lo..N-1}: image of the negative half next to +1/dt, where
 *            the wrap jumps of chirps below the pilot land
 *   lower    {l_os*N-N+1..l_os*N-N+w_hi}: image of the positive half next
 *            to -1/dt, for chirps above the pilot
 *
 * DC carries no image (the pilot never wraps against itself), so the total
 * passband is 2*(|P_GI|+1) - 1 bins. Decimation by l_os later folds both
 * edge bands exactly onto the digital frequencies their central-band
 * counterparts occupy.
 */
struct BandPlan {
    std::size_t N = 0;
    std::size_t l_os = 0;
    std::vector<std::size_t> central;  // sorted DFT bins on the l_os*N grid
    std::vector<std::size_t> upper;
    std::vector<std::size_t> lower;

    /// All passband bins of the three bands combined, sorted.
    std::vector<std::size_t> all_bins() const;
};

/**
 * Build the three-band plan for a layout. Requires l_os >= 2 (the edge bands
 * must be representable above the digital band edge) and checks that no
 * passband bin collides with the tone pair {d, d-N}/T of any data or guard
 * chirp at window offset d; a collision means the layout guards are
 * inconsistent with the plan and raises ConfigError.
 */
BandPlan make_band_plan(const FrameLayout& layout, const ChirpParams& p,
                        std::size_t l_os);

/**
 * DC blocker plus ideal brick-wall mask: zero the 0-frequency bin of the
 * body DFT, zero every bin outside the plan's passbands, transform back.
 * The prefix interval of the output is zeroed; the stage acts on the
 * synchronized frame body that later stages consume.
 */
OversampledFrame tri_band_filter(const OversampledFrame& sig,
                                 const BandPlan& plan, const ChirpParams& p);

/**
 * Decimate the body to rate 1/dt (folding the edge bands onto the central
 * band's digital frequencies), apply the N-point DFT and keep the pilot
 * window bins. The identity
 *   y[m] = sqrt(dt) * exp(-i 2 pi c2 m^2) * X[(m - m0) mod N]
 * maps the DFT of the decimated dechirped stream onto the digital
 * demodulator output, so the result is directly comparable with
 * extract_pilot_slice of the digital receive chain (ordered as
 * FrameLayout::pilot_window).
 */
CVec to_pilot_vector(const OversampledFrame& sig, const FrameLayout& layout,
                     const ChirpParams& p);

/**
 * Power accounting of one front-end pass, resolved per component by
 * linearity: each of the direct path, the data echoes and the pilot echoes
 * is pushed through the chain separately and measured in the pilot vector
 * before (dechirp only) and after (dechirp + DC blocker + passband mask)
 * filtering.
 */
struct SicDiagnostics {
    double si_before = 0.0;      // direct-path power in y_p, unfiltered
    double si_after = 0.0;       // direct-path residual in y_p after the mask
    double data_before = 0.0;    // data-echo power in y_p, unfiltered
    double data_after = 0.0;     // data-echo residual in y_p after the mask
    double desired_power = 0.0;  // pilot-echo power in y_p after the mask
};

/** Pilot vector via the analog front-end plus its power diagnostics. */
struct SicResult {
    CVec y_p;
    SicDiagnostics diag;
};

/**
 * Full front-end pass: synthesize the analog-domain components of the scene
 * (pilot echoes, data echoes, direct path), add noise when rng is given and
 * scene.N0 > 0, then dechirp, filter and reduce the composite to the pilot
 * vector. Diagnostics come from running each noise-free component through
 * the same stages separately.
 */
SicResult run_sic(const DaftFrame& frame, const Scene& scene,
                  const ChirpParams& p, std::size_t l_os,
                  RngStream* rng = nullptr);

/**
 * Suppression figures in dB: 10*log10(before/after) for the direct path and
 * the data echoes, clamped to [-150, 150] (a zero residual reads exactly
 * +150, the documented floor of measurability). A zero "before" reports
 * 0 dB.
 */
struct SiReport {
    double si_suppression_db = 0.0;
    double data_suppression_db = 0.0;
    double desired_power = 0.0;
};

SiReport si_report(const SicDiagnostics& diag);

}  // namespace afdm
