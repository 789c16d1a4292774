// experiment.hpp - Seeded Monte Carlo sweeps, RMSE aggregation and throughput
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"
#include "afdm/frame.hpp"
#include "afdm/sensing.hpp"

namespace afdm {

inline constexpr const char* kVersionString = "afdm-isac 0.1.0";

/**
 * Everything one sensing experiment needs: frame geometry, chirp timing,
 * search grid, scene statistics and the sweep protocol.
 *
 * SNR is defined against the unit echo scale: target gains are CN(0, 1),
 * frame symbols average unit power, and a sweep point at S dB uses noise
 * power N0 = 10^(-S/10) per digital sample (the oversampled front-end draws
 * the matching spectral density). The direct path enters only when sic is
 * on, si_power_db above the unit echo scale with a per-trial random phase.
 */
struct ExperimentConfig {
    FrameConfig frame;       // frame.N is the authoritative transform size
    std::size_t M = 16;      // prefix length in samples
    double c1 = -1.0;        // negative selects (k_f + k_max) / N
    double c2 = 0.0;
    double dt = 1.0 / 30.72e6;

    double d_tau = 1.0;      // fine delay step in samples
    double d_f = 1.0;        // fine Doppler step in bins
    GridSpec::Strategy strategy = GridSpec::Strategy::TwoStage;

    std::size_t P = 2;             // targets per scene, 1..4
    double tau_max = -1.0;         // negative selects l_max * dt
    double f_max = -1.0;           // negative selects k_max / T
    bool integer_shifts = false;   // snap scene draws to the coarse grid

    std::vector<double> snr_db = {20.0};
    std::size_t trials = 1;
    SensingMode mode = SensingMode::PilotOnly;
    bool sic = false;              // route through the analog front-end model
    std::size_t l_os = 8;          // front-end oversampling when sic is on
    double si_power_db = 30.0;     // direct-path power over the echo scale
    double f_c = 79.0e9;           // carrier for range/velocity conversion
    std::uint64_t seed = 1;
    std::size_t threads = 1;

    ChirpParams chirp() const;
    GridSpec grid_spec() const;
    double effective_tau_max() const;
    double effective_f_max() const;

    /// Throws ConfigError on inconsistent settings (see implementation).
    void validate() const;
};

/** Signed estimation errors for one matched target. */
struct TargetError {
    double range_m = 0.0;
    double velocity_mps = 0.0;
    double delay_samples = 0.0;  // (tau_est - tau_true) / dt
    double doppler_bins = 0.0;   // (f_est - f_true) * T
};

struct TrialResult {
    std::vector<TargetError> errors;  // one entry per true target
    bool degraded = false;
};

/** Full record of one trial, for dumps and front-end demos. */
struct TrialRecord {
    DaftFrame frame;      // transmitted frame (layout + symbols)
    Scene scene;          // generated targets and, when sic is on, direct path
    double N0 = 0.0;      // noise power at this SNR point
    SensingEstimate estimate;
    TrialResult result;
};

/**
 * Match estimates to true targets by the assignment minimizing the total
 * squared normalized error sum((d_tau/dt)^2 + (d_f*T)^2), exhaustively over
 * permutations (P <= 4), and return the signed per-target errors.
 */
std::vector<TargetError> match_to_truth(const std::vector<TargetEstimate>& est,
                                        const std::vector<Target>& truth,
                                        const ChirpParams& p, double f_c);

/**
 * One seeded trial at one SNR point: generate the scene and data (per-trial
 * rng streams independent of the SNR, so sweep points share the same random
 * draws), apply the channel and noise, route through either the digital
 * receive chain or the analog front-end model, estimate and match.
 */
TrialResult run_trial(const ExperimentConfig& cfg, double snr_db,
                      std::size_t trial_index);

/** run_trial plus the frame, scene and raw estimates it worked with. */
TrialRecord run_trial_detailed(const ExperimentConfig& cfg, double snr_db,
                               std::size_t trial_index);

/** The noise stream a given trial consumes, for stage-by-stage replays. */
RngStream trial_noise_stream(const ExperimentConfig& cfg,
                             std::size_t trial_index);

struct RmseRow {
    double snr_db = 0.0;
    double range_rmse_m = 0.0;
    double velocity_rmse_mps = 0.0;
    std::size_t trials = 0;
    SensingMode mode = SensingMode::PilotOnly;
    double overhead = 0.0;
    std::size_t degraded_trials = 0;
};

struct RmseTable {
    std::vector<RmseRow> rows;  // one per SNR point, in config order
};

/**
 * Full sweep: `trials` independent trials per SNR point, executed by a
 * worker pool of cfg.threads and reduced in trial-index order, so the output
 * is identical for any worker count.
 */
RmseTable run_sweep(const ExperimentConfig& cfg);

/** Raw data rate |D_data| * modulation_bits / ((N + M) * dt) in bits/s. */
double throughput(const ExperimentConfig& cfg);

/** Simulation settings of the reference measurement campaign. */
ExperimentConfig table1_config();

/** Smaller configuration for desk-scale Monte Carlo runs. */
ExperimentConfig desk_config();

/**
 * Plain-text configuration: `key = value` lines under [frame], [chirp],
 * [grid], [scene] and [sweep] sections, # or ; comments. Unknown keys are
 * rejected. See README for the full key list.
 */
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/** CSV serialization: header plus one row per SNR point. */
std::string rmse_csv(const RmseTable& table);

/** JSON serialization with full provenance: config echo, seed, version. */
std::string rmse_json(const ExperimentConfig& cfg, const RmseTable& table);

}  // namespace afdm
