// sensing.hpp - DAFT-domain channel operator, matched-filter metric and search
#pragma once

#include <cstddef>
#include <vector>

#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"
#include "afdm/frame.hpp"

namespace afdm {

/**
 * WholeFrame uses all N input/output symbols; PilotOnly restricts the
 * operator to column m0 and the rows of the pilot observation window.
 */
enum class SensingMode { WholeFrame, PilotOnly };

/**
 * Input/output coupling factor of the DAFT-domain channel at (tau, f):
 *
 *   F(m, m') = sum_n exp(i 2 pi n (m' - m - l_eq) / N)
 *                    * exp(i 2 pi iota q_{m'}((n - tau/dt) mod N))
 *
 * where l_eq = T f + C tau/dt, iota is the fractional delay, and q_{m'} is
 * the frequency-wrap count of transmit chirp m'. For iota = 0 the sum
 * collapses to a Dirichlet ratio; for integer l_eq it is N on the diagonal
 * m' = m + l_eq (mod N) and zero elsewhere.
 */
cd kernel_F(std::size_t m, std::size_t m_prime, double tau, double f,
            const ChirpParams& p);

/**
 * Materialized channel operator. Whole-frame: dense N x N. Pilot-only:
 * single column m0 restricted to the pilot window rows, in window order.
 */
struct Operator {
    SensingMode mode = SensingMode::WholeFrame;
    std::size_t rows = 0;
    std::size_t cols = 0;
    CVec data;                      // row-major, rows x cols
    std::vector<std::size_t> row_index;  // absolute DAFT index per row

    const cd& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    /// y = H x; x has `cols` entries (whole frame: x, pilot-only: {x[m0]}).
    CVec apply(const CVec& x) const;
};

/**
 * Build H(tau, f) with entries
 *   (1/N) exp(i 2 pi (c1 (tau/dt)^2 - c2 (m^2 - m'^2) - (tau/dt) m' / N)) F(m, m').
 * The layout is only consulted in pilot-only mode.
 */
Operator build_H(double tau, double f, const ChirpParams& p, SensingMode mode,
                 const FrameLayout* layout = nullptr);

/**
 * Matched-filter metric |x^H H^H(tau, f) y|^2 = |<H x, y>|^2.
 * Reference implementation via build_H; the engine below is algebraically
 * identical but reuses per-observation transforms.
 */
double metric(const CVec& y, const CVec& x, double tau, double f,
              const ChirpParams& p, SensingMode mode,
              const FrameLayout* layout = nullptr);

/**
 * Fast metric evaluator for one observation.
 *
 * At construction one inverse FFT moves the observation into the time
 * domain; each metric() call then costs O(N) in pilot-only mode and O(N^2)
 * (O(N log N) for integer delays) in whole-frame mode.
 */
class MetricEngine {
public:
    MetricEngine(const CVec& y, const DaftFrame& frame, const ChirpParams& p,
                 SensingMode mode);

    double operator()(double tau, double f) const;

    std::size_t evals() const { return evals_; }

private:
    double whole_frame(double tau, double f) const;
    double pilot_only(double tau, double f) const;

    ChirpParams p_;
    SensingMode mode_;
    std::size_t m0_ = 0;
    CVec w_;        // unnormalized inverse DFT of c2-dechirped observation
    CVec g_;        // c2-prechirped frame symbols (whole-frame mode)
    cd pilot_sym_{0.0, 0.0};
    CVec omega_;    // exp(i 2 pi j / N) table
    mutable std::size_t evals_ = 0;
};

/** Search-space description for the delay/Doppler estimator. */
struct GridSpec {
    int l_max = 0;       // delays 0..l_max samples, coarse step 1
    int k_max = 0;       // Dopplers -k_max..k_max bins, coarse step 1
    double d_tau = 1.0;  // fine delay step in samples, (0, 1]
    double d_f = 1.0;    // fine Doppler step in bins, (0, 1]

    /**
     * TwoStage: integer-grid sweep, pick P separated peaks, refine each on a
     * +-1-bin local fine grid. FullFine: sweep the entire plane at the fine
     * steps and pick P separated peaks directly.
     */
    enum class Strategy { TwoStage, FullFine };
    Strategy strategy = Strategy::TwoStage;

    void validate() const;
};

struct TargetEstimate {
    double tau = 0.0;     // s
    double f = 0.0;       // Hz
    double metric = 0.0;
};

struct SensingEstimate {
    std::vector<TargetEstimate> targets;  // sorted by metric, descending
    bool degraded = false;  // fewer well-separated coarse peaks than targets
    std::size_t metric_evals = 0;
};

/**
 * Delay/Doppler search for P targets. Peak picking uses an exclusion zone of
 * +-1 coarse bin per dimension; ties break toward smaller delay, then smaller
 * Doppler. If fewer than P separated peaks exist the remainder is filled
 * best-effort and the result is flagged degraded.
 */
SensingEstimate estimate(const CVec& y, const DaftFrame& frame, const GridSpec& grid,
                         std::size_t P, const ChirpParams& p, SensingMode mode);

struct PhysicalEstimate {
    double range_m = 0.0;
    double velocity_mps = 0.0;
};

/** Monostatic conversion r = c tau / 2, v = c f / (2 f_c). */
PhysicalEstimate to_range_velocity(const TargetEstimate& est, double f_c);

}  // namespace afdm
