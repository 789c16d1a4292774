// chirp_time.hpp - Continuous-time frame signal with piecewise chirp phases
#pragma once

#include <cstddef>
#include <vector>

#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"

namespace afdm {

/**
 * Wrap-boundary guard: pieces are closed-left, but a breakpoint reconstructed
 * through inexact arithmetic can land a ulp below its boundary. All piece
 * classification nudges the piece coordinate by this fraction of a piece;
 * integer sample coordinates are unaffected.
 */
inline constexpr double kPieceBoundaryEps = 1e-9;

/**
 * Frequency-wrap partition of [0, T) for one chirp index m.
 *
 * Chirp m sweeps upward at slope C subcarrier spacings per frame; each time
 * its instantaneous frequency reaches the band edge 1/dt it wraps back by
 * exactly 1/dt. Breakpoints:
 *   t_{m,0} = 0,
 *   t_{m,q} = ((N-m)/(2*N*c1) + (q-1)/(2*c1)) * dt for q >= 1,
 * kept while < T. Successive breakpoints are dt/(2*c1) apart.
 */
struct ChirpPartition {
    std::size_t m = 0;
    std::vector<double> t;  // breakpoint times in seconds, t[0] = 0
    std::vector<long> n;    // sample breakpoints floor(t/dt)
};

ChirpPartition partition(std::size_t m, const ChirpParams& p);

/**
 * Number of band wraps chirp m has undergone by time t (the piece index q).
 * Closed-left convention: t exactly at a breakpoint belongs to the higher q.
 */
int piece_index(std::size_t m, double t, const ChirpParams& p);

/**
 * Same in normalized time u = t/dt in [0, N): q = floor((u*C + m)/N), with
 * the boundary nudge that keeps the closed-left convention stable.
 */
int piece_index_u(double u, std::size_t m, const ChirpParams& p);

/**
 * Instantaneous phase of chirp m in cycles:
 *   phi_m(t) = c1*(t/dt)^2 + (m/T)*t - q*(t/dt)
 * with q from piece_index. Throws std::domain_error outside [0, T).
 */
double phi(std::size_t m, double t, const ChirpParams& p);

/**
 * Continuous-time frame signal
 *   s(t) = (1/sqrt(T)) sum_m x[m] exp(i 2 pi (c2 m^2 + phi_m(t)))
 * on [0, T), extended chirp-periodically to [-M*dt, 0) the same way the
 * discrete prefix extends s[n]. Satisfies sqrt(dt)*s(n*dt) = s[n].
 *
 * Evaluation is O(N) per point with one table pass (or O(|support|) when the
 * frame is mostly nulls, as in pilot-only sensing frames).
 */
class ContinuousSignal {
public:
    ContinuousSignal(CVec x, const ChirpParams& p);

    /// s(t) for t in [0, T).
    cd eval(double t) const;

    /// Chirp-periodic extension on [-M*dt, T).
    cd eval_cpp(double t) const;

    const ChirpParams& params() const { return p_; }

private:
    ChirpParams p_;
    CVec b_;                           // x[m] * exp(i 2 pi c2 m^2)
    std::vector<std::size_t> support_; // nonzero positions when sparse
    bool sparse_ = false;
};

/// One-off direct evaluation (same value as ContinuousSignal::eval).
cd eval_s(double t, const CVec& x, const ChirpParams& p);

/// One-off direct evaluation of the chirp-periodic extension.
cd eval_s_cpp(double t, const CVec& x, const ChirpParams& p);

}  // namespace afdm
