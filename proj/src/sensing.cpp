// sensing.cpp - Channel operator construction, metric engine and grid search
#include "afdm/sensing.hpp"

#include <algorithm>
#include <cmath>

#include "afdm/channel.hpp"
#include "afdm/chirp_time.hpp"
#include "afdm/fft.hpp"

namespace afdm {

namespace {

constexpr double kIntegerTol = 1e-12;  // treat |iota| below this as integer delay

void check_bounds(double tau, double f, const ChirpParams& p, const char* what) {
    if (tau < 0.0 || tau > static_cast<double>(p.M) * p.dt)
        throw ConfigError(std::string(what) + ": delay outside [0, M*dt]");
    if (std::abs(f) * p.dt > 0.5)
        throw ConfigError(std::string(what) + ": Doppler beyond half the sample rate");
}

// Wrap n - lv into [0, N); lv is within (-N, N) here so one add suffices.
inline double wrap_u(double v, double N) {
    return v < 0.0 ? v + N : v;
}

// cis(iota * q) for q = 0 .. ceil(C)+1, the range the wrap count can take.
CVec iota_table(double iota, const ChirpParams& p) {
    const int qmax = static_cast<int>(std::ceil(p.C())) + 1;
    CVec qt(static_cast<std::size_t>(qmax) + 1);
    for (int q = 0; q <= qmax; ++q)
        qt[static_cast<std::size_t>(q)] = cis_cycles(iota * static_cast<double>(q));
    return qt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernel and operator
// ---------------------------------------------------------------------------

cd kernel_F(std::size_t m, std::size_t m_prime, double tau, double f,
            const ChirpParams& p) {
    p.validate();
    check_bounds(tau, f, p, "kernel_F");
    if (m >= p.N || m_prime >= p.N)
        throw ConfigError("kernel_F: symbol index out of range");
    const double N = static_cast<double>(p.N);
    const double lv = tau / p.dt;
    const double iota = split_shift(lv).frac;
    const double l_eq = p.T() * f + p.C() * lv;
    const double delta = static_cast<double>(m_prime) - static_cast<double>(m) - l_eq;

    if (std::abs(iota) < kIntegerTol) {
        // Geometric sum over n of cis(n delta / N).
        if (std::abs(std::remainder(delta, N)) < 1e-9) return cd{N, 0.0};
        return (cis_cycles(delta) - cd{1.0, 0.0}) / (cis_cycles(delta / N) - cd{1.0, 0.0});
    }

    cd acc{0.0, 0.0};
    for (std::size_t n = 0; n < p.N; ++n) {
        const double u = wrap_u(static_cast<double>(n) - lv, N);
        const int q = piece_index_u(u, m_prime, p);
        acc += cis_cycles(static_cast<double>(n) * delta / N +
                          iota * static_cast<double>(q));
    }
    return acc;
}

CVec Operator::apply(const CVec& x) const {
    if (x.size() != cols) throw ConfigError("Operator::apply: length mismatch");
    CVec y(rows, cd{0.0, 0.0});
    for (std::size_t r = 0; r < rows; ++r) {
        cd acc{0.0, 0.0};
        const cd* row = data.data() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
    return y;
}

Operator build_H(double tau, double f, const ChirpParams& p, SensingMode mode,
                 const FrameLayout* layout) {
    p.validate();
    check_bounds(tau, f, p, "build_H");
    const std::size_t N = p.N;
    const double dN = static_cast<double>(N);
    const double lv = tau / p.dt;
    const double iota = split_shift(lv).frac;
    const double l_eq = p.T() * f + p.C() * lv;
    const bool integer_delay = std::abs(iota) < kIntegerTol;
    const auto qt = iota_table(iota, p);

    Operator H;
    H.mode = mode;
    if (mode == SensingMode::PilotOnly) {
        if (layout == nullptr)
            throw ConfigError("build_H: pilot-only mode requires a layout");
        H.row_index = layout->pilot_window();
        H.rows = H.row_index.size();
        H.cols = 1;
    } else {
        H.rows = N;
        H.cols = N;
        H.row_index.resize(N);
        for (std::size_t m = 0; m < N; ++m) H.row_index[m] = m;
    }
    H.data.assign(H.rows * H.cols, cd{0.0, 0.0});

    // Column m' of F as the forward DFT of
    //   b[n] = cis(iota q_{m'}(u_n)) cis(n (m' - l_eq) / N).
    CVec b(N);
    const std::size_t col_lo = (mode == SensingMode::PilotOnly) ? layout->m0 : 0;
    const std::size_t col_hi = (mode == SensingMode::PilotOnly) ? layout->m0 + 1 : N;
    for (std::size_t mp = col_lo; mp < col_hi; ++mp) {
        const double dmp = static_cast<double>(mp);
        for (std::size_t n = 0; n < N; ++n) {
            const double dn = static_cast<double>(n);
            cd a{1.0, 0.0};
            if (!integer_delay) {
                const double u = wrap_u(dn - lv, dN);
                a = qt[static_cast<std::size_t>(piece_index_u(u, mp, p))];
            }
            b[n] = a * cis_cycles(dn * (dmp - l_eq) / dN);
        }
        fft::forward(b);
        const cd col_fac =
            cis_cycles(p.c1 * lv * lv + p.c2 * dmp * dmp - lv * dmp / dN) / dN;
        const std::size_t c = mp - col_lo;
        for (std::size_t r = 0; r < H.rows; ++r) {
            const double dm = static_cast<double>(H.row_index[r]);
            H.data[r * H.cols + c] =
                col_fac * cis_cycles(-p.c2 * dm * dm) * b[H.row_index[r]];
        }
    }
    return H;
}

double metric(const CVec& y, const CVec& x, double tau, double f,
              const ChirpParams& p, SensingMode mode, const FrameLayout* layout) {
    const Operator H = build_H(tau, f, p, mode, layout);
    CVec xin;
    if (mode == SensingMode::PilotOnly) {
        if (layout == nullptr) throw ConfigError("metric: pilot-only needs a layout");
        if (x.size() == p.N)
            xin = {x[layout->m0]};
        else if (x.size() == 1)
            xin = x;
        else
            throw ConfigError("metric: pilot input must be the frame or a scalar");
    } else {
        xin = x;
    }
    const CVec hx = H.apply(xin);
    if (y.size() != hx.size()) throw ConfigError("metric: observation length mismatch");
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < hx.size(); ++i) acc += std::conj(hx[i]) * y[i];
    return std::norm(acc);
}

// ---------------------------------------------------------------------------
// Metric engine
// ---------------------------------------------------------------------------

MetricEngine::MetricEngine(const CVec& y, const DaftFrame& frame,
                           const ChirpParams& p, SensingMode mode)
    : p_(p), mode_(mode), m0_(frame.layout.m0) {
    p_.validate();
    const std::size_t N = p_.N;
    if (frame.x.size() != N) throw ConfigError("MetricEngine: frame length mismatch");
    pilot_sym_ = frame.x[m0_];

    // Time-domain image of the c2-dechirped observation. For pilot-only mode
    // the observation is the pilot window slice; all other rows are zero.
    CVec z(N, cd{0.0, 0.0});
    if (mode_ == SensingMode::WholeFrame) {
        if (y.size() != N) throw ConfigError("MetricEngine: expected N observations");
        for (std::size_t m = 0; m < N; ++m) {
            const double dm = static_cast<double>(m);
            z[m] = cis_cycles(p_.c2 * dm * dm) * y[m];
        }
        g_.resize(N);
        for (std::size_t m = 0; m < N; ++m) {
            const double dm = static_cast<double>(m);
            g_[m] = cis_cycles(p_.c2 * dm * dm) * frame.x[m];
        }
    } else {
        const auto window = frame.layout.pilot_window();
        if (y.size() != window.size())
            throw ConfigError("MetricEngine: expected a pilot window slice");
        for (std::size_t pos = 0; pos < window.size(); ++pos) {
            const double dm = static_cast<double>(window[pos]);
            z[window[pos]] = cis_cycles(p_.c2 * dm * dm) * y[pos];
        }
    }
    w_ = z;
    fft::inverse(w_);

    omega_.resize(N);
    for (std::size_t j = 0; j < N; ++j)
        omega_[j] = cis_cycles(static_cast<double>(j) / static_cast<double>(N));
}

double MetricEngine::operator()(double tau, double f) const {
    check_bounds(tau, f, p_, "MetricEngine");
    ++evals_;
    return mode_ == SensingMode::WholeFrame ? whole_frame(tau, f) : pilot_only(tau, f);
}

double MetricEngine::pilot_only(double tau, double f) const {
    const std::size_t N = p_.N;
    const double dN = static_cast<double>(N);
    const double lv = tau / p_.dt;
    const double iota = split_shift(lv).frac;
    const double l_eq = p_.T() * f + p_.C() * lv;
    const auto qt = iota_table(iota, p_);

    cd acc{0.0, 0.0};
    cd lphase{1.0, 0.0};
    const cd lstep = cis_cycles(l_eq / dN);
    std::size_t idx = 0;
    for (std::size_t n = 0; n < N; ++n) {
        const double u = wrap_u(static_cast<double>(n) - lv, dN);
        const cd b = qt[static_cast<std::size_t>(piece_index_u(u, m0_, p_))] *
                     omega_[idx];
        acc += std::conj(b) * (w_[n] * lphase);
        lphase *= lstep;
        idx += m0_;
        if (idx >= N) idx -= N;
    }
    const double scale = std::abs(pilot_sym_) / dN;
    return std::norm(acc) * scale * scale;
}

double MetricEngine::whole_frame(double tau, double f) const {
    const std::size_t N = p_.N;
    const double dN = static_cast<double>(N);
    const double C = p_.C();
    const double lv = tau / p_.dt;
    const double iota = split_shift(lv).frac;
    const double l_eq = p_.T() * f + p_.C() * lv;
    const bool integer_delay = std::abs(iota) < kIntegerTol;
    const auto qt = iota_table(iota, p_);

    // Per-point column factors cis(-lv m' / N); the global cis(c1 lv^2)
    // phase drops under the squared modulus.
    CVec gp(N);
    cd cph{1.0, 0.0};
    const cd cstep = cis_cycles(-lv / dN);
    for (std::size_t mp = 0; mp < N; ++mp) {
        gp[mp] = g_[mp] * cph;
        cph *= cstep;
    }

    cd acc{0.0, 0.0};
    cd lphase{1.0, 0.0};
    const cd lstep = cis_cycles(l_eq / dN);

    if (integer_delay) {
        // All wrap factors are 1: G is a single inverse DFT of the columns.
        CVec G = gp;
        fft::inverse(G);
        for (std::size_t n = 0; n < N; ++n) {
            acc += std::conj(G[n]) * (w_[n] * lphase);
            lphase *= lstep;
        }
        return std::norm(acc) / (dN * dN);
    }

    for (std::size_t n = 0; n < N; ++n) {
        const double u = wrap_u(static_cast<double>(n) - lv, dN);
        const double uC = u * C;
        const int q0 = piece_index_u(u, 0, p_);
        double ms = std::ceil(dN * (static_cast<double>(q0) + 1.0 - kPieceBoundaryEps) -
                              uC);
        if (ms < 0.0) ms = 0.0;
        if (ms > dN) ms = dN;
        const auto split = static_cast<std::size_t>(ms);

        cd s1{0.0, 0.0}, s2{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t mp = 0; mp < split; ++mp) {
            s1 += gp[mp] * omega_[idx];
            idx += n;
            if (idx >= N) idx -= N;
        }
        for (std::size_t mp = split; mp < N; ++mp) {
            s2 += gp[mp] * omega_[idx];
            idx += n;
            if (idx >= N) idx -= N;
        }
        const cd G = qt[static_cast<std::size_t>(q0)] * s1 +
                     qt[static_cast<std::size_t>(q0) + 1] * s2;
        acc += std::conj(G) * (w_[n] * lphase);
        lphase *= lstep;
    }
    return std::norm(acc) / (dN * dN);
}

// ---------------------------------------------------------------------------
// Grid search
// ---------------------------------------------------------------------------

void GridSpec::validate() const {
    if (l_max < 0 || k_max < 0) throw ConfigError("GridSpec: negative ranges");
    if (d_tau <= 0.0 || d_tau > 1.0 || d_f <= 0.0 || d_f > 1.0)
        throw ConfigError("GridSpec: fine steps must lie in (0, 1]");
}

namespace {

struct GridPoint {
    double lu = 0.0;  // delay in samples
    double ku = 0.0;  // Doppler in bins
    double metric = -1.0;
};

// Pick up to P peaks with a +-1-bin exclusion zone per dimension. Points are
// pre-sorted in (lu asc, ku asc) scan order; strict comparison makes ties
// resolve toward smaller delay, then smaller Doppler.
std::vector<std::size_t> pick_peaks(const std::vector<GridPoint>& pts, std::size_t P,
                                    bool& degraded) {
    std::vector<std::size_t> chosen;
    std::vector<char> excluded(pts.size(), 0);
    while (chosen.size() < P) {
        double best = -1.0;
        std::size_t best_i = pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!excluded[i] && pts[i].metric > best) {
                best = pts[i].metric;
                best_i = i;
            }
        }
        if (best_i == pts.size()) break;
        chosen.push_back(best_i);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (std::abs(pts[i].lu - pts[best_i].lu) <= 1.0 + 1e-9 &&
                std::abs(pts[i].ku - pts[best_i].ku) <= 1.0 + 1e-9)
                excluded[i] = 1;
        }
    }
    if (chosen.size() < P) {
        degraded = true;
        // Best-effort fill from the remaining points, highest metric first.
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (std::find(chosen.begin(), chosen.end(), i) == chosen.end())
                rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
            return pts[a].metric > pts[b].metric;
        });
        for (std::size_t i : rest) {
            if (chosen.size() == P) break;
            chosen.push_back(i);
        }
    }
    return chosen;
}

}  // namespace

SensingEstimate estimate(const CVec& y, const DaftFrame& frame, const GridSpec& grid,
                         std::size_t P, const ChirpParams& p, SensingMode mode) {
    grid.validate();
    if (P < 1) throw ConfigError("estimate: target count must be positive");
    const MetricEngine eng(y, frame, p, mode);
    const double T = p.T();

    SensingEstimate out;

    const auto fine_value = [&](double lu, double ku) {
        return eng(lu * p.dt, ku / T);
    };

    if (grid.strategy == GridSpec::Strategy::FullFine) {
        std::vector<GridPoint> pts;
        const auto steps_l = static_cast<std::size_t>(
            std::floor(static_cast<double>(grid.l_max) / grid.d_tau + 1e-9));
        const auto steps_k = static_cast<std::size_t>(
            std::floor(2.0 * static_cast<double>(grid.k_max) / grid.d_f + 1e-9));
        pts.reserve((steps_l + 1) * (steps_k + 1));
        for (std::size_t i = 0; i <= steps_l; ++i) {
            const double lu =
                std::min(static_cast<double>(i) * grid.d_tau,
                         static_cast<double>(grid.l_max));
            for (std::size_t j = 0; j <= steps_k; ++j) {
                const double ku =
                    std::min(-static_cast<double>(grid.k_max) +
                                 static_cast<double>(j) * grid.d_f,
                             static_cast<double>(grid.k_max));
                pts.push_back({lu, ku, fine_value(lu, ku)});
            }
        }
        const auto chosen = pick_peaks(pts, P, out.degraded);
        for (auto i : chosen)
            out.targets.push_back({pts[i].lu * p.dt, pts[i].ku / T, pts[i].metric});
    } else {
        // Stage 1: integer grid.
        std::vector<GridPoint> coarse;
        coarse.reserve(static_cast<std::size_t>(grid.l_max + 1) *
                       static_cast<std::size_t>(2 * grid.k_max + 1));
        for (int l = 0; l <= grid.l_max; ++l)
            for (int k = -grid.k_max; k <= grid.k_max; ++k)
                coarse.push_back({static_cast<double>(l), static_cast<double>(k),
                                  fine_value(static_cast<double>(l),
                                             static_cast<double>(k))});
        const auto chosen = pick_peaks(coarse, P, out.degraded);

        // Stage 2: local refinement, +-1 coarse bin, clamped to the ranges.
        for (auto ci : chosen) {
            const double l0 = coarse[ci].lu;
            const double k0 = coarse[ci].ku;
            const int span_l = static_cast<int>(std::ceil(1.0 / grid.d_tau - 1e-9));
            const int span_k = static_cast<int>(std::ceil(1.0 / grid.d_f - 1e-9));
            GridPoint best{l0, k0, coarse[ci].metric};
            for (int i = -span_l; i <= span_l; ++i) {
                double lu = l0 + static_cast<double>(i) * grid.d_tau;
                lu = std::clamp(lu, 0.0, static_cast<double>(grid.l_max));
                for (int j = -span_k; j <= span_k; ++j) {
                    double ku = k0 + static_cast<double>(j) * grid.d_f;
                    ku = std::clamp(ku, -static_cast<double>(grid.k_max),
                                    static_cast<double>(grid.k_max));
                    if (i == 0 && j == 0) continue;  // coarse value already known
                    const double v = fine_value(lu, ku);
                    if (v > best.metric) best = {lu, ku, v};
                }
            }
            out.targets.push_back({best.lu * p.dt, best.ku / T, best.metric});
        }
    }

    std::sort(out.targets.begin(), out.targets.end(),
              [](const TargetEstimate& a, const TargetEstimate& b) {
                  if (a.metric != b.metric) return a.metric > b.metric;
                  if (a.tau != b.tau) return a.tau < b.tau;
                  return a.f < b.f;
              });
    out.metric_evals = eng.evals();
    return out;
}

PhysicalEstimate to_range_velocity(const TargetEstimate& est, double f_c) {
    if (f_c <= 0.0) throw ConfigError("to_range_velocity: carrier must be positive");
    return {kSpeedOfLight * est.tau / 2.0,
            kSpeedOfLight * est.f / (2.0 * f_c)};
}

}  // namespace afdm
