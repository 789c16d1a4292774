// chirp_time.cpp - Piecewise chirp phases and the continuous frame signal
#include "afdm/chirp_time.hpp"

#include <cmath>
#include <stdexcept>

namespace afdm {

namespace {

void check_domain(double t, double lo, double hi, const char* what) {
    if (!(t >= lo && t < hi))
        throw std::domain_error(std::string(what) + ": t outside evaluation domain");
}

}  // namespace

ChirpPartition partition(std::size_t m, const ChirpParams& p) {
    p.validate();
    if (m >= p.N) throw ConfigError("partition: chirp index out of range");
    ChirpPartition out;
    out.m = m;
    out.t.push_back(0.0);
    if (p.c1 > 0.0) {
        const double T = p.T();
        const double first = (static_cast<double>(p.N - m) / (2.0 * p.N * p.c1)) * p.dt;
        const double step = p.dt / (2.0 * p.c1);
        for (int q = 1;; ++q) {
            const double tq = first + (q - 1) * step;
            if (tq >= T) break;
            out.t.push_back(tq);
        }
    }
    out.n.reserve(out.t.size());
    for (double tq : out.t)
        out.n.push_back(static_cast<long>(std::floor(tq / p.dt)));
    return out;
}

int piece_index(std::size_t m, double t, const ChirpParams& p) {
    check_domain(t, 0.0, p.T(), "piece_index");
    return piece_index_u(t / p.dt, m, p);
}

int piece_index_u(double u, std::size_t m, const ChirpParams& p) {
    return static_cast<int>(std::floor(
        (u * p.C() + static_cast<double>(m)) / static_cast<double>(p.N) + kPieceBoundaryEps));
}

double phi(std::size_t m, double t, const ChirpParams& p) {
    check_domain(t, 0.0, p.T(), "phi");
    const double u = t / p.dt;
    const int q = piece_index(m, t, p);
    return p.c1 * u * u + static_cast<double>(m) * u / static_cast<double>(p.N) -
           static_cast<double>(q) * u;
}

ContinuousSignal::ContinuousSignal(CVec x, const ChirpParams& p) : p_(p) {
    p_.validate();
    if (x.size() != p_.N) throw ConfigError("ContinuousSignal: expected N symbols");
    b_.resize(p_.N);
    for (std::size_t m = 0; m < p_.N; ++m) {
        const double mm = static_cast<double>(m);
        b_[m] = x[m] * cis_cycles(p_.c2 * mm * mm);
        if (x[m] != cd{0.0, 0.0}) support_.push_back(m);
    }
    sparse_ = support_.size() * 4 < p_.N;
}

cd ContinuousSignal::eval(double t) const {
    check_domain(t, 0.0, p_.T(), "ContinuousSignal::eval");
    const double N = static_cast<double>(p_.N);
    const double u = t / p_.dt;
    const double uC = u * p_.C();
    // All chirps share one of two wrap counts at any instant: q0 for
    // m < mstar, q0+1 above. Splitting the sum there leaves plain complex
    // exponentials in m.
    const double q0 = std::floor(uC / N + kPieceBoundaryEps);
    double mstar = std::ceil((q0 + 1.0 - kPieceBoundaryEps) * N - uC);
    if (mstar > N) mstar = N;
    if (mstar < 0.0) mstar = 0.0;

    cd s1{0.0, 0.0}, s2{0.0, 0.0};
    if (sparse_) {
        for (auto m : support_) {
            const cd term = b_[m] * cis_cycles(static_cast<double>(m) * u / N);
            (static_cast<double>(m) < mstar ? s1 : s2) += term;
        }
    } else {
        const cd w = cis_cycles(u / N);
        cd z{1.0, 0.0};
        const auto split = static_cast<std::size_t>(mstar);
        for (std::size_t m = 0; m < p_.N; ++m) {
            (m < split ? s1 : s2) += b_[m] * z;
            z *= w;
        }
    }
    const cd acc = cis_cycles(-q0 * u) * (s1 + cis_cycles(-u) * s2);
    return acc * (cis_cycles(p_.c1 * u * u) / std::sqrt(p_.T()));
}

cd ContinuousSignal::eval_cpp(double t) const {
    const double T = p_.T();
    check_domain(t, -static_cast<double>(p_.M) * p_.dt, T, "ContinuousSignal::eval_cpp");
    if (t >= 0.0) return eval(t);
    const double u = t / p_.dt;
    const double N = static_cast<double>(p_.N);
    return eval(t + T) * cis_cycles(-p_.c1 * (N * N + 2.0 * N * u));
}

cd eval_s(double t, const CVec& x, const ChirpParams& p) {
    check_domain(t, 0.0, p.T(), "eval_s");
    if (x.size() != p.N) throw ConfigError("eval_s: expected N symbols");
    cd acc{0.0, 0.0};
    for (std::size_t m = 0; m < p.N; ++m) {
        if (x[m] == cd{0.0, 0.0}) continue;
        const double mm = static_cast<double>(m);
        acc += x[m] * cis_cycles(p.c2 * mm * mm + phi(m, t, p));
    }
    return acc / std::sqrt(p.T());
}

cd eval_s_cpp(double t, const CVec& x, const ChirpParams& p) {
    const double T = p.T();
    check_domain(t, -static_cast<double>(p.M) * p.dt, T, "eval_s_cpp");
    if (t >= 0.0) return eval_s(t, x, p);
    const double u = t / p.dt;
    const double N = static_cast<double>(p.N);
    return eval_s(t + T, x, p) * cis_cycles(-p.c1 * (N * N + 2.0 * N * u));
}

}  // namespace afdm
