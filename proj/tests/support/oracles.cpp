// oracles.cpp - Slow reference transforms for the test suite
#include "oracles.hpp"

#include <cmath>

#include "afdm/fft.hpp"

namespace oracle {

afdm::cd cisl(long double cycles) {
    const long double r = cycles - std::floor(cycles);
    const long double a = 2.0L * 3.14159265358979323846264338327950288L * r;
    return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

afdm::CVec idaft_direct(const afdm::CVec& x, const afdm::ChirpParams& p) {
    const std::size_t N = p.N;
    const long double c1 = p.c1;
    const long double c2 = p.c2;
    afdm::CVec s(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t n = 0; n < N; ++n) {
        afdm::cd acc{0.0, 0.0};
        for (std::size_t m = 0; m < N; ++m) {
            const long double lm = static_cast<long double>(m);
            const long double ln = static_cast<long double>(n);
            const long double cycles =
                c2 * lm * lm + lm * ln / static_cast<long double>(N) + c1 * ln * ln;
            acc += x[m] * cisl(cycles);
        }
        s[n] = acc * scale;
    }
    return s;
}

afdm::CVec daft_direct(const afdm::CVec& r, const afdm::ChirpParams& p) {
    const std::size_t N = p.N;
    const long double c1 = p.c1;
    const long double c2 = p.c2;
    afdm::CVec y(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t m = 0; m < N; ++m) {
        afdm::cd acc{0.0, 0.0};
        for (std::size_t n = 0; n < N; ++n) {
            const long double lm = static_cast<long double>(m);
            const long double ln = static_cast<long double>(n);
            const long double cycles =
                c2 * lm * lm + lm * ln / static_cast<long double>(N) + c1 * ln * ln;
            acc += r[n] * std::conj(cisl(cycles));
        }
        y[m] = acc * scale;
    }
    return y;
}

afdm::cd eval_s_naive(double t, const afdm::CVec& x, const afdm::ChirpParams& p) {
    const long double dt = p.dt;
    const long double N = static_cast<long double>(p.N);
    const long double c1 = p.c1;
    const long double c2 = p.c2;
    const long double u = static_cast<long double>(t) / dt;
    afdm::cd acc{0.0, 0.0};
    for (std::size_t m = 0; m < p.N; ++m) {
        if (x[m] == afdm::cd{0.0, 0.0}) continue;
        const long double lm = static_cast<long double>(m);
        // Count breakpoints t_{m,q} <= t (closed-left pieces).
        int q = 0;
        if (c1 > 0.0L) {
            for (int k = 1;; ++k) {
                const long double tk =
                    ((N - lm) / (2.0L * N * c1) + (k - 1) / (2.0L * c1)) * dt;
                if (tk > static_cast<long double>(t)) break;
                q = k;
            }
        }
        const long double cycles =
            c2 * lm * lm + c1 * u * u + lm * u / N - static_cast<long double>(q) * u;
        acc += x[m] * cisl(cycles);
    }
    return acc / std::sqrt(static_cast<double>(N) * p.dt);
}

afdm::cd eval_s_cpp_naive(double t, const afdm::CVec& x, const afdm::ChirpParams& p) {
    if (t >= 0.0) return eval_s_naive(t, x, p);
    const long double N = static_cast<long double>(p.N);
    const long double u = static_cast<long double>(t) / p.dt;
    const long double cycles = -static_cast<long double>(p.c1) * (N * N + 2.0L * N * u);
    return eval_s_naive(t + p.T(), x, p) * cisl(cycles);
}

afdm::CVec oversample_oneside(const afdm::CVec& body, std::size_t factor) {
    const std::size_t N = body.size();
    afdm::CVec spec = afdm::fft::forward_copy(body);
    afdm::CVec padded(N * factor, afdm::cd{0.0, 0.0});
    for (std::size_t k = 0; k < N; ++k) padded[k] = spec[k];
    afdm::fft::inverse(padded);
    for (auto& v : padded) v /= static_cast<double>(N);
    return padded;
}

std::vector<std::size_t> guard_interval(std::size_t N, std::size_t m0, int G, int W) {
    std::vector<std::size_t> out;
    const long n = static_cast<long>(N);
    for (long off = -(G + W); off <= G; ++off) {
        if (off == 0) continue;
        long idx = (static_cast<long>(m0) + off) % n;
        if (idx < 0) idx += n;
        out.push_back(static_cast<std::size_t>(idx));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
