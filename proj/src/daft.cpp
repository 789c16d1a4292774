// daft.cpp - DAFT pair via chirp multiplications around an FFT
#include "afdm/daft.hpp"

#include <cmath>

#include "afdm/fft.hpp"

namespace afdm {

namespace {

void check_input(std::size_t got, const ChirpParams& p, const char* what) {
    p.validate();
    if (got != p.N)
        throw ConfigError(std::string(what) + ": expected N samples");
}

}  // namespace

CVec idaft(const CVec& x, const ChirpParams& p) {
    check_input(x.size(), p, "idaft");
    const auto N = p.N;
    CVec s(N);
    for (std::size_t m = 0; m < N; ++m) {
        const double mm = static_cast<double>(m);
        s[m] = x[m] * cis_cycles(p.c2 * mm * mm);
    }
    fft::inverse(s);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t n = 0; n < N; ++n) {
        const double nn = static_cast<double>(n);
        s[n] *= scale * cis_cycles(p.c1 * nn * nn);
    }
    return s;
}

CVec daft(const CVec& r, const ChirpParams& p) {
    check_input(r.size(), p, "daft");
    const auto N = p.N;
    CVec y(N);
    for (std::size_t n = 0; n < N; ++n) {
        const double nn = static_cast<double>(n);
        y[n] = r[n] * cis_cycles(-p.c1 * nn * nn);
    }
    fft::forward(y);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t m = 0; m < N; ++m) {
        const double mm = static_cast<double>(m);
        y[m] *= scale * cis_cycles(-p.c2 * mm * mm);
    }
    return y;
}

CVec add_cpp(const CVec& body, const ChirpParams& p) {
    check_input(body.size(), p, "add_cpp");
    const auto N = p.N;
    const auto M = p.M;
    CVec out(M + N);
    const double dN = static_cast<double>(N);
    for (std::size_t j = 0; j < M; ++j) {
        const double shift = static_cast<double>(j) - static_cast<double>(M);
        const double cycles = p.c1 * (dN * dN + 2.0 * dN * shift);
        out[j] = body[N - M + j] * cis_cycles(-cycles);
    }
    for (std::size_t n = 0; n < N; ++n) out[M + n] = body[n];
    return out;
}

CVec remove_cpp(const CVec& with_prefix, const ChirpParams& p) {
    p.validate();
    if (with_prefix.size() != p.M + p.N)
        throw ConfigError("remove_cpp: expected M+N samples");
    return CVec(with_prefix.begin() + static_cast<std::ptrdiff_t>(p.M),
                with_prefix.end());
}

}  // namespace afdm
