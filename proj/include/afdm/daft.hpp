// daft.hpp - Discrete affine Fourier transform pair and chirp-periodic prefix
#pragma once

#include "afdm/chirp_params.hpp"
#include "afdm/common.hpp"

namespace afdm {

/**
 * Inverse transform (modulator):
 *   s[n] = (1/sqrt(N)) sum_m x[m] exp(+i 2 pi (c2 m^2 + m n / N + c1 n^2))
 *
 * Computed as pre-chirp, unnormalized inverse DFT, post-chirp, 1/sqrt(N).
 */
CVec idaft(const CVec& x, const ChirpParams& p);

/**
 * Forward transform (demodulator):
 *   y[m] = (1/sqrt(N)) sum_n r[n] exp(-i 2 pi (c2 m^2 + m n / N + c1 n^2))
 */
CVec daft(const CVec& r, const ChirpParams& p);

/**
 * Prepend the chirp-periodic prefix:
 *   prefix[j] = s[N-M+j] * exp(-i 2 pi c1 (N^2 + 2 N (j - M))),  j = 0..M-1.
 * Returns M+N samples. When 2*c1*N is an integer (and N even) the phase
 * factor is 1 and this is an ordinary cyclic prefix.
 */
CVec add_cpp(const CVec& body, const ChirpParams& p);

/** Drop the first M samples, returning the N-sample body. */
CVec remove_cpp(const CVec& with_prefix, const ChirpParams& p);

}  // namespace afdm
