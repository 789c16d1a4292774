// fft.hpp - Thin FFTW3 wrapper with a process-wide plan cache
#pragma once

#include <cstddef>

#include "afdm/common.hpp"

namespace afdm::fft {

/**
 * Unnormalized in-place forward DFT: X[k] = sum_n x[n] e^{-i 2 pi k n / N}.
 * Plans are cached per length; execution is thread safe.
 */
void forward(CVec& data);

/** Unnormalized in-place inverse DFT: x[n] = sum_k X[k] e^{+i 2 pi k n / N}. */
void inverse(CVec& data);

/** Out-of-place variants (input untouched). */
CVec forward_copy(const CVec& data);
CVec inverse_copy(const CVec& data);

}  // namespace afdm::fft
