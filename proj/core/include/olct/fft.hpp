#pragma once

#include <cstddef>
#include <vector>

#include "olct/types.hpp"

namespace olct::fft {

std::size_t next_pow2(std::size_t n);

/// In-place radix-2 DFT, X[m] = sum_k x[k] e^{-j 2 pi m k / L}.
/// Size must be a power of two.
void forward_pow2(std::vector<Complex>& data);

/// In-place normalized inverse, x[k] = (1/L) sum_m X[m] e^{+j 2 pi m k / L}.
void inverse_pow2(std::vector<Complex>& data);

}  // namespace olct::fft
