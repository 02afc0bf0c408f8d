#pragma once

#include "olct/parameters.hpp"
#include "olct/types.hpp"

namespace olct {

/// Transform values on a uniform output grid.
struct Spectrum {
    std::vector<Complex> values;
    Grid grid;
};

/// Kernel value K_A(t, u) for b != 0:
/// (1/sqrt(j 2 pi b)) exp((j/2b)[a t^2 + d y0^2 + 2 t (y0 - u)
///                             - 2 u (d y0 - b w0) + d u^2]).
Complex olct_kernel(const ParameterMatrix& A, double t, double u);

/// Direct O(N*M) transform: O(u) = sum_n x[n] K_A(t_n, u) * step.
/// For b == 0 the transform degenerates to a resampled chirp product
/// sqrt(d) e^{j(cd/2)(u-y0)^2 + j u w0} x(d(u-y0)); off-lattice arguments are
/// linearly interpolated unless `allow_interpolation` is false, in which case
/// DegenerateGridError is thrown.
Spectrum olct_forward(const SampledSignal& x, const ParameterMatrix& A, const Grid& ugrid,
                      bool allow_interpolation = true);

/// Output grid the fast path produces: u = y0 + b*xi over one full period of
/// FFT bin frequencies xi, with the padded length next_pow2(2N).
Grid olct_fast_grid(const SampledSignal& x, const ParameterMatrix& A);

/// Chirp-multiply -> FFT -> post-multiply pipeline, exact on the induced
/// grid. Throws DegenerateParameterError when b == 0.
Spectrum olct_fast(const SampledSignal& x, const ParameterMatrix& A);

/// Constant in front of the inversion integral:
/// C = exp((j/2)(c d y0^2 - 2 a d y0 w0 + a b w0^2)).
Complex inverse_phase_constant(const ParameterMatrix& A);

/// Riemann-sum inversion f(t) = C * sum_m S[m] K_{A^{-1}}(u_m, t) * du onto a
/// time grid that must sit on a sample lattice (start/step integral).
/// Warns (stderr) when the spectral grid is too coarse for the target span.
SampledSignal olct_inverse(const Spectrum& S, const ParameterMatrix& A, const Grid& tgrid);

/// Pointwise modulus of olct_forward.
std::vector<double> olct_magnitude(const SampledSignal& x, const ParameterMatrix& A,
                                   const Grid& ugrid);

}  // namespace olct
