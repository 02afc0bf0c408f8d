#pragma once

#include <cstdint>
#include <variant>

#include "olct/parameters.hpp"
#include "olct/types.hpp"

namespace olct {

/// Magnitude-preserving operations: global rotation, chirp-corrected shift,
/// and chirp-corrected conjugate reflection.
struct Rotate {
    double beta = 0.0;
};
struct Shift {
    std::int64_t n0 = 0;
};
struct ConjugateReflect {};

using TrivialKind = std::variant<Rotate, Shift, ConjugateReflect>;

/// Applies one magnitude-preserving operation for the matrix A:
///   Rotate(beta):      x'[n] = e^{j beta} x[n]
///   Shift(n0):         x'[n] = e^{-j a t_{n0} t_n / b} x[n - n0]
///   ConjugateReflect:  x'[n] = e^{-j a t_n^2 / b} conj(x[-n])
/// Shift and ConjugateReflect require b != 0.
SampledSignal apply_trivial_ambiguity(const SampledSignal& x, const ParameterMatrix& A,
                                      const TrivialKind& kind);

struct PairProvenance {
    SampledSignal g1;
    SampledSignal g2;
    double beta = 0.0;
    std::int64_t n0 = 0;
    ParameterMatrix A;
};

/// Two distinct signals with identical transform magnitudes under A.
struct AmbiguityPair {
    SampledSignal x;
    SampledSignal y;
    PairProvenance provenance;
    /// Largest magnitude deviation observed on the 4x-oversampled
    /// certification grid at construction time.
    double certified_max_dev = 0.0;
};

/// Builds the convolution pair
///   x = e^{-j a t^2 / 2b} (g1 * g2)
///   y = e^{j beta} e^{-j a t^2 / 2b} (g1[. - n0] * conj(g2[-.]))
/// whose transform magnitudes under A agree everywhere. Throws ZeroFactor if
/// either factor is identically zero and DegenerateParameterError if b == 0.
AmbiguityPair make_nontrivial_pair(const SampledSignal& g1, const SampledSignal& g2,
                                   const ParameterMatrix& A, double beta, std::int64_t n0);

/// a[n] = sum_k conj(x[k]) x[k+n], supported on [-(N-1), N-1].
SampledSignal autocorrelation(const SampledSignal& x);

struct PairCertificate {
    double max_dev = 0.0;        ///< max_u | |O x(u)| - |O y(u)| | over ugrid
    bool distinct = false;       ///< phase-invariant residual > 1e-3
    bool trivial_equivalent = false;  ///< y reachable from x via rotation/shift/reflection
    bool passed = false;         ///< max_dev <= tol
};

/// Checks magnitude agreement of x and y under A on ugrid, and searches the
/// full rotation/shift/reflection orbit of x for a match with y.
PairCertificate certify_pair(const SampledSignal& x, const SampledSignal& y,
                             const ParameterMatrix& A, const Grid& ugrid, double tol);

}  // namespace olct
