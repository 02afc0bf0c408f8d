#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "olct/parameters.hpp"
#include "olct/stolct.hpp"
#include "olct/types.hpp"

namespace olct {

/// Hermitian matrix of pairwise sample products g(t) conj(g(t')) indexed on a
/// contiguous stretch of the signal lattice.
struct LagProductMatrix {
    std::vector<Complex> entries;  ///< row-major, size n*n
    std::int64_t origin = 0;       ///< lattice index of row/column 0
    std::size_t n = 0;
    double step = 1.0;

    Complex at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// Contiguous lattice window a recovered signal lives on.
struct SupportWindow {
    std::int64_t origin = 0;
    std::size_t length = 0;
    double step = 1.0;
};

struct RecoveryReport {
    SampledSignal signal;
    double residual = 0.0;
    std::string verdict;  ///< empty, "unique_up_to_sign", or "separable_ambiguous"
    std::map<std::string, double> diagnostics;
};

/// Builds the product matrix from per-lag rows. rows[v] is aligned with the
/// support window (entry k belongs to lattice index origin + k) and holds
/// g(t) conj(g(t-v)). Lag 0 and, for every |v| < length, at least one of
/// {v, -v} must be present (the other is implied by conjugate symmetry).
/// The result is Hermitian-symmetrized.
LagProductMatrix assemble_lag_matrix(const std::map<std::int64_t, std::vector<Complex>>& rows,
                                     const SupportWindow& support);

/// Leading eigenpair by power iteration (deterministic all-ones start,
/// 200 iterations or 1e-12 convergence), plus the second eigenvalue from one
/// deflation step.
struct LeadingEigenPair {
    double value = 0.0;
    double second_value = 0.0;
    std::vector<Complex> vector;  ///< unit norm, largest entry rotated to be real >= 0
};
LeadingEigenPair leading_eigenpair(const LagProductMatrix& m);

/// One magnitude-squared measurement |O^A f(u)|^2 on a frequency grid.
struct MagnitudeMeasurement {
    ParameterMatrix matrix;
    std::vector<double> mag2;
    Grid grid;
};

/// Recovers a compactly supported signal from transform magnitudes under a
/// family of parameter matrices with many distinct a/b ratios. Each
/// measurement contributes one modulation sample per lattice lag via the
/// central ambiguity line; per-lag least squares then fills the product rows,
/// the lag-0 diagonal is completed from the rank-one structure, and the
/// leading eigenvector gives the signal up to global phase.
///
/// residual is the phase-invariant error against ground_truth when given,
/// otherwise the max-abs data misfit of the re-synthesized magnitudes.
/// Throws InsufficientDiversity when the number of distinct a/b ratios is
/// below the support length. A small eigenvalue gap (< 10) is reported in
/// diagnostics["rank_gap"] / diagnostics["rank_deficient"], not thrown.
RecoveryReport recover_from_multi_olct(const std::vector<MagnitudeMeasurement>& mags,
                                       const SupportWindow& support,
                                       const SampledSignal* ground_truth = nullptr);

/// Recovers a signal from the magnitude of its windowed transform map. The
/// map must cover every signal/window overlap shift and one full induced
/// frequency period. Window division uses a relative floor; points whose
/// window ambiguity falls below floor * max are zero-filled and counted, and
/// WindowVanishes is thrown when their fraction exceeds masked_limit.
RecoveryReport recover_from_stolct(const MagnitudeMap& mag, const SampledSignal& phi,
                                   const ParameterMatrix& A, const SupportWindow& support,
                                   double floor = 1e-8, double masked_limit = 0.2,
                                   const SampledSignal* ground_truth = nullptr);

/// Magnitude-only recovery of a real-valued signal from its windowed
/// transform magnitudes: the zero-lag row yields |f|^2; the sign is fixed per
/// connected component of {|f| > 1e-6 max}. Exactly one component means the
/// signal is determined up to one global sign (verdict "unique_up_to_sign");
/// two or more mean the relative signs are undecidable
/// ("separable_ambiguous"). The returned signal carries the nonnegative
/// representative. Throws NegativeEnergy when the inverted |f|^2 dips below
/// -1e-6 of its peak.
RecoveryReport recover_nonseparable_real(const MagnitudeMap& mag, const SampledSignal& phi,
                                         const ParameterMatrix& A, const SupportWindow& support,
                                         const SampledSignal* ground_truth = nullptr);

enum class BandMode {
    ft_band,    ///< real signal, bandlimited in the plain Fourier domain
    olct_band,  ///< complex signal, bandlimited in the transform domain
};

struct BandRecoveryOptions {
    double gamma = 0.0;         ///< olct_band phase-propagation lag; 0 = largest allowed
    double floor = 1e-8;        ///< relative window-division floor
    double masked_limit = 0.2;  ///< max masked fraction inside the required band
    std::size_t radius = 64;    ///< cardinal-series truncation radius
};

/// Recovers a bandlimited signal from band-adapted magnitude samples, one
/// sample set per frequency of a uniform grid covering a full induced period.
/// ft_band: rebuilds |f|^2 from the zero-lag row and applies the sign rules of
/// recover_nonseparable_real. olct_band: uses the zero-lag and gamma-lag rows,
/// propagates the phase along the gamma lattice from the peak-modulus anchor,
/// and rebuilds the signal by cardinal-series interpolation before
/// un-chirping. band is the signal's own band (plain-Fourier in ft_band mode,
/// transform-domain in olct_band mode).
RecoveryReport recover_bandlimited_sampled(const std::vector<StolctSampleSet>& sets,
                                           const SampledSignal& phi, const ParameterMatrix& A,
                                           BandLimit band, BandMode mode,
                                           const SupportWindow& support,
                                           const BandRecoveryOptions& opts = {},
                                           const SampledSignal* ground_truth = nullptr);

}  // namespace olct
