#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olct/parameters.hpp"
#include "olct/types.hpp"

namespace olct {

/// Windowed transform values on a shift x frequency grid, row-major with one
/// row per shift.
struct TimeFrequencyMap {
    std::vector<Complex> values;
    Grid shift_grid;
    Grid freq_grid;
    std::string window_id;

    Complex at(std::size_t shift_idx, std::size_t freq_idx) const {
        return values[shift_idx * freq_grid.count + freq_idx];
    }
};

/// Real-valued (magnitude) companion of TimeFrequencyMap.
struct MagnitudeMap {
    std::vector<double> values;
    Grid shift_grid;
    Grid freq_grid;
    std::string window_id;

    double at(std::size_t shift_idx, std::size_t freq_idx) const {
        return values[shift_idx * freq_grid.count + freq_idx];
    }
};

MagnitudeMap magnitude_map(const TimeFrequencyMap& map);

/// Windowed transform: row v holds u -> integral of
/// f(t) conj(phi(t - v)) K_A(t, u) dt over the sample lattice. Shifts must lie
/// on the signal lattice. Uses an FFT per shift when freq_grid is the induced
/// spectral grid, and direct evaluation otherwise.
TimeFrequencyMap stolct(const SampledSignal& f, const SampledSignal& phi, const ParameterMatrix& A,
                        const Grid& shift_grid, const Grid& freq_grid);

/// Two-sided check of the magnitude/ambiguity factorization
///   sum_{v,u} |V(v,u)|^2 e^{j v' u} e^{-j u' v} du dv
///     = e^{j y0 v'} A[f e^{j a t^2/2b}](b v', u') conj(A[phi](b v', u'))
/// evaluated at every (v', u') in vgrid x ugrid. Each b*v' must land on the
/// lag lattice. Returns the max relative deviation over points where the
/// right side exceeds 1e-8 of its peak (0 if no point does).
double stolct_magnitude_identity_residual(const SampledSignal& f, const SampledSignal& phi,
                                          const ParameterMatrix& A, const std::vector<double>& vgrid,
                                          const std::vector<double>& ugrid);

/// Uniform-in-shift magnitude samples at one frequency u, taken at the
/// band-adapted spacing 1/(4 * band_at_u) where
/// band_at_u = max{|W + (u-y0)/b|, |-W + (u-y0)/b|} for window band W.
struct StolctSampleSet {
    double u = 0.0;
    double band_at_u = 0.0;   ///< shift-direction band of the window at this u
    double spacing = 0.0;     ///< 1 / (4 * band_at_u)
    double signal_band = 0.0; ///< carried through from the request
    std::int64_t n_min = 0;
    std::vector<double> values;  ///< |V(n * spacing, u)|, n = n_min, n_min+1, ...
};

/// Samples |V(., u)| at the band-adapted uniform spacing. Off-lattice window
/// shifts are evaluated by sinc interpolation of the window samples, so the
/// window should be well sampled for its band.
StolctSampleSet sample_stolct_magnitude(const SampledSignal& f, const SampledSignal& phi,
                                        const ParameterMatrix& A, double u, BandLimit window_band,
                                        BandLimit signal_band, std::int64_t n_min,
                                        std::size_t count);

/// Same sampling at an explicit spacing, for callers whose spacing comes from
/// the signal's transform-domain band rather than the window band. band_at_u
/// is filled with 1/(4 * spacing), the band the spacing is matched to.
StolctSampleSet sample_stolct_magnitude_uniform(const SampledSignal& f, const SampledSignal& phi,
                                                const ParameterMatrix& A, double u, double spacing,
                                                BandLimit signal_band, std::int64_t n_min,
                                                std::size_t count);

/// Truncated cardinal-series interpolation of samples taken at t = n / rate
/// (n starting at n_min): value(t) = sum_n samples[n] sinc(pi (rate t - n))
/// over the `radius` nearest terms each side. Throws NyquistViolation when
/// rate < 2 * band (the sampling-rate convention used by the sampling
/// operations above).
std::vector<double> interpolate_bandlimited(const std::vector<double>& samples, std::int64_t n_min,
                                            double rate, double band, const Grid& tgrid,
                                            std::size_t radius = 64);

}  // namespace olct
