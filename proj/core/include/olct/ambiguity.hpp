#pragma once

#include "olct/parameters.hpp"
#include "olct/types.hpp"

namespace olct {

/// Values of a (cross-)ambiguity function on a lag x modulation grid.
struct AmbiguitySurface {
    std::vector<Complex> values;  // row-major, values[i * mod_grid.count + j]
    Grid lag_grid;
    Grid mod_grid;

    Complex at(std::size_t lag_ix, std::size_t mod_ix) const {
        return values[lag_ix * mod_grid.count + mod_ix];
    }
};

/// A(f,g)(tau,eta) = e^{j tau eta / 2} sum_n f[n] conj(g[n-v]) e^{-j eta t_n} step,
/// the lattice form of the half-shift correlation integral. Lags must land on
/// the sample lattice (tau = v * step); GridMismatch otherwise.
AmbiguitySurface cross_ambiguity(const SampledSignal& f, const SampledSignal& g,
                                 const Grid& lag_grid, const Grid& mod_grid);

AmbiguitySurface ambiguity(const SampledSignal& f, const Grid& lag_grid, const Grid& mod_grid);

/// Single surface value at lattice lag index v (tau = v * step).
Complex cross_ambiguity_point(const SampledSignal& f, const SampledSignal& g, std::int64_t v,
                              double eta);

enum class LagInterpolation { linear, windowed_sinc };

/// Both sides of the ambiguity transport identity
///   A(O^A f, O^A g)(tau, eta) = e^{j(tau w0 - eta y0)} A(f,g)(d tau - b eta, a eta - c tau),
/// each evaluated independently: the left via fast transforms and a spectral
/// -domain correlation, the right from the original signals at the mapped
/// plane point. Off-lattice lags are interpolated with `method` (recorded).
struct TransportCheck {
    Complex transformed;  // left side
    Complex pushed;       // right side
    double mapped_lag = 0.0;
    double mapped_mod = 0.0;
    LagInterpolation method = LagInterpolation::linear;
};
TransportCheck olct_ambiguity_pushforward(const SampledSignal& f, const SampledSignal& g,
                                          const ParameterMatrix& A, double tau, double eta,
                                          LagInterpolation method = LagInterpolation::linear);

struct SlicePoint {
    double lag;
    double mod;
    Complex value;
};

/// Central ambiguity-plane line recoverable from squared transform
/// magnitudes: for each eta, value = e^{+j eta y0} sum_m mag2[m] e^{-j eta u_m} du
/// equals A f at the plane point (-b eta, a eta). Exact when mag2 covers one
/// full induced-grid period and b*eta sits on the sample lattice.
std::vector<SlicePoint> magnitude_ambiguity_slice(const std::vector<double>& mag2,
                                                  const Grid& ugrid, const ParameterMatrix& A,
                                                  const std::vector<double>& etas);

}  // namespace olct
