#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "olct/errors.hpp"

namespace olct {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Uniform axis: points start + step*i for i in [0, count).
struct Grid {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double point(std::size_t i) const { return start + step * static_cast<double>(i); }
    double back() const { return point(count == 0 ? 0 : count - 1); }
    double span() const { return step * static_cast<double>(count); }
    void validate() const;
};

/// Finitely supported complex sequence on the lattice t = n*step, holding
/// samples for n in [origin, origin + size()). Values outside are zero.
/// With step == 1 this is a plain discrete sequence; with a physical step it
/// doubles as a Riemann-sum approximation of a continuous-time function.
struct SampledSignal {
    std::vector<Complex> samples;
    std::int64_t origin = 0;
    double step = 1.0;

    std::size_t size() const { return samples.size(); }
    std::int64_t last() const { return origin + static_cast<std::int64_t>(size()); }
    double time(std::size_t k) const {
        return step * static_cast<double>(origin + static_cast<std::int64_t>(k));
    }
    /// Sample at absolute lattice index n (zero outside the stored support).
    Complex at(std::int64_t n) const {
        const std::int64_t k = n - origin;
        if (k < 0 || k >= static_cast<std::int64_t>(size())) return {0.0, 0.0};
        return samples[static_cast<std::size_t>(k)];
    }
    double norm() const;    // unweighted l2 norm of the samples
    double energy() const;  // step-weighted squared l2 norm
    void validate() const;
};

struct BandLimit {
    double omega = 0.0;  // angular band edge, FT support within [-omega, omega]
};

/// Result of aligning g to f by the best global phase.
struct PhaseAlignment {
    double beta = 0.0;      // in [-pi, pi)
    double residual = 0.0;  // ||f - e^{j beta} g||_2 / ||f||_2
};

/// Least-squares global-phase comparison: beta = arg <g, f> with the
/// convention <g, f> = sum conj(g[n]) f[n]; beta = 0 when the inner product
/// vanishes. Supports are unioned; missing samples count as zero.
/// Throws ZeroSignal when ||f|| = 0 and GridMismatch on differing steps.
PhaseAlignment phase_invariant_error(const SampledSignal& f, const SampledSignal& g);

}  // namespace olct
