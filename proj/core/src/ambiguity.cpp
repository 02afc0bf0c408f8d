#include "olct/ambiguity.hpp"

#include <cmath>

#include "olct/transforms.hpp"

namespace olct {

namespace {

// Correlation V(v, eta) = sum_k F[k] conj(G[k - v]) e^{-j eta p_k} step over a
// shared axis p_k = start + k*step. The e^{j tau eta / 2} half-shift factor is
// applied by callers at the exact tau, so interpolation across lattice lags
// acts on the slowly varying V only.
struct Series {
    const std::vector<Complex>& values;
    double start;
    double step;
};

Complex correlate(const Series& f, const Series& g, std::int64_t v, double eta) {
    const auto nf = static_cast<std::int64_t>(f.values.size());
    const auto ng = static_cast<std::int64_t>(g.values.size());
    const std::int64_t lo = std::max<std::int64_t>(0, v);
    const std::int64_t hi = std::min(nf, ng + v);
    Complex acc{0.0, 0.0};
    for (std::int64_t k = lo; k < hi; ++k) {
        const double p = f.start + f.step * static_cast<double>(k);
        acc += f.values[static_cast<std::size_t>(k)] *
               std::conj(g.values[static_cast<std::size_t>(k - v)]) *
               std::exp(Complex(0.0, -eta * p));
    }
    return acc * f.step;
}

Complex lanczos_weight(double x, double radius) {
    if (x == 0.0) return {1.0, 0.0};
    if (std::abs(x) >= radius) return {0.0, 0.0};
    const double px = kPi * x;
    return Complex(std::sin(px) / px * std::sin(px / radius) / (px / radius), 0.0);
}

// A(tau, eta) with tau anywhere: lattice-exact when tau/step is integral,
// otherwise interpolated across lattice lags of V.
Complex series_ambiguity(const Series& f, const Series& g, double tau, double eta,
                         LagInterpolation method) {
    const double ratio = tau / f.step;
    const auto nearest = static_cast<std::int64_t>(std::llround(ratio));
    const Complex half_shift = std::exp(Complex(0.0, 0.5 * tau * eta));
    if (std::abs(ratio - static_cast<double>(nearest)) <= 1e-9) {
        return half_shift * correlate(f, g, nearest, eta);
    }
    if (method == LagInterpolation::linear) {
        const double fl = std::floor(ratio);
        const double w = ratio - fl;
        const auto v0 = static_cast<std::int64_t>(fl);
        const Complex lo = correlate(f, g, v0, eta);
        const Complex hi = correlate(f, g, v0 + 1, eta);
        return half_shift * ((1.0 - w) * lo + w * hi);
    }
    constexpr double radius = 8.0;
    const auto center = static_cast<std::int64_t>(std::floor(ratio));
    Complex acc{0.0, 0.0};
    for (std::int64_t v = center - 7; v <= center + 8; ++v) {
        const Complex w = lanczos_weight(ratio - static_cast<double>(v), radius);
        if (w != Complex{0.0, 0.0}) acc += w * correlate(f, g, v, eta);
    }
    return half_shift * acc;
}

Series as_series(const SampledSignal& x) {
    return {x.samples, static_cast<double>(x.origin) * x.step, x.step};
}

void check_common_lattice(const SampledSignal& f, const SampledSignal& g) {
    if (std::abs(f.step - g.step) > 1e-12 * f.step) {
        throw GridMismatch("cross-ambiguity requires equal sample steps");
    }
}

std::int64_t lattice_lag(double tau, double step) {
    const double ratio = tau / step;
    const auto v = static_cast<std::int64_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(v)) > 1e-9) {
        throw GridMismatch("lag does not land on the sample lattice");
    }
    return v;
}

// Signals share a common index offset (origin difference) so a correlation at
// integer lattice lag is well defined on the union axis.
Series padded_series(const SampledSignal& x, std::int64_t lo, std::int64_t hi,
                     std::vector<Complex>& storage) {
    storage.assign(static_cast<std::size_t>(hi - lo), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < x.size(); ++k) {
        storage[static_cast<std::size_t>(x.origin + static_cast<std::int64_t>(k) - lo)] =
            x.samples[k];
    }
    return {storage, static_cast<double>(lo) * x.step, x.step};
}

}  // namespace

Complex cross_ambiguity_point(const SampledSignal& f, const SampledSignal& g, std::int64_t v,
                              double eta) {
    check_common_lattice(f, g);
    const std::int64_t lo = std::min(f.origin, g.origin);
    const std::int64_t hi = std::max(f.last(), g.last());
    std::vector<Complex> fbuf, gbuf;
    const Series fs = padded_series(f, lo, hi, fbuf);
    const Series gs = padded_series(g, lo, hi, gbuf);
    const double tau = static_cast<double>(v) * f.step;
    return std::exp(Complex(0.0, 0.5 * tau * eta)) * correlate(fs, gs, v, eta);
}

AmbiguitySurface cross_ambiguity(const SampledSignal& f, const SampledSignal& g,
                                 const Grid& lag_grid, const Grid& mod_grid) {
    lag_grid.validate();
    mod_grid.validate();
    check_common_lattice(f, g);

    const std::int64_t lo = std::min(f.origin, g.origin);
    const std::int64_t hi = std::max(f.last(), g.last());
    std::vector<Complex> fbuf, gbuf;
    const Series fs = padded_series(f, lo, hi, fbuf);
    const Series gs = padded_series(g, lo, hi, gbuf);

    AmbiguitySurface out;
    out.lag_grid = lag_grid;
    out.mod_grid = mod_grid;
    out.values.resize(lag_grid.count * mod_grid.count);
    for (std::size_t i = 0; i < lag_grid.count; ++i) {
        const double tau = lag_grid.point(i);
        const std::int64_t v = lattice_lag(tau, f.step);
        for (std::size_t j = 0; j < mod_grid.count; ++j) {
            const double eta = mod_grid.point(j);
            out.values[i * mod_grid.count + j] =
                std::exp(Complex(0.0, 0.5 * tau * eta)) * correlate(fs, gs, v, eta);
        }
    }
    return out;
}

AmbiguitySurface ambiguity(const SampledSignal& f, const Grid& lag_grid, const Grid& mod_grid) {
    return cross_ambiguity(f, f, lag_grid, mod_grid);
}

TransportCheck olct_ambiguity_pushforward(const SampledSignal& f, const SampledSignal& g,
                                          const ParameterMatrix& A, double tau, double eta,
                                          LagInterpolation method) {
    if (A.is_degenerate()) {
        throw DegenerateParameterError("ambiguity transport requires b != 0");
    }
    check_common_lattice(f, g);

    const Spectrum Sf = olct_fast(f, A);
    const Spectrum Sg = olct_fast(g, A);
    const Series fs{Sf.values, Sf.grid.start, Sf.grid.step};
    const Series gs{Sg.values, Sg.grid.start, Sg.grid.step};

    TransportCheck out;
    out.method = method;
    out.transformed = series_ambiguity(fs, gs, tau, eta, method);

    out.mapped_lag = A.d() * tau - A.b() * eta;
    out.mapped_mod = A.a() * eta - A.c() * tau;

    const std::int64_t lo = std::min(f.origin, g.origin);
    const std::int64_t hi = std::max(f.last(), g.last());
    std::vector<Complex> fbuf, gbuf;
    const Series forig = padded_series(f, lo, hi, fbuf);
    const Series gorig = padded_series(g, lo, hi, gbuf);
    const Complex phase = std::exp(Complex(0.0, tau * A.w0() - eta * A.y0()));
    out.pushed = phase * series_ambiguity(forig, gorig, out.mapped_lag, out.mapped_mod, method);
    return out;
}

std::vector<SlicePoint> magnitude_ambiguity_slice(const std::vector<double>& mag2,
                                                  const Grid& ugrid, const ParameterMatrix& A,
                                                  const std::vector<double>& etas) {
    ugrid.validate();
    if (mag2.size() != ugrid.count) {
        throw GridMismatch("magnitude array does not match its grid");
    }
    std::vector<SlicePoint> out;
    out.reserve(etas.size());
    for (const double eta : etas) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < mag2.size(); ++m) {
            acc += mag2[m] * std::exp(Complex(0.0, -eta * ugrid.point(m)));
        }
        acc *= ugrid.step;
        acc *= std::exp(Complex(0.0, eta * A.y0()));
        out.push_back({-A.b() * eta, A.a() * eta, acc});
    }
    return out;
}

}  // namespace olct
