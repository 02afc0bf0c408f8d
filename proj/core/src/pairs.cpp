#include "olct/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "olct/errors.hpp"
#include "olct/transforms.hpp"

namespace olct {

namespace {

bool is_zero(const SampledSignal& x) {
    for (const auto& v : x.samples) {
        if (v != Complex{0.0, 0.0}) return false;
    }
    return true;
}

// Linear convolution on the shared lattice; supports add.
SampledSignal convolve(const SampledSignal& f, const SampledSignal& g) {
    SampledSignal out;
    out.step = f.step;
    out.origin = f.origin + g.origin;
    out.samples.assign(f.size() + g.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            out.samples[i + j] += f.samples[i] * g.samples[j];
        }
    }
    return out;
}

SampledSignal reflect_conjugate(const SampledSignal& x) {
    SampledSignal out;
    out.step = x.step;
    out.origin = 1 - x.last();  // last() is one past the end
    out.samples.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        out.samples[k] = std::conj(x.samples[x.size() - 1 - k]);
    }
    return out;
}

void apply_chirp(SampledSignal& x, double coeff) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = x.time(k);
        x.samples[k] *= std::exp(Complex(0.0, coeff * t * t));
    }
}

}  // namespace

SampledSignal apply_trivial_ambiguity(const SampledSignal& x, const ParameterMatrix& A,
                                      const TrivialKind& kind) {
    x.validate();
    if (std::holds_alternative<Rotate>(kind)) {
        const double beta = std::get<Rotate>(kind).beta;
        SampledSignal out = x;
        const Complex phase = std::polar(1.0, beta);
        for (auto& v : out.samples) v *= phase;
        return out;
    }
    if (A.is_degenerate()) {
        throw DegenerateParameterError("shift and reflection ambiguities require b != 0");
    }
    if (std::holds_alternative<Shift>(kind)) {
        const std::int64_t n0 = std::get<Shift>(kind).n0;
        const double t0 = static_cast<double>(n0) * x.step;
        SampledSignal out = x;
        out.origin = x.origin + n0;
        const double slope = -A.a() * t0 / A.b();
        for (std::size_t k = 0; k < out.size(); ++k) {
            out.samples[k] = x.samples[k] * std::exp(Complex(0.0, slope * out.time(k)));
        }
        return out;
    }
    SampledSignal out = reflect_conjugate(x);
    apply_chirp(out, -A.a() / A.b());
    return out;
}

SampledSignal autocorrelation(const SampledSignal& x) {
    x.validate();
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    SampledSignal out;
    out.step = x.step;
    out.origin = -(n - 1);
    out.samples.assign(static_cast<std::size_t>(2 * n - 1), Complex{0.0, 0.0});
    for (std::int64_t lag = -(n - 1); lag <= n - 1; ++lag) {
        Complex acc{0.0, 0.0};
        for (std::int64_t k = 0; k < n; ++k) {
            const std::int64_t k2 = k + lag;
            if (k2 < 0 || k2 >= n) continue;
            acc += std::conj(x.samples[static_cast<std::size_t>(k)]) *
                   x.samples[static_cast<std::size_t>(k2)];
        }
        out.samples[static_cast<std::size_t>(lag + n - 1)] = acc;
    }
    return out;
}

AmbiguityPair make_nontrivial_pair(const SampledSignal& g1, const SampledSignal& g2,
                                   const ParameterMatrix& A, double beta, std::int64_t n0) {
    g1.validate();
    g2.validate();
    if (g1.step != g2.step) throw GridMismatch("convolution factors must share a step");
    if (is_zero(g1) || is_zero(g2)) throw ZeroFactor("convolution factors must be nonzero");
    if (A.is_degenerate()) throw DegenerateParameterError("pair construction requires b != 0");

    const double chirp = -0.5 * A.a() / A.b();

    SampledSignal x = convolve(g1, g2);
    apply_chirp(x, chirp);

    SampledSignal g1s = g1;
    g1s.origin += n0;
    SampledSignal y = convolve(g1s, reflect_conjugate(g2));
    apply_chirp(y, chirp);
    const Complex rot = std::polar(1.0, beta);
    for (auto& v : y.samples) v *= rot;

    const Grid base = olct_fast_grid(x, A);
    const Grid cert{base.start, base.step / 4.0, base.count * 4};
    const auto mx = olct_magnitude(x, A, cert);
    const auto my = olct_magnitude(y, A, cert);
    double dev = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) dev = std::max(dev, std::abs(mx[i] - my[i]));

    return AmbiguityPair{std::move(x), std::move(y), PairProvenance{g1, g2, beta, n0, A}, dev};
}

PairCertificate certify_pair(const SampledSignal& x, const SampledSignal& y,
                             const ParameterMatrix& A, const Grid& ugrid, double tol) {
    PairCertificate cert;

    const auto mx = olct_magnitude(x, A, ugrid);
    const auto my = olct_magnitude(y, A, ugrid);
    for (std::size_t i = 0; i < mx.size(); ++i) {
        cert.max_dev = std::max(cert.max_dev, std::abs(mx[i] - my[i]));
    }
    cert.passed = cert.max_dev <= tol;

    const bool x_zero = is_zero(x);
    const bool y_zero = is_zero(y);
    if (x_zero || y_zero) {
        cert.distinct = x_zero != y_zero;
        cert.trivial_equivalent = x_zero && y_zero;
        return cert;
    }
    if (x.step != y.step) {
        cert.distinct = true;
        return cert;
    }

    cert.distinct = phase_invariant_error(x, y).residual > 1e-3;

    // Exhaustive orbit search: reflection on/off, every overlapping integer
    // shift, rotation solved by phase alignment.
    constexpr double kOrbitTol = 1e-8;
    const int reflect_states = A.is_degenerate() ? 1 : 2;
    for (int refl = 0; refl < reflect_states; ++refl) {
        SampledSignal base =
            refl ? apply_trivial_ambiguity(x, A, ConjugateReflect{}) : x;
        if (A.is_degenerate()) {
            if (phase_invariant_error(y, base).residual <= kOrbitTol) {
                cert.trivial_equivalent = true;
                return cert;
            }
            continue;
        }
        const std::int64_t lo = y.origin - base.last();
        const std::int64_t hi = y.last() - base.origin;
        for (std::int64_t n0 = lo; n0 <= hi; ++n0) {
            const SampledSignal cand = apply_trivial_ambiguity(base, A, Shift{n0});
            if (phase_invariant_error(y, cand).residual <= kOrbitTol) {
                cert.trivial_equivalent = true;
                return cert;
            }
        }
    }
    return cert;
}

}  // namespace olct
