#include "olct/signals.hpp"

#include <cmath>
#include <cstdint>

#include "rng.hpp"

namespace olct {

using detail::gauss;

namespace {

// Cubic B-spline bump on [-2, 2].
double bspline3(double x) {
    const double ax = std::abs(x);
    if (ax >= 2.0) return 0.0;
    if (ax >= 1.0) {
        const double r = 2.0 - ax;
        return r * r * r / 6.0;
    }
    return (4.0 - 6.0 * ax * ax + 3.0 * ax * ax * ax) / 6.0;
}

}  // namespace

SignalKind signal_kind_from_name(const std::string& name) {
    if (name == "gaussian") return SignalKind::gaussian;
    if (name == "chirp") return SignalKind::chirp;
    if (name == "random_compact") return SignalKind::random_compact;
    if (name == "random_bandlimited") return SignalKind::random_bandlimited;
    if (name == "two_bumps") return SignalKind::two_bumps;
    if (name == "smooth_bump") return SignalKind::smooth_bump;
    throw InvalidSpec("unknown signal kind: " + name);
}

std::string signal_kind_name(SignalKind kind) {
    switch (kind) {
        case SignalKind::gaussian: return "gaussian";
        case SignalKind::chirp: return "chirp";
        case SignalKind::random_compact: return "random_compact";
        case SignalKind::random_bandlimited: return "random_bandlimited";
        case SignalKind::two_bumps: return "two_bumps";
        case SignalKind::smooth_bump: return "smooth_bump";
    }
    throw InvalidSpec("unknown signal kind enumerator");
}

SampledSignal generate_signal(const SignalSpec& spec) {
    if (spec.length == 0) throw InvalidSpec("signal length must be positive");
    if (!(spec.step > 0.0) || !std::isfinite(spec.step))
        throw InvalidSpec("signal step must be positive and finite");

    SampledSignal f;
    f.step = spec.step;
    f.origin = -static_cast<std::int64_t>(spec.length / 2);
    f.samples.resize(spec.length);

    const auto needs_sigma = spec.kind == SignalKind::gaussian || spec.kind == SignalKind::chirp ||
                             spec.kind == SignalKind::smooth_bump;
    if (needs_sigma && !(spec.sigma > 0.0)) throw InvalidSpec("sigma must be positive");

    switch (spec.kind) {
        case SignalKind::gaussian: {
            for (std::size_t k = 0; k < spec.length; ++k) {
                const double r = (f.time(k) - spec.center) / spec.sigma;
                f.samples[k] = std::exp(-0.5 * r * r);
            }
            break;
        }
        case SignalKind::chirp: {
            for (std::size_t k = 0; k < spec.length; ++k) {
                const double dt = f.time(k) - spec.center;
                const double r = dt / spec.sigma;
                f.samples[k] = std::exp(-0.5 * r * r) *
                               std::exp(Complex(0.0, 0.5 * spec.rate * dt * dt));
            }
            break;
        }
        case SignalKind::random_compact: {
            std::uint64_t state = spec.seed;
            for (auto& z : f.samples) {
                const double re = gauss(state);
                const double im = gauss(state);
                z = Complex(re, im) / std::sqrt(2.0);
            }
            break;
        }
        case SignalKind::random_bandlimited: {
            const double nyquist = kPi / spec.step;
            if (!(spec.band > 0.0) || spec.band >= nyquist)
                throw InvalidSpec("band must lie in (0, pi/step)");
            std::uint64_t state = spec.seed;
            std::vector<Complex> x(spec.length);
            for (auto& z : x) {
                const double re = gauss(state);
                const double im = gauss(state);
                z = Complex(re, im) / std::sqrt(2.0);
            }
            // project onto the in-band DFT bins with a direct transform
            const auto n = spec.length;
            const double dn = static_cast<double>(n);
            std::vector<Complex> bins(n, Complex(0.0, 0.0));
            for (std::size_t k = 0; k < n; ++k) {
                const std::int64_t ks = (k <= n / 2) ? static_cast<std::int64_t>(k)
                                                     : static_cast<std::int64_t>(k) -
                                                           static_cast<std::int64_t>(n);
                const double omega = 2.0 * kPi * static_cast<double>(ks) / (dn * spec.step);
                if (std::abs(omega) > spec.band) continue;
                Complex acc(0.0, 0.0);
                for (std::size_t m = 0; m < n; ++m) {
                    const double ph = -2.0 * kPi * static_cast<double>(k) *
                                      static_cast<double>(m) / dn;
                    acc += x[m] * std::exp(Complex(0.0, ph));
                }
                bins[k] = acc;
            }
            for (std::size_t m = 0; m < n; ++m) {
                Complex acc(0.0, 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    if (bins[k] == Complex(0.0, 0.0)) continue;
                    const double ph = 2.0 * kPi * static_cast<double>(k) *
                                      static_cast<double>(m) / dn;
                    acc += bins[k] * std::exp(Complex(0.0, ph));
                }
                f.samples[m] = acc / dn;
            }
            break;
        }
        case SignalKind::two_bumps: {
            if (!(spec.gap > 0.0)) throw InvalidSpec("two_bumps gap must be positive");
            const double sigma = spec.gap / 16.0;  // tails meet at ~exp(-32)
            for (std::size_t k = 0; k < spec.length; ++k) {
                const double t = f.time(k);
                const double r1 = (t + 0.5 * spec.gap) / sigma;
                const double r2 = (t - 0.5 * spec.gap) / sigma;
                f.samples[k] = std::exp(-0.5 * r1 * r1) + 0.75 * std::exp(-0.5 * r2 * r2);
            }
            break;
        }
        case SignalKind::smooth_bump: {
            for (std::size_t k = 0; k < spec.length; ++k)
                f.samples[k] = bspline3((f.time(k) - spec.center) / spec.sigma);
            break;
        }
    }
    return f;
}

}  // namespace olct
