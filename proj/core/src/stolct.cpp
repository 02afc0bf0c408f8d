#include "olct/stolct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "olct/ambiguity.hpp"
#include "olct/errors.hpp"
#include "olct/transforms.hpp"

namespace olct {

namespace {

std::int64_t lattice_index(double value, double step, const char* what) {
    const double pos = value / step;
    const std::int64_t idx = std::llround(pos);
    if (std::abs(pos - static_cast<double>(idx)) > 1e-9 * std::max(1.0, std::abs(pos))) {
        throw GridMismatch(std::string(what) + " must lie on the sample lattice");
    }
    return idx;
}

// f[n] conj(phi[n - shift]) zero-padded onto f's full index range, so every
// shift shares one spectral grid.
SampledSignal windowed_product(const SampledSignal& f, const SampledSignal& phi,
                               std::int64_t shift) {
    SampledSignal g;
    g.origin = f.origin;
    g.step = f.step;
    g.samples.resize(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const std::int64_t n = f.origin + static_cast<std::int64_t>(k);
        g.samples[k] = f.samples[k] * std::conj(phi.at(n - shift));
    }
    return g;
}

bool matches_induced_grid(const Grid& g, const Grid& induced) {
    if (g.count != induced.count) return false;
    const double scale = std::max(std::abs(induced.start), induced.step * induced.count);
    return std::abs(g.start - induced.start) <= 1e-9 * scale &&
           std::abs(g.step - induced.step) <= 1e-12 * induced.step;
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Cardinal-series evaluation of a sampled signal at an arbitrary point,
// exact for signals bandlimited below the sample rate.
Complex eval_off_lattice(const SampledSignal& x, double t) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += x.samples[k] * sinc(kPi * (t - x.time(k)) / x.step);
    }
    return acc;
}

std::string window_tag(const SampledSignal& phi) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "window[o=%lld,n=%zu,dt=%g]",
                  static_cast<long long>(phi.origin), phi.size(), phi.step);
    return buf;
}

}  // namespace

MagnitudeMap magnitude_map(const TimeFrequencyMap& map) {
    MagnitudeMap out;
    out.shift_grid = map.shift_grid;
    out.freq_grid = map.freq_grid;
    out.window_id = map.window_id;
    out.values.resize(map.values.size());
    for (std::size_t i = 0; i < map.values.size(); ++i) out.values[i] = std::abs(map.values[i]);
    return out;
}

TimeFrequencyMap stolct(const SampledSignal& f, const SampledSignal& phi, const ParameterMatrix& A,
                        const Grid& shift_grid, const Grid& freq_grid) {
    f.validate();
    phi.validate();
    shift_grid.validate();
    freq_grid.validate();
    if (f.step != phi.step) throw GridMismatch("signal and window must share a step");
    if (A.is_degenerate()) throw DegenerateParameterError("windowed transform requires b != 0");

    TimeFrequencyMap map;
    map.shift_grid = shift_grid;
    map.freq_grid = freq_grid;
    map.window_id = window_tag(phi);
    map.values.resize(shift_grid.count * freq_grid.count);

    const Grid induced = olct_fast_grid(f, A);
    const bool fast = matches_induced_grid(freq_grid, induced);

    const Complex amp = 1.0 / std::sqrt(Complex(0.0, 2.0 * kPi * A.b()));
    const double chirp = 0.5 * A.a() / A.b();

    for (std::size_t i = 0; i < shift_grid.count; ++i) {
        const std::int64_t shift = lattice_index(shift_grid.point(i), f.step, "shift");
        const SampledSignal g = windowed_product(f, phi, shift);
        if (fast) {
            const Spectrum s = olct_fast(g, A);
            std::copy(s.values.begin(), s.values.end(), map.values.begin() + i * freq_grid.count);
            continue;
        }
        for (std::size_t j = 0; j < freq_grid.count; ++j) {
            const double u = freq_grid.point(j);
            const double xi = (u - A.y0()) / A.b();
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < g.size(); ++k) {
                const double t = g.time(k);
                acc += g.samples[k] * std::exp(Complex(0.0, chirp * t * t - xi * t));
            }
            const double du = u - A.y0();
            const Complex post =
                std::exp(Complex(0.0, 0.5 * A.d() / A.b() * du * du + u * A.w0()));
            map.values[i * freq_grid.count + j] = amp * post * acc * f.step;
        }
    }
    return map;
}

double stolct_magnitude_identity_residual(const SampledSignal& f, const SampledSignal& phi,
                                          const ParameterMatrix& A, const std::vector<double>& vgrid,
                                          const std::vector<double>& ugrid) {
    f.validate();
    phi.validate();
    if (f.step != phi.step) throw GridMismatch("signal and window must share a step");
    if (A.is_degenerate()) throw DegenerateParameterError("identity check requires b != 0");

    const double dt = f.step;
    // Shifts covering every overlap between the signal and the window, so the
    // shift sum captures the full correlation support.
    const std::int64_t lo = f.origin - (phi.last() - 1);
    const std::int64_t hi = (f.last() - 1) - phi.origin;
    const Grid shifts{static_cast<double>(lo) * dt, dt, static_cast<std::size_t>(hi - lo + 1)};
    const Grid freqs = olct_fast_grid(f, A);

    const TimeFrequencyMap map = stolct(f, phi, A, shifts, freqs);

    std::vector<double> mag2(map.values.size());
    for (std::size_t i = 0; i < map.values.size(); ++i) mag2[i] = std::norm(map.values[i]);

    SampledSignal ft = f;
    const double chirp = 0.5 * A.a() / A.b();
    for (std::size_t k = 0; k < ft.size(); ++k) {
        const double t = ft.time(k);
        ft.samples[k] *= std::exp(Complex(0.0, chirp * t * t));
    }

    struct Point {
        Complex lhs, rhs;
    };
    std::vector<Point> points;
    points.reserve(vgrid.size() * ugrid.size());
    double rhs_peak = 0.0;

    std::vector<Complex> row(shifts.count);
    for (double vp : vgrid) {
        const std::int64_t m = lattice_index(A.b() * vp, dt, "b * v'");
        // Frequency sum first: one pass over the map per v'.
        for (std::size_t i = 0; i < shifts.count; ++i) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j < freqs.count; ++j) {
                acc += mag2[i * freqs.count + j] * std::exp(Complex(0.0, vp * freqs.point(j)));
            }
            row[i] = acc * freqs.step;
        }
        const Complex offset_phase = std::exp(Complex(0.0, A.y0() * vp));
        for (double up : ugrid) {
            Complex lhs{0.0, 0.0};
            for (std::size_t i = 0; i < shifts.count; ++i) {
                lhs += row[i] * std::exp(Complex(0.0, -up * shifts.point(i)));
            }
            lhs *= dt;
            const Complex rhs = offset_phase * cross_ambiguity_point(ft, ft, m, up) *
                                std::conj(cross_ambiguity_point(phi, phi, m, up));
            rhs_peak = std::max(rhs_peak, std::abs(rhs));
            points.push_back({lhs, rhs});
        }
    }

    double residual = 0.0;
    const double floor = 1e-8 * rhs_peak;
    for (const Point& p : points) {
        if (std::abs(p.rhs) > floor && floor > 0.0) {
            residual = std::max(residual, std::abs(p.lhs - p.rhs) / std::abs(p.rhs));
        }
    }
    return residual;
}

namespace {

std::vector<double> magnitude_samples(const SampledSignal& f, const SampledSignal& phi,
                                      const ParameterMatrix& A, double u, double spacing,
                                      std::int64_t n_min, std::size_t count) {
    f.validate();
    phi.validate();
    if (A.is_degenerate()) throw DegenerateParameterError("sampling requires b != 0");
    if (!(spacing > 0.0)) throw InvalidSpec("sample spacing must be positive");

    const double xi = (u - A.y0()) / A.b();
    const Complex amp = 1.0 / std::sqrt(Complex(0.0, 2.0 * kPi * A.b()));
    const double chirp = 0.5 * A.a() / A.b();

    std::vector<double> values(count);
    for (std::size_t s = 0; s < count; ++s) {
        const double v = static_cast<double>(n_min + static_cast<std::int64_t>(s)) * spacing;
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double t = f.time(k);
            acc += f.samples[k] * std::conj(eval_off_lattice(phi, t - v)) *
                   std::exp(Complex(0.0, chirp * t * t - xi * t));
        }
        // modulus only: the unimodular post-factor drops out
        values[s] = std::abs(amp) * std::abs(acc) * f.step;
    }
    return values;
}

}  // namespace

StolctSampleSet sample_stolct_magnitude(const SampledSignal& f, const SampledSignal& phi,
                                        const ParameterMatrix& A, double u, BandLimit window_band,
                                        BandLimit signal_band, std::int64_t n_min,
                                        std::size_t count) {
    if (A.is_degenerate()) throw DegenerateParameterError("sampling requires b != 0");
    const double xi = (u - A.y0()) / A.b();
    StolctSampleSet out;
    out.u = u;
    out.band_at_u = std::max(std::abs(window_band.omega + xi), std::abs(-window_band.omega + xi));
    out.spacing = 1.0 / (4.0 * out.band_at_u);
    out.signal_band = signal_band.omega;
    out.n_min = n_min;
    out.values = magnitude_samples(f, phi, A, u, out.spacing, n_min, count);
    return out;
}

StolctSampleSet sample_stolct_magnitude_uniform(const SampledSignal& f, const SampledSignal& phi,
                                                const ParameterMatrix& A, double u, double spacing,
                                                BandLimit signal_band, std::int64_t n_min,
                                                std::size_t count) {
    StolctSampleSet out;
    out.u = u;
    out.spacing = spacing;
    out.band_at_u = 0.25 / spacing;  // the band this spacing is matched to
    out.signal_band = signal_band.omega;
    out.n_min = n_min;
    out.values = magnitude_samples(f, phi, A, u, spacing, n_min, count);
    return out;
}

std::vector<double> interpolate_bandlimited(const std::vector<double>& samples, std::int64_t n_min,
                                            double rate, double band, const Grid& tgrid,
                                            std::size_t radius) {
    if (!(rate > 0.0) || !(band > 0.0)) {
        throw InvalidSpec("interpolation needs positive rate and band");
    }
    if (rate < 2.0 * band * (1.0 - 1e-12)) {
        throw NyquistViolation("sample rate below twice the band");
    }
    tgrid.validate();

    std::vector<double> out(tgrid.count, 0.0);
    const std::int64_t n_max = n_min + static_cast<std::int64_t>(samples.size());
    for (std::size_t i = 0; i < tgrid.count; ++i) {
        const double x = rate * tgrid.point(i);
        const std::int64_t center = std::llround(x);
        const std::int64_t lo = std::max(n_min, center - static_cast<std::int64_t>(radius));
        const std::int64_t hi = std::min(n_max, center + static_cast<std::int64_t>(radius) + 1);
        double acc = 0.0;
        for (std::int64_t n = lo; n < hi; ++n) {
            acc += samples[static_cast<std::size_t>(n - n_min)] *
                   sinc(kPi * (x - static_cast<double>(n)));
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace olct
