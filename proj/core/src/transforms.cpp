#include "olct/transforms.hpp"

#include <cmath>
#include <complex>
#include <iostream>

#include "olct/fft.hpp"

namespace olct {

namespace {

Complex kernel_amplitude(double b) {
    // principal branch of 1/sqrt(j 2 pi b); for b > 0 this is e^{-j pi/4}/sqrt(2 pi b)
    return 1.0 / std::sqrt(Complex(0.0, 2.0 * kPi * b));
}

Complex chirp_branch_value(const SampledSignal& x, const ParameterMatrix& A, double u,
                           bool allow_interpolation) {
    // b == 0: O(u) = sqrt(d) e^{j(cd/2)(u-y0)^2 + j u w0} x(d(u-y0))
    const double d = A.d();
    const double arg = d * (u - A.y0());
    const double pos = arg / x.step;
    const auto near = static_cast<std::int64_t>(std::llround(pos));
    Complex xv;
    if (std::abs(pos - static_cast<double>(near)) <= 1e-9 * std::max(1.0, std::abs(pos))) {
        xv = x.at(near);
    } else if (allow_interpolation) {
        const double fl = std::floor(pos);
        const double w = pos - fl;
        const auto n0 = static_cast<std::int64_t>(fl);
        xv = (1.0 - w) * x.at(n0) + w * x.at(n0 + 1);
    } else {
        throw DegenerateGridError("b = 0 transform argument falls off the sample lattice");
    }
    const Complex ph =
        std::exp(Complex(0.0, 0.5 * A.c() * d * (u - A.y0()) * (u - A.y0()) + u * A.w0()));
    return std::sqrt(Complex(d, 0.0)) * ph * xv;
}

}  // namespace

Complex olct_kernel(const ParameterMatrix& A, double t, double u) {
    const double b = A.b();
    const double phase = (A.a() * t * t + A.d() * A.y0() * A.y0() + 2.0 * t * (A.y0() - u) -
                          2.0 * u * (A.d() * A.y0() - b * A.w0()) + A.d() * u * u) /
                         (2.0 * b);
    return kernel_amplitude(b) * std::exp(Complex(0.0, phase));
}

Spectrum olct_forward(const SampledSignal& x, const ParameterMatrix& A, const Grid& ugrid,
                      bool allow_interpolation) {
    ugrid.validate();
    x.validate();
    Spectrum out;
    out.grid = ugrid;
    out.values.assign(ugrid.count, Complex{0.0, 0.0});

    if (A.is_degenerate()) {
        for (std::size_t i = 0; i < ugrid.count; ++i) {
            out.values[i] = chirp_branch_value(x, A, ugrid.point(i), allow_interpolation);
        }
        return out;
    }

    for (std::size_t i = 0; i < ugrid.count; ++i) {
        const double u = ugrid.point(i);
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < x.size(); ++k) {
            acc += x.samples[k] * olct_kernel(A, x.time(k), u);
        }
        out.values[i] = acc * x.step;
    }
    return out;
}

Grid olct_fast_grid(const SampledSignal& x, const ParameterMatrix& A) {
    if (A.is_degenerate()) {
        throw DegenerateParameterError("fast path requires b != 0");
    }
    const std::size_t L = fft::next_pow2(std::max<std::size_t>(2 * x.size(), 2));
    const double ab = std::abs(A.b());
    return Grid{A.y0() - kPi * ab / x.step, 2.0 * kPi * ab / (static_cast<double>(L) * x.step),
                L};
}

Spectrum olct_fast(const SampledSignal& x, const ParameterMatrix& A) {
    x.validate();
    const Grid grid = olct_fast_grid(x, A);
    const std::size_t L = grid.count;
    const double a = A.a(), b = A.b(), dt = x.step;

    std::vector<Complex> z(L, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = x.time(k);
        z[k] = x.samples[k] * std::exp(Complex(0.0, 0.5 * a * t * t / b)) * dt;
    }
    fft::forward_pow2(z);

    Spectrum out;
    out.grid = grid;
    out.values.resize(L);
    const Complex amp = kernel_amplitude(b);
    const double t0 = static_cast<double>(x.origin) * dt;
    const auto half = static_cast<std::int64_t>(L / 2);
    const std::int64_t sign = (b > 0.0) ? 1 : -1;
    const auto len = static_cast<std::int64_t>(L);
    for (std::size_t i = 0; i < L; ++i) {
        const double u = grid.point(i);
        const double xi = (u - A.y0()) / b;
        const std::int64_t mc = sign * (static_cast<std::int64_t>(i) - half);
        const std::size_t idx = static_cast<std::size_t>(((mc % len) + len) % len);
        const Complex dtft = std::exp(Complex(0.0, -xi * t0)) * z[idx];
        const double post = 0.5 * A.d() * (u - A.y0()) * (u - A.y0()) / b + u * A.w0();
        out.values[i] = amp * std::exp(Complex(0.0, post)) * dtft;
    }
    return out;
}

Complex inverse_phase_constant(const ParameterMatrix& A) {
    const double e = A.c() * A.d() * A.y0() * A.y0() - 2.0 * A.a() * A.d() * A.y0() * A.w0() +
                     A.a() * A.b() * A.w0() * A.w0();
    return std::exp(Complex(0.0, 0.5 * e));
}

SampledSignal olct_inverse(const Spectrum& S, const ParameterMatrix& A, const Grid& tgrid) {
    if (A.is_degenerate()) {
        throw DegenerateParameterError("inversion requires b != 0");
    }
    S.grid.validate();
    tgrid.validate();
    if (S.values.size() != S.grid.count) {
        throw GridMismatch("spectrum value count does not match its grid");
    }
    const auto origin = static_cast<std::int64_t>(std::llround(tgrid.start / tgrid.step));
    if (std::abs(tgrid.start - static_cast<double>(origin) * tgrid.step) > 1e-9 * tgrid.step) {
        throw GridMismatch("time grid must start on an integer multiple of its step");
    }
    if (S.grid.step > 2.0 * kPi * std::abs(A.b()) / tgrid.span()) {
        std::cerr << "olct_inverse: spectral step " << S.grid.step
                  << " is coarse for a time span of " << tgrid.span()
                  << "; inversion may alias\n";
    }

    const ParameterMatrix Ai = A.inverse();
    const Complex C = inverse_phase_constant(A);

    SampledSignal out;
    out.origin = origin;
    out.step = tgrid.step;
    out.samples.resize(tgrid.count);
    for (std::size_t k = 0; k < tgrid.count; ++k) {
        const double t = tgrid.point(k);
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < S.grid.count; ++m) {
            acc += S.values[m] * olct_kernel(Ai, S.grid.point(m), t);
        }
        out.samples[k] = C * acc * S.grid.step;
    }
    return out;
}

std::vector<double> olct_magnitude(const SampledSignal& x, const ParameterMatrix& A,
                                   const Grid& ugrid) {
    const Spectrum s = olct_forward(x, A, ugrid);
    std::vector<double> mag(s.values.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(s.values[i]);
    return mag;
}

}  // namespace olct
