#include <algorithm>
#include <cmath>

#include "olct/types.hpp"

namespace olct {

void Grid::validate() const {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
        throw GridMismatch("grid requires finite start and positive step");
    }
    if (count == 0) {
        throw GridMismatch("grid requires count >= 1");
    }
}

double SampledSignal::norm() const {
    double s = 0.0;
    for (const Complex& v : samples) s += std::norm(v);
    return std::sqrt(s);
}

double SampledSignal::energy() const {
    double s = 0.0;
    for (const Complex& v : samples) s += std::norm(v);
    return s * step;
}

void SampledSignal::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw GridMismatch("signal step must be positive and finite");
    }
    for (const Complex& v : samples) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidSpec("signal samples must be finite");
        }
    }
}

PhaseAlignment phase_invariant_error(const SampledSignal& f, const SampledSignal& g) {
    if (f.step != g.step) {
        throw GridMismatch("phase comparison requires equal sample steps");
    }
    const double nf = f.norm();
    if (nf == 0.0) throw ZeroSignal("reference signal has zero norm");

    const std::int64_t lo = std::min(f.origin, g.origin);
    const std::int64_t hi = std::max(f.last(), g.last());

    Complex ip{0.0, 0.0};  // <g, f> = sum conj(g) f
    for (std::int64_t n = lo; n < hi; ++n) ip += std::conj(g.at(n)) * f.at(n);

    double beta = (ip == Complex{0.0, 0.0}) ? 0.0 : std::arg(ip);
    if (beta == kPi) beta = -kPi;  // keep beta in [-pi, pi)

    const Complex rot = std::polar(1.0, beta);
    double err = 0.0;
    for (std::int64_t n = lo; n < hi; ++n) err += std::norm(f.at(n) - rot * g.at(n));

    return {beta, std::sqrt(err) / nf};
}

}  // namespace olct
