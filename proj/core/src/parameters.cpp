#include "olct/parameters.hpp"

#include <cmath>
#include <sstream>

namespace olct {

ParameterMatrix::ParameterMatrix(double a, double b, double c, double d, double y0, double w0)
    : a_(a), b_(b), c_(c), d_(d), y0_(y0), w0_(w0) {
    for (double v : {a, b, c, d, y0, w0}) {
        if (!std::isfinite(v)) {
            throw DeterminantError("parameter matrix entries must be finite");
        }
    }
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > kDetTol) {
        std::ostringstream msg;
        msg << "determinant " << det << " deviates from 1 by more than " << kDetTol;
        throw DeterminantError(msg.str());
    }
}

ParameterMatrix ParameterMatrix::inverse() const {
    return {d_, -b_, -c_, a_, b_ * w0_ - d_ * y0_, c_ * y0_ - a_ * w0_};
}

ParameterMatrix ParameterMatrix::fourier() { return {0.0, 1.0, -1.0, 0.0, 0.0, 0.0}; }

ParameterMatrix ParameterMatrix::fractional(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c, 0.0, 0.0};
}

ParameterMatrix ParameterMatrix::lct(double a, double b, double c, double d) {
    return {a, b, c, d, 0.0, 0.0};
}

ParameterMatrix ParameterMatrix::fresnel(double z) { return {1.0, z, 0.0, 1.0, 0.0, 0.0}; }

}  // namespace olct
