#pragma once

#include "olct/errors.hpp"

namespace olct {

/// The six transform parameters (a, b, c, d, y0, w0) with ad - bc = 1.
/// Immutable once constructed; construction validates the determinant.
/// b == 0 marks the degenerate (chirp-scaling) branch of the transform.
class ParameterMatrix {
public:
    static constexpr double kDetTol = 1e-12;

    ParameterMatrix(double a, double b, double c, double d, double y0, double w0);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double y0() const { return y0_; }
    double w0() const { return w0_; }

    double determinant() const { return a_ * d_ - b_ * c_; }
    bool is_degenerate() const { return b_ == 0.0; }

    /// Matrix of the inverse transform:
    /// (d, -b, -c, a, b*w0 - d*y0, c*y0 - a*w0).
    ParameterMatrix inverse() const;

    static ParameterMatrix fourier();                              // (0,1,-1,0,0,0)
    static ParameterMatrix fractional(double theta);               // rotation by theta
    static ParameterMatrix lct(double a, double b, double c, double d);  // zero offsets
    static ParameterMatrix fresnel(double z);                      // (1,z,0,1,0,0)

private:
    double a_, b_, c_, d_, y0_, w0_;
};

}  // namespace olct
