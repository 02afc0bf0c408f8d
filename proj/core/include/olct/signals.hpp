#pragma once

#include <cstdint>
#include <string>

#include "olct/types.hpp"

namespace olct {

enum class SignalKind {
    gaussian,            ///< exp(-(t-center)^2 / (2 sigma^2)), real
    chirp,               ///< gaussian envelope times exp(j rate (t-center)^2 / 2)
    random_compact,      ///< iid complex standard normal samples
    random_bandlimited,  ///< random samples projected onto DFT bins |omega| <= band
    two_bumps,           ///< two well-separated gaussian bumps (separable test input)
    smooth_bump,         ///< cubic B-spline bump, exactly zero outside |t-center| <= 2 sigma
};

SignalKind signal_kind_from_name(const std::string& name);  // throws InvalidSpec
std::string signal_kind_name(SignalKind kind);

/// Deterministic test-signal recipe: a shape, its parameters, and the lattice
/// it is sampled on (length samples at the given step; the grid is centered so
/// t = 0 is always a lattice point, origin = -floor(length/2)).
struct SignalSpec {
    SignalKind kind = SignalKind::gaussian;
    std::size_t length = 0;
    double step = 1.0;
    double sigma = 1.0;      ///< gaussian / chirp envelope / smooth_bump width
    double center = 0.0;     ///< gaussian / chirp / smooth_bump
    double rate = 0.0;       ///< chirp quadratic-phase rate
    double band = 0.0;       ///< random_bandlimited angular band edge
    double gap = 0.0;        ///< two_bumps center separation
    std::uint64_t seed = 0;  ///< random kinds
};

/// Generates the signal a spec describes. Bit-identical across runs for a
/// given spec: the random kinds use a fixed splitmix64 / Box-Muller stream,
/// and random_bandlimited projects through a direct O(N^2) DFT rather than a
/// planner-dependent FFT. Throws InvalidSpec on a nonpositive length or step,
/// nonpositive sigma where the kind uses one, nonpositive gap, or a band
/// outside (0, pi/step).
SampledSignal generate_signal(const SignalSpec& spec);

}  // namespace olct
