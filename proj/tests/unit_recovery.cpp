#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <olct/ambiguity.hpp>
#include <olct/errors.hpp>
#include <olct/pairs.hpp>
#include <olct/recovery.hpp>
#include <olct/stolct.hpp>
#include <olct/transforms.hpp>
#include <olct/types.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "support/oracles.hpp"

using olct::Complex;
using olct::Grid;
using olct::kPi;
using olct::MagnitudeMap;
using olct::MagnitudeMeasurement;
using olct::ParameterMatrix;
using olct::SampledSignal;
using olct::StolctSampleSet;
using olct::SupportWindow;

namespace {

SampledSignal gaussian_bump(std::int64_t half, double step, double sigma, double center = 0.0,
                            double slope = 0.0, Complex amp = Complex(1.0, 0.0)) {
    SampledSignal out;
    out.origin = -half;
    out.step = step;
    out.samples.resize(static_cast<std::size_t>(2 * half + 1));
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        const double t = out.time(k);
        const double d = t - center;
        out.samples[k] = amp * std::exp(Complex(-d * d / (2.0 * sigma * sigma), slope * t * t));
    }
    return out;
}

SupportWindow window_of(const SampledSignal& f) { return {f.origin, f.size(), f.step}; }

// shift grid covering every signal/window overlap, and a frequency grid whose
// one-period span is sampled densely enough that the signal+window correlation
// range fits without wrapping
MagnitudeMap stolct_map(const SampledSignal& f, const SampledSignal& phi,
                        const ParameterMatrix& A) {
    const std::int64_t lo = f.origin - (phi.last() - 1);
    const std::int64_t hi = (f.last() - 1) - phi.origin;
    const Grid shifts{static_cast<double>(lo) * f.step, f.step,
                      static_cast<std::size_t>(hi - lo + 1)};
    const std::size_t nfreq = 2 * (f.size() + phi.size());
    const double dt = f.step;
    const Grid freqs{A.y0() - kPi * A.b() / dt, 2.0 * kPi * A.b() / (static_cast<double>(nfreq) * dt),
                     nfreq};
    return olct::magnitude_map(olct::stolct(f, phi, A, shifts, freqs));
}

std::vector<MagnitudeMeasurement> measure_family(const SampledSignal& f,
                                                 const std::vector<ParameterMatrix>& family) {
    std::vector<MagnitudeMeasurement> mags;
    mags.reserve(family.size());
    for (const auto& A : family) {
        const auto spec = olct::olct_fast(f, A);
        std::vector<double> m2(spec.values.size());
        for (std::size_t j = 0; j < m2.size(); ++j) m2[j] = std::norm(spec.values[j]);
        mags.push_back({A, std::move(m2), spec.grid});
    }
    return mags;
}

std::vector<ParameterMatrix> ratio_family(std::size_t count, double ratio_step, double y0,
                                          double w0) {
    // a/b = k * ratio_step with b = 1, d = 1, c = a - 1 keeps the determinant at 1
    std::vector<ParameterMatrix> family;
    family.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) {
        const double a = static_cast<double>(k) * ratio_step;
        family.emplace_back(a, 1.0, a - 1.0, 1.0, y0, w0);
    }
    return family;
}

double signal_distance(const SampledSignal& a, const SampledSignal& b) {
    return olct::phase_invariant_error(a, b).residual;
}

}  // namespace

TEST_CASE("lag product assembly and eigenpair extraction") {
    oracle::Rng rng(0x5eed001u);
    const std::size_t n = 8;
    const auto f = oracle::random_signal(rng, n, -3, 0.5);
    const SupportWindow support = window_of(f);

    std::map<std::int64_t, std::vector<Complex>> rows;
    for (std::int64_t v = -(static_cast<std::int64_t>(n) - 1); v < static_cast<std::int64_t>(n);
         ++v) {
        std::vector<Complex> row(n, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t j = static_cast<std::int64_t>(i) - v;
            if (j >= 0 && j < static_cast<std::int64_t>(n))
                row[i] = f.samples[i] * std::conj(f.samples[static_cast<std::size_t>(j)]);
        }
        rows[v] = row;
    }

    SUBCASE("exact rows give a Hermitian rank-one matrix with eigenvector along the signal") {
        const auto m = olct::assemble_lag_matrix(rows, support);
        REQUIRE(m.n == n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(m.at(i, j) - std::conj(m.at(j, i))) <= 1e-10);

        const auto eig = oracle::hermitian_eigen(m.entries, n);
        const double l1 = eig.values.back();
        double second = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) second = std::max(second, std::abs(eig.values[i]));
        CHECK(second <= 1e-6 * l1);

        const auto lead = olct::leading_eigenpair(m);
        CHECK(lead.value == doctest::Approx(l1).epsilon(1e-10));
        CHECK(std::abs(lead.second_value) <= 1e-8 * l1);
        // eigenvector proportional to f (compare phase-invariantly)
        SampledSignal unit = f;
        for (auto& z : unit.samples) z /= f.norm();
        SampledSignal got{lead.vector, support.origin, support.step};
        CHECK(signal_distance(unit, got) <= 1e-10);

        // cross-check the power iteration against the oracle eigenvector
        double dev = 0.0;
        Complex align{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) align += std::conj(eig.leading[i]) * lead.vector[i];
        align /= std::abs(align);
        for (std::size_t i = 0; i < n; ++i)
            dev = std::max(dev, std::abs(lead.vector[i] - align * eig.leading[i]));
        CHECK(dev <= 1e-8);
    }

    SUBCASE("lag-0 row alone gives a diagonal matrix") {
        std::map<std::int64_t, std::vector<Complex>> only0;
        only0[0] = rows[0];
        for (std::int64_t v = 1; v < static_cast<std::int64_t>(n); ++v)
            only0[v] = std::vector<Complex>(n, Complex(0.0, 0.0));
        const auto m = olct::assemble_lag_matrix(only0, support);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j)
                    CHECK(m.at(i, j) == Complex(std::norm(f.samples[i]), 0.0));
                else
                    CHECK(m.at(i, j) == Complex(0.0, 0.0));
            }
    }

    SUBCASE("missing negative lags are reconstructed by conjugate symmetry") {
        std::map<std::int64_t, std::vector<Complex>> half;
        for (const auto& [v, row] : rows)
            if (v >= 0) half[v] = row;
        const auto full = olct::assemble_lag_matrix(rows, support);
        const auto folded = olct::assemble_lag_matrix(half, support);
        double dev = 0.0;
        for (std::size_t i = 0; i < n * n; ++i)
            dev = std::max(dev, std::abs(full.entries[i] - folded.entries[i]));
        CHECK(dev <= 1e-14);
    }

    SUBCASE("absent lag pair throws") {
        std::map<std::int64_t, std::vector<Complex>> gappy = rows;
        gappy.erase(3);
        gappy.erase(-3);
        CHECK_THROWS_AS(olct::assemble_lag_matrix(gappy, support), olct::MissingLag);
    }

    SUBCASE("wrong row length throws") {
        std::map<std::int64_t, std::vector<Complex>> bad = rows;
        bad[2].pop_back();
        CHECK_THROWS_AS(olct::assemble_lag_matrix(bad, support), olct::InvalidSpec);
    }
}

TEST_CASE("multi-transform magnitude recovery round trip") {
    oracle::Rng rng(0x5eed002u);
    const std::size_t n = 8;
    const auto f = oracle::random_signal(rng, n, -3, 0.5);
    const SupportWindow support = window_of(f);
    const auto family = ratio_family(16, 0.25, 0.2, -0.35);
    const auto mags = measure_family(f, family);

    SUBCASE("random compact signal is recovered up to global phase") {
        const auto rep = olct::recover_from_multi_olct(mags, support, &f);
        CHECK(rep.residual <= 1e-6);
        CHECK(rep.diagnostics.at("rank_gap") >= 1e6);
        CHECK(rep.diagnostics.at("rank_deficient") == 0.0);
        CHECK(rep.diagnostics.at("data_misfit") <= 1e-8);
        CHECK(rep.diagnostics.at("distinct_ratios") == 16.0);
    }

    SUBCASE("global input phase does not change the recovery") {
        SampledSignal g = f;
        for (auto& z : g.samples) z *= std::exp(Complex(0.0, 0.8));
        const auto rep_f = olct::recover_from_multi_olct(mags, support, nullptr);
        const auto rep_g =
            olct::recover_from_multi_olct(measure_family(g, family), support, nullptr);
        CHECK(signal_distance(rep_f.signal, rep_g.signal) <= 1e-10);
    }

    SUBCASE("impulse data is recovered as an impulse of the right height") {
        // every measurement of an impulse has constant magnitude, so the
        // position is genuinely undetermined; the height and sparsity are not
        SampledSignal imp;
        imp.origin = -3;
        imp.step = 0.5;
        imp.samples.assign(n, Complex(0.0, 0.0));
        imp.samples[0] = Complex(0.6, -0.3);
        const auto rep =
            olct::recover_from_multi_olct(measure_family(imp, family), support, nullptr);
        CHECK(rep.residual <= 1e-10);  // data misfit: the rebuilt magnitudes match
        std::size_t above = 0;
        double peak = 0.0;
        for (const auto& z : rep.signal.samples) {
            if (std::abs(z) > 1e-8) ++above;
            peak = std::max(peak, std::abs(z));
        }
        CHECK(above == 1);
        CHECK(peak == doctest::Approx(std::abs(imp.samples[0])).epsilon(1e-10));
    }
}

TEST_CASE("multi-transform recovery guards") {
    oracle::Rng rng(0x5eed003u);
    const std::size_t n = 8;
    const auto f = oracle::random_signal(rng, n, 0, 0.5);
    const SupportWindow support = window_of(f);

    SUBCASE("too few distinct chirp ratios throws") {
        const auto mags = measure_family(f, ratio_family(4, 0.25, 0.0, 0.0));
        CHECK_THROWS_AS(olct::recover_from_multi_olct(mags, support, nullptr),
                        olct::InsufficientDiversity);
    }

    SUBCASE("duplicated ratios do not count toward diversity") {
        auto family = ratio_family(4, 0.25, 0.0, 0.0);
        auto twice = family;
        twice.insert(twice.end(), family.begin(), family.end());
        twice.insert(twice.end(), family.begin(), family.end());
        twice.insert(twice.end(), family.begin(), family.end());
        REQUIRE(twice.size() == 16);
        const auto mags = measure_family(f, twice);
        CHECK_THROWS_AS(olct::recover_from_multi_olct(mags, support, nullptr),
                        olct::InsufficientDiversity);
    }

    SUBCASE("a corrupted measurement shows up as misfit and a weak rank gap") {
        const auto family = ratio_family(16, 0.25, 0.0, 0.0);
        auto mags = measure_family(f, family);
        auto other = oracle::random_signal(rng, n, 0, 0.5);
        for (auto& z : other.samples) z *= 2.0;
        const auto bad = measure_family(other, family);
        mags[0].mag2 = bad[0].mag2;
        mags[1].mag2 = bad[1].mag2;
        const auto rep = olct::recover_from_multi_olct(mags, support, nullptr);
        CHECK(rep.residual > 1e-2);  // residual is the data misfit here
        CHECK(rep.diagnostics.at("rank_gap") < 1e4);
    }
}

TEST_CASE("multi-transform recovery respects trivial shift orbits") {
    oracle::Rng rng(0x5eed004u);
    const std::size_t n = 8;
    const auto x = oracle::random_signal(rng, n, -4, 0.5);
    const auto family = ratio_family(16, 0.25, 0.0, 0.0);
    const auto shifted = olct::apply_trivial_ambiguity(x, family[2], olct::Shift{2});

    const auto rep_x = olct::recover_from_multi_olct(measure_family(x, family), window_of(x), &x);
    const auto rep_s = olct::recover_from_multi_olct(measure_family(shifted, family),
                                                     window_of(shifted), &shifted);
    CHECK(rep_x.residual <= 1e-6);
    CHECK(rep_s.residual <= 1e-6);

    const Grid coarse = olct::olct_fast_grid(x, family[2]);
    const Grid fine{coarse.start, coarse.step / 2.0, coarse.count * 2};
    const auto cert = olct::certify_pair(rep_x.signal, rep_s.signal, family[2], fine, 1e-6);
    CHECK(cert.passed);
    CHECK(cert.trivial_equivalent);
}

TEST_CASE("windowed-map rank-one recovery") {
    // window width matched to the signal width, and both narrow: the de-chirped
    // signal's lag products drift in frequency by lag * a/b, and over the
    // correlation range of a narrow bump that drift stays well inside the
    // window's alive zone, so masking only ever drops sub-floor content
    const auto f = gaussian_bump(32, 0.125, 0.35, 0.4, 0.0, Complex(0.9, 0.35));
    const auto phi = gaussian_bump(24, 0.125, 0.35);
    const auto A = ParameterMatrix::fractional(kPi / 4.0);
    const auto map = stolct_map(f, phi, A);
    const SupportWindow support = window_of(f);

    SUBCASE("Gaussian window round trip") {
        const auto rep = olct::recover_from_stolct(map, phi, A, support, 1e-8, 0.95, &f);
        CHECK(rep.residual <= 1e-6);
        CHECK(rep.diagnostics.at("rank_gap") >= 1e6);
        CHECK(rep.diagnostics.at("data_misfit") <= 1e-6);
        CHECK(rep.diagnostics.at("masked_fraction") < 0.95);
    }

    SUBCASE("global input phase does not change the recovery") {
        SampledSignal g = f;
        for (auto& z : g.samples) z *= std::exp(Complex(0.0, -1.1));
        const auto map_g = stolct_map(g, phi, A);
        const auto rep_f = olct::recover_from_stolct(map, phi, A, support, 1e-8, 0.95, nullptr);
        const auto rep_g = olct::recover_from_stolct(map_g, phi, A, support, 1e-8, 0.95, nullptr);
        CHECK(signal_distance(rep_f.signal, rep_g.signal) <= 5e-8);
    }

    SUBCASE("a tight masked-fraction budget rejects the far-lag dead zone") {
        CHECK_THROWS_AS(olct::recover_from_stolct(map, phi, A, support, 1e-8, 0.1, nullptr),
                        olct::WindowVanishes);
    }

    SUBCASE("a window with a gap in its lag support is flagged or fails loudly") {
        // two narrow bumps far apart: their self-products cover lags near 0
        // and near +-5 but miss the band in between, where a wide signal still
        // has correlation mass -- that information is unrecoverable
        SampledSignal bumps = gaussian_bump(36, 0.125, 0.25, -2.5);
        const auto right = gaussian_bump(36, 0.125, 0.25, 2.5);
        for (std::size_t k = 0; k < bumps.samples.size(); ++k)
            bumps.samples[k] += right.samples[k];
        const auto wide = gaussian_bump(32, 0.125, 1.0, 0.4, 0.0, Complex(0.9, 0.35));
        const auto map_b = stolct_map(wide, bumps, A);
        bool flagged = false;
        try {
            const auto rep =
                olct::recover_from_stolct(map_b, bumps, A, window_of(wide), 1e-8, 0.95, &wide);
            flagged = rep.residual > 1e-3;
        } catch (const olct::WindowVanishes&) {
            flagged = true;
        }
        CHECK(flagged);
    }

    SUBCASE("zero map recovers the zero signal") {
        MagnitudeMap zero = map;
        std::fill(zero.values.begin(), zero.values.end(), 0.0);
        const auto rep = olct::recover_from_stolct(zero, phi, A, support, 1e-8, 0.95, nullptr);
        for (const auto& z : rep.signal.samples) CHECK(std::abs(z) == 0.0);
        CHECK(rep.residual <= 1e-12);
    }
}

TEST_CASE("real nonseparable recovery and separability dichotomy") {
    const double dt = 0.125;
    // narrow window: its zero-lag transform stays above the division floor
    // over the whole induced frequency period, so no coefficient is masked
    // and the energy tails stay at rounding level
    const auto phi = gaussian_bump(12, dt, 0.17);
    const ParameterMatrix A(0.9, 1.2, (0.9 * 1.3 - 1.0) / 1.2, 1.3, 0.15, -0.2);

    SUBCASE("single bump is determined up to sign") {
        const auto f = gaussian_bump(48, dt, 0.8, -0.7);
        const auto rep =
            olct::recover_nonseparable_real(stolct_map(f, phi, A), phi, A, window_of(f), &f);
        CHECK(rep.verdict == "unique_up_to_sign");
        CHECK(rep.residual <= 1e-6);
        CHECK(rep.diagnostics.at("components") == 1.0);

        SampledSignal neg = f;
        for (auto& z : neg.samples) z = -z;
        const auto rep2 =
            olct::recover_nonseparable_real(stolct_map(neg, phi, A), phi, A, window_of(f), &neg);
        CHECK(rep2.residual <= 1e-6);  // the sign is absorbed by the phase alignment
    }

    SUBCASE("two disjoint bumps are declared separable and share magnitudes with the sign flip") {
        const auto f1 = gaussian_bump(64, dt, 0.5, -4.0);
        const auto f2 = gaussian_bump(64, dt, 0.5, 4.0);
        SampledSignal sum = f1;
        SampledSignal diff = f1;
        for (std::size_t k = 0; k < sum.samples.size(); ++k) {
            sum.samples[k] = f1.samples[k] + f2.samples[k];
            diff.samples[k] = f1.samples[k] - f2.samples[k];
        }
        const auto map_sum = stolct_map(sum, phi, A);
        const auto map_diff = stolct_map(diff, phi, A);
        double share = 0.0;
        for (std::size_t i = 0; i < map_sum.values.size(); ++i)
            share = std::max(share, std::abs(map_sum.values[i] - map_diff.values[i]));
        CHECK(share <= 1e-8);

        const auto rep = olct::recover_nonseparable_real(map_sum, phi, A, window_of(sum), nullptr);
        CHECK(rep.verdict == "separable_ambiguous");
        CHECK(rep.diagnostics.at("components") == 2.0);
        // the nonnegative representative matches |f1 + f2| = |f1 - f2|
        double amp_dev = 0.0;
        for (std::size_t k = 0; k < sum.samples.size(); ++k)
            amp_dev = std::max(amp_dev,
                               std::abs(std::abs(rep.signal.samples[k]) - std::abs(sum.samples[k])));
        CHECK(amp_dev <= 1e-6);
    }

    SUBCASE("zero signal yields a zero recovery with a unique verdict") {
        SampledSignal zero;
        zero.origin = -32;
        zero.step = dt;
        zero.samples.assign(65, Complex(0.0, 0.0));
        const auto rep = olct::recover_nonseparable_real(stolct_map(zero, phi, A), phi, A,
                                                         window_of(zero), nullptr);
        CHECK(rep.verdict == "unique_up_to_sign");
        for (const auto& z : rep.signal.samples) CHECK(std::abs(z) == 0.0);
    }

    SUBCASE("an inconsistent map is rejected as negative energy") {
        const auto f = gaussian_bump(48, dt, 0.8);
        auto map = stolct_map(f, phi, A);
        std::fill(map.values.begin(), map.values.end(), 0.0);
        map.values[(map.shift_grid.count / 2) * map.freq_grid.count + map.freq_grid.count / 3] = 1.0;
        CHECK_THROWS_AS(olct::recover_nonseparable_real(map, phi, A, window_of(f), nullptr),
                        olct::NegativeEnergy);
    }
}

TEST_CASE("bandlimited sampled recovery, plain-transform band mode") {
    const double dt = 0.125;
    const auto f = gaussian_bump(64, dt, 1.0, 0.3);  // plain-transform band ~ 6.1
    // narrow window: its zero-lag transform keeps a healthy margin above the
    // division floor across the whole +-2*band row, so the recovered energy
    // tails stay near rounding level and the support is one component
    const auto phi = gaussian_bump(18, dt, 0.35);
    const ParameterMatrix A(0.6, 1.0, 0.6 * 1.0 - 1.0, 1.0, 0.1, 0.25);
    const olct::BandLimit f_band{6.1};
    const olct::BandLimit w_band{17.3};

    const double u_lo = A.y0() - 23.4;
    const double du = 0.3;
    const std::size_t nu = 157;
    const double vspan = 11.0;
    std::vector<StolctSampleSet> sets;
    sets.reserve(nu);
    for (std::size_t i = 0; i < nu; ++i) {
        const double u = u_lo + du * static_cast<double>(i);
        // probe call fixes the spacing so the span can be converted to counts
        auto probe = olct::sample_stolct_magnitude(f, phi, A, u, w_band, f_band, 0, 1);
        const auto n_min = static_cast<std::int64_t>(std::floor(-vspan / probe.spacing));
        const auto count = static_cast<std::size_t>(2 * (-n_min) + 1);
        sets.push_back(olct::sample_stolct_magnitude(f, phi, A, u, w_band, f_band, n_min, count));
    }

    SUBCASE("real bandlimited bump round trip") {
        const auto rep = olct::recover_bandlimited_sampled(sets, phi, A, f_band,
                                                           olct::BandMode::ft_band, window_of(f),
                                                           {}, &f);
        CHECK(rep.verdict == "unique_up_to_sign");
        CHECK(rep.residual <= 1e-4);
        CHECK(rep.diagnostics.at("masked_fraction") <= 0.2);
    }

    SUBCASE("half-rate samples violate the sampling gate") {
        std::vector<StolctSampleSet> thin = sets;
        for (auto& s : thin) {
            std::vector<double> kept;
            for (std::size_t k = 0; k < s.values.size(); k += 2) kept.push_back(s.values[k]);
            s.values = std::move(kept);
            s.spacing *= 2.0;  // band_at_u still claims the full band
            s.n_min /= 2;
        }
        CHECK_THROWS_AS(olct::recover_bandlimited_sampled(thin, phi, A, f_band,
                                                          olct::BandMode::ft_band, window_of(f),
                                                          {}, nullptr),
                        olct::NyquistViolation);
    }
}

TEST_CASE("bandlimited sampled recovery, transform-domain band mode") {
    const double dt = 0.125;
    const ParameterMatrix A(0.8, 1.0, 0.8 * 1.1 - 1.0, 1.1, 0.3, -0.4);
    const double omega = 4.3;

    // synthesize a signal whose transform is a compact Gaussian bump
    const std::size_t nspec = 64;
    const double du_s = 0.2;
    olct::Spectrum spec;
    spec.grid = Grid{-du_s * static_cast<double>(nspec / 2), du_s, nspec};
    spec.values.resize(nspec);
    for (std::size_t m = 0; m < nspec; ++m) {
        const double u = spec.grid.point(m);
        spec.values[m] = std::exp(Complex(-u * u / (2.0 * 0.7 * 0.7), 0.3 * u));
    }
    const Grid tgrid{-12.0, dt, 193};
    const SampledSignal f = olct::olct_inverse(spec, A, tgrid);
    const auto phi = gaussian_bump(32, dt, 0.6);

    const double omega_prime = std::max(std::abs(omega - A.y0()), std::abs(omega + A.y0()));
    const double spacing = A.b() / (4.0 * omega_prime);
    const double u_lo = A.y0() - 14.4;
    const double du = 0.3;
    const std::size_t nu = 97;
    const double vspan = 13.0;
    const auto n_min = static_cast<std::int64_t>(std::floor(-vspan / spacing));
    const auto count = static_cast<std::size_t>(2 * (-n_min) + 1);
    std::vector<StolctSampleSet> sets;
    sets.reserve(nu);
    for (std::size_t i = 0; i < nu; ++i) {
        const double u = u_lo + du * static_cast<double>(i);
        sets.push_back(olct::sample_stolct_magnitude_uniform(f, phi, A, u, spacing,
                                                             olct::BandLimit{omega}, n_min, count));
    }

    SUBCASE("chirped bandlimited signal is recovered up to global phase") {
        // the default lag step is the critical rate, where the cardinal
        // series converges slowly: include the whole lattice in each sum
        olct::BandRecoveryOptions opts;
        opts.radius = 512;
        const auto rep = olct::recover_bandlimited_sampled(sets, phi, A, olct::BandLimit{omega},
                                                           olct::BandMode::olct_band, window_of(f),
                                                           opts, &f);
        CHECK(rep.residual <= 1e-4);
        CHECK(rep.diagnostics.at("gamma") ==
              doctest::Approx(A.b() / (2.0 * omega_prime)).epsilon(1e-12));
    }

    SUBCASE("an oversized propagation lag is rejected") {
        olct::BandRecoveryOptions opts;
        opts.gamma = 2.0 * A.b() / omega_prime;
        CHECK_THROWS_AS(olct::recover_bandlimited_sampled(sets, phi, A, olct::BandLimit{omega},
                                                          olct::BandMode::olct_band, window_of(f),
                                                          opts, nullptr),
                        olct::InvalidSpec);
    }

    SUBCASE("all-zero data has no usable anchor") {
        auto dead = sets;
        for (auto& s : dead) std::fill(s.values.begin(), s.values.end(), 0.0);
        CHECK_THROWS_AS(olct::recover_bandlimited_sampled(dead, phi, A, olct::BandLimit{omega},
                                                          olct::BandMode::olct_band, window_of(f),
                                                          {}, nullptr),
                        olct::AnchorDegenerate);
    }
}
