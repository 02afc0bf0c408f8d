#include "olct/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "olct/ambiguity.hpp"
#include "olct/errors.hpp"
#include "olct/transforms.hpp"

namespace olct {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr Complex kJ{0.0, 1.0};

void validate_support(const SupportWindow& w) {
    if (w.length == 0) throw InvalidSpec("support window must be non-empty");
    if (!(w.step > 0.0) || !std::isfinite(w.step))
        throw InvalidSpec("support window step must be positive and finite");
}

std::vector<Complex> hermitian_times(const LagProductMatrix& m, const std::vector<Complex>& x) {
    std::vector<Complex> y(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        const Complex* row = m.entries.data() + i * m.n;
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < m.n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

double vec_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

Complex vec_dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Power iteration on a Hermitian matrix, optionally projected onto the
// orthogonal complement of one known eigenvector (deflation). Deterministic
// start, 200 iterations or 1e-12 step change.
std::pair<double, std::vector<Complex>> power_pair(const LagProductMatrix& m,
                                                   const std::vector<Complex>* deflate) {
    const std::size_t n = m.n;
    const auto project = [&](std::vector<Complex>& x) {
        if (!deflate) return;
        const Complex c = vec_dot(*deflate, x);
        for (std::size_t i = 0; i < n; ++i) x[i] -= c * (*deflate)[i];
    };
    std::vector<Complex> v;
    for (std::size_t cand = 0; cand <= n; ++cand) {
        v.assign(n, cand == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0));
        if (cand > 0) v[cand - 1] = Complex(1.0, 0.0);
        project(v);
        const double nv = vec_norm(v);
        if (nv > 1e-8) {
            for (auto& z : v) z /= nv;
            break;
        }
    }
    for (std::size_t it = 0; it < 200; ++it) {
        auto w = hermitian_times(m, v);
        project(w);
        const double nw = vec_norm(w);
        if (nw < 1e-300) return {0.0, v};
        for (auto& z : w) z /= nw;
        const Complex al = vec_dot(v, w);
        const double aal = std::abs(al);
        const Complex ph = aal > 0.0 ? al / aal : Complex(1.0, 0.0);
        double dist = 0.0;
        for (std::size_t i = 0; i < n; ++i) dist += std::norm(w[i] * std::conj(ph) - v[i]);
        v = std::move(w);
        if (std::sqrt(dist) <= 1e-12) break;
    }
    auto mv = hermitian_times(m, v);
    project(mv);
    return {vec_dot(v, mv).real(), v};
}

// Completes the diagonal of a product matrix whose off-diagonal entries are
// known, using the trace and the rank-one relation |M(i,k)|^2 = d_i d_k.
std::vector<double> complete_diagonal(const LagProductMatrix& m, double trace) {
    const std::size_t n = m.n;
    std::vector<double> col(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (i != k) col[k] += std::norm(m.at(i, k));
    std::size_t anchor = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (col[k] > col[anchor]) anchor = k;
    double disc = trace * trace - 4.0 * col[anchor];
    if (disc < 0.0) disc = 0.0;
    const double root = std::sqrt(disc);
    const double cands[2] = {0.5 * (trace + root), 0.5 * (trace - root)};
    std::vector<double> best(n, 0.0);
    double best_score = std::numeric_limits<double>::infinity();
    for (double q : cands) {
        if (!(q > trace * 1e-14) || !(q > 0.0)) continue;
        std::vector<double> diag(n, 0.0);
        diag[anchor] = q;
        double score = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == anchor) continue;
            diag[k] = std::norm(m.at(k, anchor)) / q;
            score += std::abs(col[k] - diag[k] * (trace - diag[k]));
        }
        if (score < best_score) {
            best_score = score;
            best = std::move(diag);
        }
    }
    if (!std::isfinite(best_score) && trace > 0.0) best[anchor] = trace;
    return best;
}

void record_eigen(const LeadingEigenPair& eig, RecoveryReport& rep) {
    const double denom = std::max(std::abs(eig.second_value), 1e-300);
    const double gap = std::min(eig.value / denom, 1e300);
    rep.diagnostics["lambda1"] = eig.value;
    rep.diagnostics["lambda2"] = eig.second_value;
    rep.diagnostics["rank_gap"] = gap;
    rep.diagnostics["rank_deficient"] = gap < 10.0 ? 1.0 : 0.0;
}

// Truncated cardinal-series evaluation of a lattice signal at an arbitrary
// time (used for off-lattice window shifts).
double sinc_here(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

Complex eval_cardinal(const SampledSignal& x, double t, std::size_t radius) {
    const double pos = t / x.step;
    const std::int64_t center = std::llround(pos) - x.origin;
    const std::int64_t lo = std::max<std::int64_t>(0, center - static_cast<std::int64_t>(radius));
    const std::int64_t hi =
        std::min<std::int64_t>(static_cast<std::int64_t>(x.size()), center + static_cast<std::int64_t>(radius) + 1);
    Complex acc{0.0, 0.0};
    for (std::int64_t k = lo; k < hi; ++k)
        acc += x.samples[static_cast<std::size_t>(k)] *
               sinc_here(kPi * (pos - static_cast<double>(x.origin + k)));
    return acc;
}

// Window self-product row V(tau, xi) = sum_n phi[n] conj(phi(t_n - tau)) e^{-j xi t_n} dt
// by lattice quadrature; the shifted copy is evaluated through the cardinal series.
Complex window_product_row(const SampledSignal& phi, double tau, double xi, std::size_t radius) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double t = phi.time(k);
        const Complex shifted = tau == 0.0 ? phi.samples[k] : eval_cardinal(phi, t - tau, radius);
        acc += phi.samples[k] * std::conj(shifted) * std::exp(-kJ * (xi * t));
    }
    return acc * phi.step;
}

struct RealEnergyResult {
    std::vector<double> amplitude;
    std::string verdict;
    double neg_min = 0.0;
    double components = 0.0;
};

// Turns recovered |f|^2 values into the nonnegative amplitude representative
// and the separability verdict based on connected components above the floor.
RealEnergyResult judge_real_energy(std::vector<double> energy) {
    RealEnergyResult out;
    double emax = 0.0;
    double emin = 0.0;
    for (double e : energy) {
        emax = std::max(emax, e);
        emin = std::min(emin, e);
    }
    out.neg_min = emin;
    if (emin < -1e-6 * std::max(1.0, emax))
        throw NegativeEnergy("recovered squared amplitude dips to " + std::to_string(emin) +
                             " (inconsistent magnitude data)");
    out.amplitude.resize(energy.size());
    double amax = 0.0;
    for (std::size_t i = 0; i < energy.size(); ++i) {
        out.amplitude[i] = std::sqrt(std::max(energy[i], 0.0));
        amax = std::max(amax, out.amplitude[i]);
    }
    const double floor = 1e-6 * amax;
    int components = 0;
    bool inside = false;
    for (double a : out.amplitude) {
        const bool above = amax > 0.0 && a > floor;
        if (above && !inside) ++components;
        inside = above;
    }
    out.components = components;
    out.verdict = components >= 2 ? "separable_ambiguous" : "unique_up_to_sign";
    return out;
}

// Shared scaffolding for the two map-based solvers: validates the map layout
// against the signal/window lattices and exposes the squared magnitudes.
struct MapData {
    std::vector<double> w;  // squared magnitudes, shift-major
    std::int64_t shift_lo = 0;
    double du = 0.0;
};

MapData prepare_map(const MagnitudeMap& mag, const SampledSignal& phi, const ParameterMatrix& A,
                    const SupportWindow& support) {
    if (A.is_degenerate()) throw DegenerateParameterError("map inversion requires b != 0");
    phi.validate();
    validate_support(support);
    mag.shift_grid.validate();
    mag.freq_grid.validate();
    if (mag.values.size() != mag.shift_grid.count * mag.freq_grid.count)
        throw InvalidSpec("magnitude map size does not match its grids");
    const double dt = support.step;
    if (std::abs(phi.step - dt) > 1e-12 * dt)
        throw GridMismatch("window must share the signal lattice step");
    if (std::abs(mag.shift_grid.step - dt) > 1e-12 * dt)
        throw GridMismatch("shift grid step must equal the signal lattice step");
    const double s0 = mag.shift_grid.start / dt;
    const double r0 = std::nearbyint(s0);
    if (std::abs(s0 - r0) > 1e-9 * std::max(1.0, std::abs(s0)))
        throw GridMismatch("shift grid must lie on the signal lattice");
    MapData data;
    data.shift_lo = static_cast<std::int64_t>(r0);
    const std::int64_t shift_hi = data.shift_lo + static_cast<std::int64_t>(mag.shift_grid.count) - 1;
    const std::int64_t need_lo = support.origin - (phi.origin + static_cast<std::int64_t>(phi.size()) - 1);
    const std::int64_t need_hi =
        (support.origin + static_cast<std::int64_t>(support.length) - 1) - phi.origin;
    if (data.shift_lo > need_lo || shift_hi < need_hi)
        throw InvalidSpec("shift grid must cover every signal/window overlap");
    const double period = kTwoPi * std::abs(A.b()) / dt;
    const double span = mag.freq_grid.step * static_cast<double>(mag.freq_grid.count);
    if (std::abs(span - period) > 1e-9 * period)
        throw InvalidSpec("frequency grid must span exactly one induced period");
    data.du = mag.freq_grid.step;
    data.w.resize(mag.values.size());
    for (std::size_t i = 0; i < mag.values.size(); ++i) data.w[i] = mag.values[i] * mag.values[i];
    return data;
}

// Zero-lag/general-lag double sums of the squared map against the harmonic
// frequency lattice: g_m(u') = sum_i sum_j w(i,j) e^{j (m dt / b) u_j} e^{-j u' v_i} du dv.
std::vector<Complex> map_lag_row(const MapData& data, const MagnitudeMap& mag, double vprime,
                                 const std::vector<double>& uprimes) {
    const std::size_t nv = mag.shift_grid.count;
    const std::size_t nu = mag.freq_grid.count;
    std::vector<Complex> per_shift(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        Complex acc{0.0, 0.0};
        const double* wrow = data.w.data() + i * nu;
        for (std::size_t j = 0; j < nu; ++j)
            acc += wrow[j] * std::exp(kJ * (vprime * mag.freq_grid.point(j)));
        per_shift[i] = acc * data.du;
    }
    std::vector<Complex> out(uprimes.size());
    for (std::size_t q = 0; q < uprimes.size(); ++q) {
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < nv; ++i)
            acc += per_shift[i] * std::exp(-kJ * (uprimes[q] * mag.shift_grid.point(i)));
        out[q] = acc * mag.shift_grid.step;
    }
    return out;
}

void apply_misfit_and_residual(RecoveryReport& rep, double misfit, const SampledSignal* gt) {
    rep.diagnostics["data_misfit"] = misfit;
    rep.residual = gt ? phase_invariant_error(*gt, rep.signal).residual : misfit;
}

}  // namespace

LagProductMatrix assemble_lag_matrix(const std::map<std::int64_t, std::vector<Complex>>& rows,
                                     const SupportWindow& support) {
    validate_support(support);
    const std::size_t n = support.length;
    const auto ln = static_cast<std::int64_t>(n);
    for (const auto& [lag, row] : rows) {
        if (std::llabs(lag) < ln && row.size() != n)
            throw InvalidSpec("lag row length must equal the support length");
    }
    for (std::int64_t v = 0; v < ln; ++v) {
        if (rows.find(v) == rows.end() && rows.find(-v) == rows.end())
            throw MissingLag("no row for lag +-" + std::to_string(v));
    }
    LagProductMatrix m;
    m.n = n;
    m.origin = support.origin;
    m.step = support.step;
    m.entries.assign(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t v = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j);
            const auto direct = rows.find(v);
            const auto mirror = rows.find(-v);
            Complex value{0.0, 0.0};
            if (direct != rows.end() && mirror != rows.end())
                value = 0.5 * (direct->second[i] + std::conj(mirror->second[j]));
            else if (direct != rows.end())
                value = direct->second[i];
            else
                value = std::conj(mirror->second[j]);
            m.entries[i * n + j] = value;
        }
    }
    return m;
}

LeadingEigenPair leading_eigenpair(const LagProductMatrix& m) {
    if (m.n == 0 || m.entries.size() != m.n * m.n)
        throw InvalidSpec("product matrix entries do not match its dimension");
    LeadingEigenPair out;
    auto [l1, v1] = power_pair(m, nullptr);
    out.value = l1;
    if (m.n > 1) out.second_value = power_pair(m, &v1).first;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < v1.size(); ++i)
        if (std::abs(v1[i]) > std::abs(v1[peak])) peak = i;
    const double mag = std::abs(v1[peak]);
    if (mag > 0.0) {
        const Complex rot = std::conj(v1[peak]) / mag;
        for (auto& z : v1) z *= rot;
    }
    out.vector = std::move(v1);
    return out;
}

RecoveryReport recover_from_multi_olct(const std::vector<MagnitudeMeasurement>& mags,
                                       const SupportWindow& support,
                                       const SampledSignal* ground_truth) {
    validate_support(support);
    if (mags.empty()) throw InvalidSpec("at least one magnitude measurement is required");
    const std::size_t n = support.length;
    const double dt = support.step;
    std::vector<double> ratios;
    ratios.reserve(mags.size());
    for (const auto& meas : mags) {
        if (!(meas.matrix.b() > 0.0))
            throw InvalidSpec("every measurement matrix must have b > 0");
        meas.grid.validate();
        if (meas.mag2.size() != meas.grid.count)
            throw InvalidSpec("magnitude array does not match its grid");
        ratios.push_back(meas.matrix.a() / meas.matrix.b());
    }
    std::sort(ratios.begin(), ratios.end());
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] - ratios[i - 1] > 1e-12 * (1.0 + std::abs(ratios[i]))) ++distinct;
    if (distinct < n)
        throw InsufficientDiversity("need at least " + std::to_string(n) +
                                    " distinct a/b ratios, got " + std::to_string(distinct));

    // One central-line sample per (measurement, lattice lag): the line of the
    // squared-magnitude transform passes through lag m*dt at modulation
    // -(a/b)*m*dt, giving P_m(xi) = sum_n f[n] conj(f[n-m]) e^{-j xi t_n}.
    const auto ln = static_cast<std::int64_t>(n);
    const std::size_t nlags = 2 * n - 1;
    std::vector<std::vector<Complex>> poly(mags.size());
    std::vector<std::vector<double>> mods(mags.size());
    std::vector<double> etas(nlags);
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const double b = mags[i].matrix.b();
        for (std::int64_t m = -(ln - 1); m <= ln - 1; ++m)
            etas[static_cast<std::size_t>(m + ln - 1)] = -static_cast<double>(m) * dt / b;
        const auto pts = magnitude_ambiguity_slice(mags[i].mag2, mags[i].grid, mags[i].matrix, etas);
        poly[i].resize(nlags);
        mods[i].resize(nlags);
        for (std::size_t k = 0; k < nlags; ++k) {
            poly[i][k] = pts[k].value * std::exp(-kJ * (0.5 * pts[k].lag * pts[k].mod)) / dt;
            mods[i][k] = pts[k].mod;
        }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) trace += poly[i][n - 1].real();
    trace /= static_cast<double>(mags.size());

    std::map<std::int64_t, std::vector<Complex>> rows;
    rows[0].assign(n, Complex{0.0, 0.0});
    for (std::int64_t m = -(ln - 1); m <= ln - 1; ++m) {
        if (m == 0) continue;
        const std::size_t cnt = n - static_cast<std::size_t>(std::llabs(m));
        const std::int64_t first = support.origin + std::max<std::int64_t>(0, m);
        Eigen::MatrixXcd design(mags.size(), cnt);
        Eigen::VectorXcd rhs(mags.size());
        const std::size_t lag_idx = static_cast<std::size_t>(m + ln - 1);
        for (std::size_t i = 0; i < mags.size(); ++i) {
            rhs(static_cast<Eigen::Index>(i)) = poly[i][lag_idx];
            const double xi = mods[i][lag_idx];
            for (std::size_t c = 0; c < cnt; ++c) {
                const double t = static_cast<double>(first + static_cast<std::int64_t>(c)) * dt;
                design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                    std::exp(-kJ * (xi * t));
            }
        }
        Eigen::VectorXcd sol = design.colPivHouseholderQr().solve(rhs);
        std::vector<Complex> row(n, Complex{0.0, 0.0});
        const std::size_t base = static_cast<std::size_t>(first - support.origin);
        for (std::size_t c = 0; c < cnt; ++c) row[base + c] = sol(static_cast<Eigen::Index>(c));
        rows[m] = std::move(row);
    }

    auto matrix = assemble_lag_matrix(rows, support);
    const auto diag = complete_diagonal(matrix, trace);
    for (std::size_t k = 0; k < n; ++k) matrix.entries[k * n + k] = diag[k];

    const auto eig = leading_eigenpair(matrix);
    RecoveryReport rep;
    rep.signal.samples.resize(n);
    rep.signal.origin = support.origin;
    rep.signal.step = dt;
    const double scale = std::sqrt(std::max(eig.value, 0.0));
    for (std::size_t k = 0; k < n; ++k) rep.signal.samples[k] = scale * eig.vector[k];
    record_eigen(eig, rep);
    rep.diagnostics["distinct_ratios"] = static_cast<double>(distinct);

    double misfit = 0.0;
    for (const auto& meas : mags) {
        const auto spec = olct_forward(rep.signal, meas.matrix, meas.grid);
        for (std::size_t j = 0; j < meas.mag2.size(); ++j)
            misfit = std::max(misfit, std::abs(std::norm(spec.values[j]) - meas.mag2[j]));
    }
    apply_misfit_and_residual(rep, misfit, ground_truth);
    return rep;
}

RecoveryReport recover_from_stolct(const MagnitudeMap& mag, const SampledSignal& phi,
                                   const ParameterMatrix& A, const SupportWindow& support,
                                   double floor, double masked_limit,
                                   const SampledSignal* ground_truth) {
    if (!(floor > 0.0)) throw InvalidSpec("division floor must be positive");
    if (!(masked_limit >= 0.0 && masked_limit <= 1.0))
        throw InvalidSpec("masked fraction limit must lie in [0, 1]");
    const auto data = prepare_map(mag, phi, A, support);
    const std::size_t n = support.length;
    const auto ln = static_cast<std::int64_t>(n);
    const double dt = support.step;
    const double b = A.b();
    const double y0 = A.y0();

    // Harmonic frequency lattice making the per-lag inversion an exact
    // inverse DFT over the support window.
    std::vector<double> uprimes(n);
    for (std::size_t k = 0; k < n; ++k)
        uprimes[k] = kTwoPi * static_cast<double>(k) / (static_cast<double>(n) * dt);

    std::vector<std::vector<Complex>> window_rows(2 * n - 1);
    double wmax = 0.0;
    for (std::int64_t m = -(ln - 1); m <= ln - 1; ++m) {
        auto& wrow = window_rows[static_cast<std::size_t>(m + ln - 1)];
        wrow.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            wrow[k] = cross_ambiguity_point(phi, phi, m, uprimes[k]);
            wmax = std::max(wmax, std::abs(wrow[k]));
        }
    }
    if (wmax == 0.0) throw ZeroSignal("window is identically zero");

    std::size_t masked = 0;
    std::map<std::int64_t, std::vector<Complex>> rows;
    for (std::int64_t m = -(ln - 1); m <= ln - 1; ++m) {
        const double vprime = static_cast<double>(m) * dt / b;
        const auto g = map_lag_row(data, mag, vprime, uprimes);
        const auto& wrow = window_rows[static_cast<std::size_t>(m + ln - 1)];
        std::vector<Complex> coeffs(n, Complex{0.0, 0.0});
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(wrow[k]) < floor * wmax) {
                ++masked;
                continue;
            }
            const Complex chirped =
                g[k] * std::exp(-kJ * (y0 * vprime)) / std::conj(wrow[k]);
            coeffs[k] = chirped * std::exp(-kJ * (0.5 * static_cast<double>(m) * dt * uprimes[k])) / dt;
        }
        // inverse DFT onto the window's residue classes
        std::vector<Complex> row(n, Complex{0.0, 0.0});
        const std::int64_t lo = std::max<std::int64_t>(0, m);
        const std::int64_t hi = ln + std::min<std::int64_t>(0, m);
        for (std::int64_t idx = lo; idx < hi; ++idx) {
            const std::int64_t abs_n = support.origin + idx;
            const std::int64_t res = ((abs_n % ln) + ln) % ln;
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                acc += coeffs[k] *
                       std::exp(kJ * (kTwoPi * static_cast<double>(k) * static_cast<double>(res) /
                                      static_cast<double>(n)));
            row[static_cast<std::size_t>(idx)] = acc / static_cast<double>(n);
        }
        rows[m] = std::move(row);
    }
    const double masked_fraction =
        static_cast<double>(masked) / static_cast<double>((2 * n - 1) * n);
    if (masked_fraction > masked_limit)
        throw WindowVanishes("window ambiguity below floor on " +
                             std::to_string(masked_fraction * 100.0) +
                             "% of the inversion lattice");

    const auto matrix = assemble_lag_matrix(rows, support);
    const auto eig = leading_eigenpair(matrix);
    RecoveryReport rep;
    rep.signal.samples.resize(n);
    rep.signal.origin = support.origin;
    rep.signal.step = dt;
    const double scale = std::sqrt(std::max(eig.value, 0.0));
    const double chirp = -0.5 * A.a() / b;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = rep.signal.time(k);
        rep.signal.samples[k] = scale * eig.vector[k] * std::exp(kJ * (chirp * t * t));
    }
    record_eigen(eig, rep);
    rep.diagnostics["masked_fraction"] = masked_fraction;

    const auto rebuilt = stolct(rep.signal, phi, A, mag.shift_grid, mag.freq_grid);
    double misfit = 0.0;
    for (std::size_t i = 0; i < mag.values.size(); ++i)
        misfit = std::max(misfit, std::abs(std::abs(rebuilt.values[i]) - mag.values[i]));
    apply_misfit_and_residual(rep, misfit, ground_truth);
    return rep;
}

RecoveryReport recover_nonseparable_real(const MagnitudeMap& mag, const SampledSignal& phi,
                                         const ParameterMatrix& A, const SupportWindow& support,
                                         const SampledSignal* ground_truth) {
    const auto data = prepare_map(mag, phi, A, support);
    const std::size_t n = support.length;
    const auto ln = static_cast<std::int64_t>(n);
    const double dt = support.step;
    constexpr double kFloor = 1e-8;

    std::vector<double> uprimes(n);
    for (std::size_t k = 0; k < n; ++k)
        uprimes[k] = kTwoPi * static_cast<double>(k) / (static_cast<double>(n) * dt);

    std::vector<Complex> wrow(n);
    double wmax = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        wrow[k] = cross_ambiguity_point(phi, phi, 0, uprimes[k]);
        wmax = std::max(wmax, std::abs(wrow[k]));
    }
    if (wmax == 0.0) throw ZeroSignal("window is identically zero");

    const auto g = map_lag_row(data, mag, 0.0, uprimes);
    std::size_t masked = 0;
    std::vector<Complex> coeffs(n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(wrow[k]) < kFloor * wmax) {
            ++masked;
            continue;
        }
        coeffs[k] = g[k] / std::conj(wrow[k]) / dt;
    }
    std::vector<double> energy(n, 0.0);
    double imag_max = 0.0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::int64_t abs_n = support.origin + static_cast<std::int64_t>(idx);
        const std::int64_t res = ((abs_n % ln) + ln) % ln;
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k)
            acc += coeffs[k] * std::exp(kJ * (kTwoPi * static_cast<double>(k) *
                                              static_cast<double>(res) / static_cast<double>(n)));
        acc /= static_cast<double>(n);
        energy[idx] = acc.real();
        imag_max = std::max(imag_max, std::abs(acc.imag()));
    }

    auto judged = judge_real_energy(std::move(energy));
    RecoveryReport rep;
    rep.signal.samples.resize(n);
    rep.signal.origin = support.origin;
    rep.signal.step = dt;
    for (std::size_t k = 0; k < n; ++k) rep.signal.samples[k] = Complex(judged.amplitude[k], 0.0);
    rep.verdict = judged.verdict;
    rep.diagnostics["components"] = judged.components;
    rep.diagnostics["masked_fraction"] = static_cast<double>(masked) / static_cast<double>(n);
    rep.diagnostics["energy_min"] = judged.neg_min;
    rep.diagnostics["imag_max"] = imag_max;

    const auto rebuilt = stolct(rep.signal, phi, A, mag.shift_grid, mag.freq_grid);
    double misfit = 0.0;
    for (std::size_t i = 0; i < mag.values.size(); ++i)
        misfit = std::max(misfit, std::abs(std::abs(rebuilt.values[i]) - mag.values[i]));
    apply_misfit_and_residual(rep, misfit, ground_truth);
    return rep;
}

RecoveryReport recover_bandlimited_sampled(const std::vector<StolctSampleSet>& sets,
                                           const SampledSignal& phi, const ParameterMatrix& A,
                                           BandLimit band, BandMode mode,
                                           const SupportWindow& support,
                                           const BandRecoveryOptions& opts,
                                           const SampledSignal* ground_truth) {
    if (!(A.b() > 0.0)) throw DegenerateParameterError("bandlimited recovery requires b > 0");
    phi.validate();
    validate_support(support);
    if (!(band.omega > 0.0)) throw InvalidSpec("band limit must be positive");
    if (!(opts.floor > 0.0)) throw InvalidSpec("division floor must be positive");
    if (!(opts.masked_limit >= 0.0 && opts.masked_limit <= 1.0))
        throw InvalidSpec("masked fraction limit must lie in [0, 1]");
    if (opts.radius == 0) throw InvalidSpec("interpolation radius must be positive");
    if (sets.size() < 2) throw InvalidSpec("need magnitude samples on a frequency grid");
    for (const auto& s : sets) {
        if (s.values.empty() || !(s.spacing > 0.0))
            throw InvalidSpec("each sample set needs values and a positive spacing");
    }
    const double du = sets[1].u - sets[0].u;
    if (!(du > 0.0)) throw GridMismatch("sample sets must be ordered by increasing frequency");
    for (std::size_t i = 1; i < sets.size(); ++i) {
        if (std::abs((sets[i].u - sets[i - 1].u) - du) > 1e-9 * std::max(1.0, std::abs(du)))
            throw GridMismatch("sample sets must sit on a uniform frequency grid");
    }

    const double b = A.b();
    const double y0 = A.y0();
    const double a = A.a();
    const double dt = support.step;
    const std::size_t n = support.length;
    const double t_lo = static_cast<double>(support.origin) * dt;
    const double t_hi = static_cast<double>(support.origin + static_cast<std::int64_t>(n) - 1) * dt;

    const double omega_prime = std::max(std::abs(band.omega - y0), std::abs(band.omega + y0));
    // half-band of the lag rows in the conjugate variable
    const double row_band = mode == BandMode::ft_band ? 2.0 * band.omega : 2.0 * omega_prime / b;

    for (const auto& s : sets) {
        const double rate = 1.0 / s.spacing;
        const double need = mode == BandMode::ft_band ? 2.0 * s.band_at_u : row_band;
        if (rate < 2.0 * need * (1.0 - 1e-12))
            throw NyquistViolation("sample rate " + std::to_string(rate) +
                                   " below twice the magnitude band " + std::to_string(need));
    }

    // Conjugate-variable quadrature grid: fine enough that the implied
    // periodization clears the signal extent, spanning the full row band.
    const double textent = std::max({std::abs(t_lo), std::abs(t_hi), 1.0}) + 1.0;
    double dup = kTwoPi / (8.0 * textent);
    const std::size_t qhalf = static_cast<std::size_t>(std::ceil(row_band / dup));
    const std::size_t qcount = 2 * qhalf + 1;
    dup = row_band / static_cast<double>(qhalf);
    std::vector<double> uprimes(qcount);
    for (std::size_t q = 0; q < qcount; ++q)
        uprimes[q] = (static_cast<double>(q) - static_cast<double>(qhalf)) * dup;

    // G_tau(u') = sum_i du e^{j (tau/b) u_i} * integral of the cardinal series
    // of |V(.,u_i)|^2 against e^{-j u' v}; the integral is exact:
    // sum_n s2[n] e^{-j u' n spacing} / rate for |u'| within the sample band.
    auto build_row = [&](double tau) {
        std::vector<Complex> row(qcount, Complex{0.0, 0.0});
        for (const auto& s : sets) {
            const Complex uphase = std::exp(kJ * (tau / b * s.u)) * du;
            for (std::size_t q = 0; q < qcount; ++q) {
                Complex acc{0.0, 0.0};
                for (std::size_t k = 0; k < s.values.size(); ++k) {
                    const double v =
                        static_cast<double>(s.n_min + static_cast<std::int64_t>(k)) * s.spacing;
                    acc += s.values[k] * s.values[k] * std::exp(-kJ * (uprimes[q] * v));
                }
                row[q] += uphase * acc * s.spacing;
            }
        }
        return row;
    };

    auto window_row = [&](double tau) {
        std::vector<Complex> row(qcount);
        for (std::size_t q = 0; q < qcount; ++q)
            row[q] = window_product_row(phi, tau, uprimes[q], opts.radius);
        return row;
    };

    auto divide_row = [&](const std::vector<Complex>& g, const std::vector<Complex>& w,
                          double wmax, double tau, std::size_t& masked) {
        std::vector<Complex> out(qcount, Complex{0.0, 0.0});
        for (std::size_t q = 0; q < qcount; ++q) {
            if (std::abs(w[q]) < opts.floor * wmax) {
                ++masked;
                continue;
            }
            out[q] = g[q] * std::exp(-kJ * (y0 * tau / b)) / std::conj(w[q]);
        }
        return out;
    };

    auto invert_at = [&](const std::vector<Complex>& p, double t) {
        Complex acc{0.0, 0.0};
        for (std::size_t q = 0; q < qcount; ++q) acc += p[q] * std::exp(kJ * (t * uprimes[q]));
        return acc * (dup / kTwoPi);
    };

    RecoveryReport rep;
    rep.signal.origin = support.origin;
    rep.signal.step = dt;
    rep.signal.samples.assign(n, Complex{0.0, 0.0});

    if (mode == BandMode::ft_band) {
        const auto g0 = build_row(0.0);
        const auto w0 = window_row(0.0);
        double wmax = 0.0;
        for (const auto& z : w0) wmax = std::max(wmax, std::abs(z));
        if (wmax == 0.0) throw ZeroSignal("window is identically zero");
        std::size_t masked = 0;
        const auto p0 = divide_row(g0, w0, wmax, 0.0, masked);
        const double frac = static_cast<double>(masked) / static_cast<double>(qcount);
        if (frac > opts.masked_limit)
            throw WindowVanishes("window ambiguity below floor on " +
                                 std::to_string(frac * 100.0) + "% of the required band");
        std::vector<double> energy(n);
        for (std::size_t idx = 0; idx < n; ++idx)
            energy[idx] = invert_at(p0, t_lo + static_cast<double>(idx) * dt).real();
        auto judged = judge_real_energy(std::move(energy));
        for (std::size_t idx = 0; idx < n; ++idx)
            rep.signal.samples[idx] = Complex(judged.amplitude[idx], 0.0);
        rep.verdict = judged.verdict;
        rep.diagnostics["components"] = judged.components;
        rep.diagnostics["masked_fraction"] = frac;
        rep.diagnostics["energy_min"] = judged.neg_min;
    } else {
        const double gamma_max = b / (2.0 * omega_prime);
        const double gamma = opts.gamma > 0.0 ? opts.gamma : gamma_max;
        if (gamma > gamma_max * (1.0 + 1e-9))
            throw InvalidSpec("phase-propagation lag exceeds b / (2 * transform band)");
        const auto g0 = build_row(0.0);
        const auto gg = build_row(gamma);
        const auto w0 = window_row(0.0);
        const auto wg = window_row(gamma);
        double wmax = 0.0;
        for (const auto& z : w0) wmax = std::max(wmax, std::abs(z));
        for (const auto& z : wg) wmax = std::max(wmax, std::abs(z));
        if (wmax == 0.0) throw ZeroSignal("window is identically zero");
        std::size_t masked0 = 0;
        std::size_t maskedg = 0;
        const auto p0 = divide_row(g0, w0, wmax, 0.0, masked0);
        const auto pg = divide_row(gg, wg, wmax, gamma, maskedg);
        const double frac0 = static_cast<double>(masked0) / static_cast<double>(qcount);
        const double fracg = static_cast<double>(maskedg) / static_cast<double>(qcount);
        if (frac0 > opts.masked_limit || fracg > opts.masked_limit)
            throw WindowVanishes("window ambiguity below floor on " +
                                 std::to_string(std::max(frac0, fracg) * 100.0) +
                                 "% of a required lag row");

        // chirped-signal products on the gamma lattice, extended by the
        // interpolation radius so the truncated cardinal sum never runs out
        // of samples when evaluated near the edge of the requested support
        const std::int64_t pad = static_cast<std::int64_t>(opts.radius);
        const std::int64_t kmin = static_cast<std::int64_t>(std::floor(t_lo / gamma)) - pad;
        const std::int64_t kmax = static_cast<std::int64_t>(std::ceil(t_hi / gamma)) + pad;
        const std::size_t klen = static_cast<std::size_t>(kmax - kmin + 1);
        std::vector<double> modulus(klen);
        std::vector<Complex> cross(klen);
        for (std::size_t k = 0; k < klen; ++k) {
            const double t = static_cast<double>(kmin + static_cast<std::int64_t>(k)) * gamma;
            modulus[k] = std::sqrt(std::max(invert_at(p0, t).real(), 0.0));
            cross[k] = invert_at(pg, t);
        }
        std::size_t anchor = 0;
        for (std::size_t k = 1; k < klen; ++k)
            if (modulus[k] > modulus[anchor]) anchor = k;
        if (modulus[anchor] < 1e-10)
            throw AnchorDegenerate("peak chirped-signal modulus below 1e-10");
        std::vector<double> phase(klen, 0.0);
        for (std::size_t k = anchor + 1; k < klen; ++k)
            phase[k] = phase[k - 1] + std::arg(cross[k]);
        for (std::size_t k = anchor; k-- > 0;)
            phase[k] = phase[k + 1] - std::arg(cross[k + 1]);
        std::vector<double> re(klen);
        std::vector<double> im(klen);
        for (std::size_t k = 0; k < klen; ++k) {
            re[k] = modulus[k] * std::cos(phase[k]);
            im[k] = modulus[k] * std::sin(phase[k]);
        }
        const Grid out_grid{t_lo, dt, n};
        const auto re_t =
            interpolate_bandlimited(re, kmin, 1.0 / gamma, omega_prime / b, out_grid, opts.radius);
        const auto im_t =
            interpolate_bandlimited(im, kmin, 1.0 / gamma, omega_prime / b, out_grid, opts.radius);
        const double chirp = -0.5 * a / b;
        for (std::size_t idx = 0; idx < n; ++idx) {
            const double t = rep.signal.time(idx);
            rep.signal.samples[idx] =
                Complex(re_t[idx], im_t[idx]) * std::exp(kJ * (chirp * t * t));
        }
        rep.diagnostics["gamma"] = gamma;
        rep.diagnostics["masked_fraction"] = std::max(frac0, fracg);
        rep.diagnostics["anchor_time"] =
            static_cast<double>(kmin + static_cast<std::int64_t>(anchor)) * gamma;
    }

    double misfit = 0.0;
    for (const auto& s : sets) {
        const auto rebuilt = sample_stolct_magnitude_uniform(rep.signal, phi, A, s.u, s.spacing,
                                                             band, s.n_min, s.values.size());
        for (std::size_t k = 0; k < s.values.size(); ++k)
            misfit = std::max(misfit, std::abs(rebuilt.values[k] - s.values[k]));
    }
    apply_misfit_and_residual(rep, misfit, ground_truth);
    return rep;
}

}  // namespace olct
