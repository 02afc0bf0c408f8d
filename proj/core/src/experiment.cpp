#include "olct/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <thread>

#include <json.hpp>

#include "olct/io.hpp"
#include "olct/transforms.hpp"
#include "rng.hpp"

namespace olct {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InvalidSpec("malformed JSON");
    return j;
}

double number_field(const json& j, const char* name, double fallback) {
    const auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw InvalidSpec(std::string(name) + " must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw InvalidSpec(std::string(name) + " must be finite");
    return v;
}

std::uint64_t uint_field(const json& j, const char* name, std::uint64_t fallback) {
    const auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_number_unsigned())
        throw InvalidSpec(std::string(name) + " must be a nonnegative integer");
    return it->get<std::uint64_t>();
}

std::string string_field(const json& j, const char* name, const std::string& fallback) {
    const auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_string()) throw InvalidSpec(std::string(name) + " must be a string");
    return it->get<std::string>();
}

SignalSpec signal_spec_from(const json& j, const char* what) {
    if (!j.is_object()) throw InvalidSpec(std::string(what) + " must be an object");
    SignalSpec s;
    s.kind = signal_kind_from_name(string_field(j, "kind", "gaussian"));
    s.length = static_cast<std::size_t>(uint_field(j, "length", 0));
    s.step = number_field(j, "step", 1.0);
    s.sigma = number_field(j, "sigma", 1.0);
    s.center = number_field(j, "center", 0.0);
    s.rate = number_field(j, "rate", 0.0);
    s.band = number_field(j, "band", 0.0);
    s.gap = number_field(j, "gap", 0.0);
    s.seed = uint_field(j, "seed", 0);
    return s;
}

Grid grid_from_triple(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number_unsigned())
        throw InvalidSpec(std::string(what) + " must be [start, step, count]");
    Grid g{j[0].get<double>(), j[1].get<double>(), j[2].get<std::size_t>()};
    if (!std::isfinite(g.start) || !std::isfinite(g.step))
        throw InvalidSpec(std::string(what) + " start/step must be finite");
    g.validate();
    return g;
}

std::vector<ParameterMatrix> matrices_from(const json& j) {
    std::vector<ParameterMatrix> out;
    if (const auto it = j.find("matrices"); it != j.end()) {
        if (!it->is_array() || it->empty()) throw InvalidSpec("matrices must be a nonempty array");
        for (const auto& row : *it) {
            if (!row.is_array() || row.size() != 6)
                throw InvalidSpec("each matrix must be [a, b, c, d, y0, w0]");
            double p[6];
            for (std::size_t k = 0; k < 6; ++k) {
                if (!row[k].is_number() || !std::isfinite(row[k].get<double>()))
                    throw InvalidSpec("matrix entries must be finite numbers");
                p[k] = row[k].get<double>();
            }
            try {
                out.emplace_back(p[0], p[1], p[2], p[3], p[4], p[5]);
            } catch (const Error& e) {
                throw InvalidSpec(std::string("bad matrix in config: ") + e.what());
            }
        }
        return out;
    }
    const auto it = j.find("ratio_sweep");
    if (it == j.end()) throw InvalidSpec("config needs matrices or ratio_sweep");
    const json& sweep = *it;
    const auto count = static_cast<std::size_t>(uint_field(sweep, "count", 0));
    const double start = number_field(sweep, "start", 0.0);
    const double step = number_field(sweep, "step", 0.0);
    const double y0 = number_field(sweep, "y0", 0.0);
    const double w0 = number_field(sweep, "w0", 0.0);
    if (count == 0 || step == 0.0) throw InvalidSpec("ratio_sweep needs count > 0 and step != 0");
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double a = start + step * static_cast<double>(k);
        out.emplace_back(a, 1.0, a - 1.0, 1.0, y0, w0);
    }
    return out;
}

// CSV-stable shortest-faithful formatting; NaN prints as "nan".
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    return (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Perturbs squared-magnitude data in place: v <- max(0, v + sd * N(0,1)).
void perturb_squares(std::vector<double>& squares, double sd, std::uint64_t& state) {
    for (auto& v : squares) v = std::max(0.0, v + sd * detail::gauss(state));
}

struct Measurements {
    std::vector<MagnitudeMeasurement> mags;  // multi_olct
    MagnitudeMap map;                        // stolct / nonseparable
    std::vector<StolctSampleSet> sets;       // bandlimited
};

Measurements measure(const ExperimentConfig& cfg, const SampledSignal& f,
                     const SampledSignal& phi, std::size_t num_matrices) {
    Measurements ms;
    switch (cfg.solver) {
        case SolverKind::multi_olct: {
            for (std::size_t i = 0; i < num_matrices; ++i) {
                const Spectrum spec = olct_fast(f, cfg.matrices[i]);
                MagnitudeMeasurement m{cfg.matrices[i], {}, spec.grid};
                m.mag2.reserve(spec.values.size());
                for (const auto& z : spec.values) m.mag2.push_back(std::norm(z));
                ms.mags.push_back(std::move(m));
            }
            break;
        }
        case SolverKind::stolct:
        case SolverKind::nonseparable: {
            const ParameterMatrix& A = cfg.matrices.front();
            const double dt = f.step;
            const std::int64_t lo = f.origin - (phi.last() - 1);
            const std::int64_t hi = (f.last() - 1) - phi.origin;
            const Grid shifts{dt * static_cast<double>(lo), dt,
                              static_cast<std::size_t>(hi - lo + 1)};
            // frequency grid whose one-period span holds the full
            // signal/window correlation range without wrapping
            const std::size_t nfreq = 2 * (f.size() + phi.size());
            const double babs = std::abs(A.b());
            const Grid freqs{A.y0() - kPi * babs / dt,
                             2.0 * kPi * babs / (static_cast<double>(nfreq) * dt), nfreq};
            ms.map = magnitude_map(stolct(f, phi, A, shifts, freqs));
            break;
        }
        case SolverKind::bandlimited: {
            const ParameterMatrix& A = cfg.matrices.front();
            const BandLayout& layout = cfg.band;
            if (layout.mode == BandMode::ft_band) {
                const BandLimit fb{layout.signal_band};
                const BandLimit wb{layout.window_band};
                for (std::size_t i = 0; i < layout.u_grid.count; ++i) {
                    const double u = layout.u_grid.point(i);
                    const auto probe = sample_stolct_magnitude(f, phi, A, u, wb, fb, 0, 1);
                    const auto n_min =
                        static_cast<std::int64_t>(std::floor(-layout.vspan / probe.spacing));
                    const auto count = static_cast<std::size_t>(2 * (-n_min) + 1);
                    ms.sets.push_back(
                        sample_stolct_magnitude(f, phi, A, u, wb, fb, n_min, count));
                }
            } else {
                const double omega = layout.signal_band;
                const double omega_prime =
                    std::max(std::abs(omega - A.y0()), std::abs(omega + A.y0()));
                const double spacing = A.b() / (4.0 * omega_prime);
                const auto n_min =
                    static_cast<std::int64_t>(std::floor(-layout.vspan / spacing));
                const auto count = static_cast<std::size_t>(2 * (-n_min) + 1);
                for (std::size_t i = 0; i < layout.u_grid.count; ++i) {
                    const double u = layout.u_grid.point(i);
                    ms.sets.push_back(sample_stolct_magnitude_uniform(
                        f, phi, A, u, spacing, BandLimit{omega}, n_min, count));
                }
            }
            break;
        }
    }
    return ms;
}

void apply_noise(const ExperimentConfig& cfg, Measurements& ms, double noise_sigma,
                 std::uint64_t noise_seed) {
    if (noise_sigma <= 0.0) return;
    std::uint64_t state = noise_seed;
    switch (cfg.solver) {
        case SolverKind::multi_olct: {
            double peak = 0.0;
            for (const auto& m : ms.mags)
                for (double v : m.mag2) peak = std::max(peak, v);
            for (auto& m : ms.mags) perturb_squares(m.mag2, noise_sigma * peak, state);
            break;
        }
        case SolverKind::stolct:
        case SolverKind::nonseparable: {
            double peak = 0.0;
            for (double v : ms.map.values) peak = std::max(peak, v * v);
            std::vector<double> squares(ms.map.values.size());
            for (std::size_t k = 0; k < squares.size(); ++k)
                squares[k] = ms.map.values[k] * ms.map.values[k];
            perturb_squares(squares, noise_sigma * peak, state);
            for (std::size_t k = 0; k < squares.size(); ++k)
                ms.map.values[k] = std::sqrt(squares[k]);
            break;
        }
        case SolverKind::bandlimited: {
            double peak = 0.0;
            for (const auto& s : ms.sets)
                for (double v : s.values) peak = std::max(peak, v * v);
            for (auto& s : ms.sets) {
                std::vector<double> squares(s.values.size());
                for (std::size_t k = 0; k < squares.size(); ++k)
                    squares[k] = s.values[k] * s.values[k];
                perturb_squares(squares, noise_sigma * peak, state);
                for (std::size_t k = 0; k < squares.size(); ++k)
                    s.values[k] = std::sqrt(squares[k]);
            }
            break;
        }
    }
}

}  // namespace

SolverKind solver_from_name(const std::string& name) {
    if (name == "multi-olct") return SolverKind::multi_olct;
    if (name == "stolct") return SolverKind::stolct;
    if (name == "nonseparable") return SolverKind::nonseparable;
    if (name == "bandlimited") return SolverKind::bandlimited;
    throw InvalidSpec("unknown solver: " + name);
}

std::string solver_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::multi_olct: return "multi-olct";
        case SolverKind::stolct: return "stolct";
        case SolverKind::nonseparable: return "nonseparable";
        case SolverKind::bandlimited: return "bandlimited";
    }
    throw InvalidSpec("unknown solver enumerator");
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw InvalidSpec("config must be a JSON object");
    ExperimentConfig cfg;
    cfg.experiment_id = string_field(j, "experiment_id", "experiment");
    if (cfg.experiment_id.empty() ||
        cfg.experiment_id.find_first_of(",\n\r") != std::string::npos)
        throw InvalidSpec("experiment_id must be nonempty without commas or newlines");
    cfg.solver = solver_from_name(string_field(j, "solver", ""));

    const auto sig = j.find("signal");
    if (sig == j.end()) throw InvalidSpec("config needs a signal spec");
    cfg.signal = signal_spec_from(*sig, "signal");
    if (const auto win = j.find("window"); win != j.end()) {
        cfg.window = signal_spec_from(*win, "window");
        cfg.has_window = true;
    }
    if (cfg.solver != SolverKind::multi_olct && !cfg.has_window)
        throw InvalidSpec(solver_name(cfg.solver) + " solver needs a window spec");

    cfg.matrices = matrices_from(j);

    if (const auto it = j.find("matrix_counts"); it != j.end()) {
        if (!it->is_array() || it->empty())
            throw InvalidSpec("matrix_counts must be a nonempty array");
        for (const auto& c : *it) {
            if (!c.is_number_unsigned()) throw InvalidSpec("matrix_counts must be integers");
            const auto count = c.get<std::size_t>();
            if (count == 0 || count > cfg.matrices.size())
                throw InvalidSpec("matrix_counts entries must lie in [1, #matrices]");
            cfg.matrix_counts.push_back(count);
        }
    } else {
        cfg.matrix_counts = {cfg.solver == SolverKind::multi_olct ? cfg.matrices.size()
                                                                  : std::size_t{1}};
    }

    if (const auto it = j.find("noise_sigmas"); it != j.end()) {
        if (!it->is_array() || it->empty())
            throw InvalidSpec("noise_sigmas must be a nonempty array");
        cfg.noise_sigmas.clear();
        for (const auto& s : *it) {
            if (!s.is_number() || !std::isfinite(s.get<double>()) || s.get<double>() < 0.0)
                throw InvalidSpec("noise_sigmas must be finite and nonnegative");
            cfg.noise_sigmas.push_back(s.get<double>());
        }
    }

    cfg.trials = static_cast<std::size_t>(uint_field(j, "trials", 1));
    if (cfg.trials == 0) throw InvalidSpec("trials must be positive");
    cfg.seed = uint_field(j, "seed", 0);
    cfg.floor = number_field(j, "floor", 1e-8);
    cfg.masked_limit = number_field(j, "masked_limit", 0.95);
    if (!(cfg.floor > 0.0) || !(cfg.masked_limit > 0.0) || cfg.masked_limit > 1.0)
        throw InvalidSpec("floor must be positive and masked_limit in (0, 1]");

    if (cfg.solver == SolverKind::bandlimited) {
        const auto it = j.find("band");
        if (it == j.end()) throw InvalidSpec("bandlimited solver needs a band layout");
        const json& b = *it;
        const std::string mode = string_field(b, "mode", "");
        if (mode == "ft")
            cfg.band.mode = BandMode::ft_band;
        else if (mode == "olct")
            cfg.band.mode = BandMode::olct_band;
        else
            throw InvalidSpec("band mode must be \"ft\" or \"olct\"");
        cfg.band.signal_band = number_field(b, "signal_band", 0.0);
        cfg.band.window_band = number_field(b, "window_band", 0.0);
        cfg.band.vspan = number_field(b, "vspan", 0.0);
        cfg.band.radius = static_cast<std::size_t>(uint_field(b, "radius", 64));
        if (!(cfg.band.signal_band > 0.0) || !(cfg.band.vspan > 0.0) || cfg.band.radius == 0)
            throw InvalidSpec("band layout needs signal_band > 0, vspan > 0, radius >= 1");
        if (cfg.band.mode == BandMode::ft_band && !(cfg.band.window_band > 0.0))
            throw InvalidSpec("ft band mode needs window_band > 0");
        const auto ug = b.find("u_grid");
        if (ug == b.end()) throw InvalidSpec("band layout needs u_grid");
        cfg.band.u_grid = grid_from_triple(*ug, "u_grid");
        if (cfg.band.u_grid.count == 0) throw InvalidSpec("u_grid must be nonempty");
    }

    cfg.output_path = string_field(j, "output_path", "");
    return cfg;
}

RecoveryReport run_single(const ExperimentConfig& cfg, std::size_t num_matrices,
                          double noise_sigma, std::uint64_t noise_seed) {
    if (num_matrices == 0 || num_matrices > cfg.matrices.size())
        throw InvalidSpec("num_matrices out of range");
    const SampledSignal f = generate_signal(cfg.signal);
    SampledSignal phi;
    if (cfg.has_window) phi = generate_signal(cfg.window);
    const SupportWindow support{f.origin, f.size(), f.step};

    Measurements ms = measure(cfg, f, phi, num_matrices);
    apply_noise(cfg, ms, noise_sigma, noise_seed);

    switch (cfg.solver) {
        case SolverKind::multi_olct:
            return recover_from_multi_olct(ms.mags, support, &f);
        case SolverKind::stolct:
            return recover_from_stolct(ms.map, phi, cfg.matrices.front(), support, cfg.floor,
                                       cfg.masked_limit, &f);
        case SolverKind::nonseparable:
            return recover_nonseparable_real(ms.map, phi, cfg.matrices.front(), support, &f);
        case SolverKind::bandlimited: {
            BandRecoveryOptions opts;
            opts.floor = cfg.floor;
            opts.masked_limit = cfg.masked_limit;
            opts.radius = cfg.band.radius;
            return recover_bandlimited_sampled(ms.sets, phi, cfg.matrices.front(),
                                               BandLimit{cfg.band.signal_band}, cfg.band.mode,
                                               support, opts, &f);
        }
    }
    throw InvalidSpec("unknown solver enumerator");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers) {
    if (cfg.output_path.empty()) throw InvalidSpec("config needs output_path");
    namespace fs = std::filesystem;
    const fs::path out(cfg.output_path);
    std::error_code ec;
    fs::create_directories(out / "reports", ec);
    if (ec) throw InvalidSpec("cannot create output_path: " + cfg.output_path);

    write_text_file((out / "signal.json").string(), signal_to_json(generate_signal(cfg.signal)));
    if (cfg.has_window)
        write_text_file((out / "window.json").string(),
                        signal_to_json(generate_signal(cfg.window)));

    struct Run {
        std::size_t count_idx, noise_idx, trial;
    };
    std::vector<Run> runs;
    for (std::size_t ci = 0; ci < cfg.matrix_counts.size(); ++ci)
        for (std::size_t ni = 0; ni < cfg.noise_sigmas.size(); ++ni)
            for (std::size_t t = 0; t < cfg.trials; ++t) runs.push_back({ci, ni, t});

    ExperimentResult result;
    result.records.resize(runs.size());
    std::vector<std::string> reports(runs.size());

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= runs.size()) return;
            const Run& r = runs[i];
            const std::size_t count = cfg.matrix_counts[r.count_idx];
            const double sigma = cfg.noise_sigmas[r.noise_idx];
            RunRecord rec;
            rec.num_matrices = count;
            rec.noise_sigma = sigma;
            rec.trial = r.trial;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const std::uint64_t seed = detail::hash_mix(
                    detail::hash_mix(detail::hash_mix(cfg.seed, r.count_idx), r.noise_idx),
                    r.trial);
                const RecoveryReport rep = run_single(cfg, count, sigma, seed);
                rec.residual = rep.residual;
                rec.verdict = rep.verdict.empty() ? "ok" : rep.verdict;
                if (r.trial == 0) reports[i] = report_to_json(rep);
            } catch (const Error& e) {
                rec.failed = true;
                rec.residual = std::numeric_limits<double>::quiet_NaN();
                rec.verdict = e.kind();
            }
            const auto t1 = std::chrono::steady_clock::now();
            rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            result.records[i] = std::move(rec);
        }
    };
    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(runs.size())));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    // all writes happen on this thread, in run-grid order
    std::string csv = "experiment_id,solver,N,num_matrices,noise_sigma,residual,runtime_ms,verdict\n";
    for (const auto& rec : result.records) {
        csv += cfg.experiment_id;
        csv += ',';
        csv += solver_name(cfg.solver);
        csv += ',';
        csv += std::to_string(cfg.signal.length);
        csv += ',';
        csv += std::to_string(rec.num_matrices);
        csv += ',';
        csv += fmt(rec.noise_sigma);
        csv += ',';
        csv += fmt(rec.residual);
        csv += ',';
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", rec.runtime_ms);
        csv += ms;
        csv += ',';
        csv += rec.verdict;
        csv += '\n';
    }
    write_text_file((out / "results.csv").string(), csv);

    auto summary = [&](auto key, const std::vector<double>& keys, const std::string& header,
                       const std::string& path) {
        std::string table = header + ",median_residual,runs,failures\n";
        for (double k : keys) {
            std::vector<double> ok;
            std::size_t total = 0, failures = 0;
            for (const auto& rec : result.records) {
                if (key(rec) != k) continue;
                ++total;
                if (rec.failed)
                    ++failures;
                else
                    ok.push_back(rec.residual);
            }
            table += fmt(k) + ',' + fmt(median(ok)) + ',' + std::to_string(total) + ',' +
                     std::to_string(failures) + '\n';
        }
        write_text_file((out / path).string(), table);
    };
    std::vector<double> counts;
    for (std::size_t c : cfg.matrix_counts) counts.push_back(static_cast<double>(c));
    summary([](const RunRecord& r) { return r.noise_sigma; }, cfg.noise_sigmas, "noise_sigma",
            "residual_vs_noise.csv");
    summary([](const RunRecord& r) { return static_cast<double>(r.num_matrices); }, counts,
            "num_matrices", "residual_vs_matrices.csv");

    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (reports[i].empty()) continue;
        const std::string name = "report_n" + std::to_string(runs[i].noise_idx) + "_m" +
                                 std::to_string(runs[i].count_idx) + ".json";
        write_text_file((out / "reports" / name).string(), reports[i]);
    }

    result.exit_status = 0;
    for (const auto& rec : result.records)
        if (rec.failed) result.exit_status = 1;
    return result;
}

}  // namespace olct
