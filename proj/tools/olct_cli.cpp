#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "olct/ambiguity.hpp"
#include "olct/experiment.hpp"
#include "olct/io.hpp"
#include "olct/pairs.hpp"
#include "olct/signals.hpp"
#include "olct/stolct.hpp"
#include "olct/transforms.hpp"

namespace {

using olct::Grid;
using olct::InvalidSpec;
using olct::ParameterMatrix;
using olct::SampledSignal;

std::vector<double> parse_numbers(const std::string& text, std::size_t expect, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InvalidSpec(std::string(what) + ": bad number '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expect)
        throw InvalidSpec(std::string(what) + " needs " + std::to_string(expect) +
                          " comma-separated numbers");
    return out;
}

ParameterMatrix parse_matrix(const std::string& text) {
    const auto p = parse_numbers(text, 6, "--matrix");
    try {
        return {p[0], p[1], p[2], p[3], p[4], p[5]};
    } catch (const olct::Error& e) {
        throw InvalidSpec(std::string("--matrix: ") + e.what());
    }
}

Grid parse_grid(const std::string& text, const char* what) {
    const auto p = parse_numbers(text, 3, what);
    if (p[2] < 0.0 || p[2] != std::floor(p[2]))
        throw InvalidSpec(std::string(what) + ": count must be a nonnegative integer");
    Grid g{p[0], p[1], static_cast<std::size_t>(p[2])};
    g.validate();
    return g;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::fputs((text + "\n").c_str(), stdout);
    else
        olct::write_text_file(out_path, text);
}

int g_status = 0;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"offset linear canonical transform toolkit"};
    app.require_subcommand(1);

    // signal: test-signal generator (the only way to make inputs from scratch)
    std::string g_kind, g_out;
    olct::SignalSpec g_spec;
    auto* g = app.add_subcommand("signal", "generate a deterministic test signal file");
    g->add_option("--kind", g_kind,
                  "gaussian|chirp|random_compact|random_bandlimited|two_bumps|smooth_bump")
        ->required();
    g->add_option("--length", g_spec.length, "sample count")->required();
    g->add_option("--step", g_spec.step, "lattice step")->required();
    g->add_option("--sigma", g_spec.sigma, "width parameter");
    g->add_option("--center", g_spec.center, "center time");
    g->add_option("--rate", g_spec.rate, "chirp quadratic-phase rate");
    g->add_option("--band", g_spec.band, "angular band edge");
    g->add_option("--gap", g_spec.gap, "two_bumps separation");
    g->add_option("--seed", g_spec.seed, "random stream seed");
    g->add_option("--out", g_out, "output file (stdout when omitted)");
    g->callback([&] {
        g_spec.kind = olct::signal_kind_from_name(g_kind);
        emit(g_out, olct::signal_to_json(olct::generate_signal(g_spec)));
    });

    // olct: forward / inverse transform
    std::string t_matrix, t_in, t_out, t_grid;
    bool t_fast = false, t_inverse = false;
    auto* t = app.add_subcommand("olct", "forward or inverse transform of a signal file");
    t->add_option("--matrix", t_matrix, "a,b,c,d,y0,w0")->required();
    t->add_option("--in", t_in, "input file (signal json; spectrum json with --inverse)")
        ->required();
    t->add_option("--out", t_out, "output file (stdout when omitted)");
    t->add_option("--grid", t_grid, "output grid start,step,count");
    t->add_flag("--fast", t_fast, "chirp-FFT path on the induced output grid");
    t->add_flag("--inverse", t_inverse, "invert a spectrum onto the --grid time lattice");
    t->callback([&] {
        const ParameterMatrix A = parse_matrix(t_matrix);
        if (t_inverse) {
            if (t_grid.empty()) throw InvalidSpec("--inverse needs --grid");
            const auto spec = olct::spectrum_from_json(olct::read_text_file(t_in));
            emit(t_out, olct::signal_to_json(
                            olct::olct_inverse(spec, A, parse_grid(t_grid, "--grid"))));
            return;
        }
        const auto f = olct::signal_from_json(olct::read_text_file(t_in));
        olct::Spectrum spec;
        if (t_fast) {
            spec = olct::olct_fast(f, A);
        } else {
            if (t_grid.empty()) throw InvalidSpec("forward transform needs --grid or --fast");
            spec = olct::olct_forward(f, A, parse_grid(t_grid, "--grid"));
        }
        emit(t_out, olct::spectrum_to_json(spec));
    });

    // stolct: windowed transform map
    std::string s_matrix, s_in, s_window, s_out, s_shifts, s_freqs;
    auto* s = app.add_subcommand("stolct", "windowed transform map of a signal file");
    s->add_option("--matrix", s_matrix, "a,b,c,d,y0,w0")->required();
    s->add_option("--in", s_in, "signal json")->required();
    s->add_option("--window", s_window, "window signal json")->required();
    s->add_option("--shifts", s_shifts, "shift grid start,step,count")->required();
    s->add_option("--freqs", s_freqs, "frequency grid start,step,count")->required();
    s->add_option("--out", s_out, "output file (stdout when omitted)");
    s->callback([&] {
        const auto f = olct::signal_from_json(olct::read_text_file(s_in));
        const auto phi = olct::signal_from_json(olct::read_text_file(s_window));
        const auto map = olct::stolct(f, phi, parse_matrix(s_matrix),
                                      parse_grid(s_shifts, "--shifts"),
                                      parse_grid(s_freqs, "--freqs"));
        emit(s_out, olct::map_to_json(map));
    });

    // ambiguity: (cross-)ambiguity surface on a lag x modulation grid
    std::string a_in, a_with, a_out, a_lags, a_mods;
    auto* a = app.add_subcommand("ambiguity", "ambiguity surface of one or two signal files");
    a->add_option("--in", a_in, "signal json")->required();
    a->add_option("--with", a_with, "second signal json (cross-ambiguity)");
    a->add_option("--lags", a_lags, "lag grid start,step,count")->required();
    a->add_option("--mods", a_mods, "modulation grid start,step,count")->required();
    a->add_option("--out", a_out, "output file (stdout when omitted)");
    a->callback([&] {
        const auto f = olct::signal_from_json(olct::read_text_file(a_in));
        const Grid lags = parse_grid(a_lags, "--lags");
        const Grid mods = parse_grid(a_mods, "--mods");
        const auto surface = a_with.empty()
                                 ? olct::ambiguity(f, lags, mods)
                                 : olct::cross_ambiguity(
                                       f, olct::signal_from_json(olct::read_text_file(a_with)),
                                       lags, mods);
        olct::TimeFrequencyMap wire;
        wire.values = surface.values;
        wire.shift_grid = surface.lag_grid;
        wire.freq_grid = surface.mod_grid;
        wire.window_id = "ambiguity";
        emit(a_out, olct::map_to_json(wire));
    });

    // pair make / certify
    auto* p = app.add_subcommand("pair", "build or certify equal-magnitude signal pairs");
    p->require_subcommand(1);
    std::string pm_g1, pm_g2, pm_matrix, pm_out_x, pm_out_y;
    double pm_beta = 0.0;
    std::int64_t pm_n0 = 0;
    auto* pm = p->add_subcommand("make", "convolution pair with equal transform magnitudes");
    pm->add_option("--g1", pm_g1, "first factor, signal json")->required();
    pm->add_option("--g2", pm_g2, "second factor, signal json")->required();
    pm->add_option("--matrix", pm_matrix, "a,b,c,d,y0,w0")->required();
    pm->add_option("--beta", pm_beta, "relative phase of the second member");
    pm->add_option("--n0", pm_n0, "lattice shift of the second member");
    pm->add_option("--out-x", pm_out_x, "output file for the first member")->required();
    pm->add_option("--out-y", pm_out_y, "output file for the second member")->required();
    pm->callback([&] {
        const auto g1 = olct::signal_from_json(olct::read_text_file(pm_g1));
        const auto g2 = olct::signal_from_json(olct::read_text_file(pm_g2));
        const auto pair =
            olct::make_nontrivial_pair(g1, g2, parse_matrix(pm_matrix), pm_beta, pm_n0);
        olct::write_text_file(pm_out_x, olct::signal_to_json(pair.x));
        olct::write_text_file(pm_out_y, olct::signal_to_json(pair.y));
        nlohmann::json j{{"beta", pair.provenance.beta},
                         {"n0", pair.provenance.n0},
                         {"certified_max_dev", pair.certified_max_dev}};
        std::fputs((j.dump() + "\n").c_str(), stdout);
    });
    std::string pc_x, pc_y, pc_matrix, pc_grid, pc_out;
    double pc_tol = 1e-8;
    auto* pc = p->add_subcommand("certify", "check magnitude agreement of two signals");
    pc->add_option("--x", pc_x, "first signal json")->required();
    pc->add_option("--y", pc_y, "second signal json")->required();
    pc->add_option("--matrix", pc_matrix, "a,b,c,d,y0,w0")->required();
    pc->add_option("--grid", pc_grid, "certification grid start,step,count")->required();
    pc->add_option("--tol", pc_tol, "magnitude agreement tolerance");
    pc->add_option("--out", pc_out, "certificate file (stdout when omitted)");
    pc->callback([&] {
        const auto x = olct::signal_from_json(olct::read_text_file(pc_x));
        const auto y = olct::signal_from_json(olct::read_text_file(pc_y));
        const auto cert = olct::certify_pair(x, y, parse_matrix(pc_matrix),
                                             parse_grid(pc_grid, "--grid"), pc_tol);
        nlohmann::json j{{"max_dev", cert.max_dev},
                         {"distinct", cert.distinct},
                         {"trivial_equivalent", cert.trivial_equivalent},
                         {"passed", cert.passed}};
        emit(pc_out, j.dump());
        if (!cert.passed) g_status = 1;
    });

    // recover: synthesize measurements from a config and run one solver
    std::string r_config, r_solver, r_out;
    auto* r = app.add_subcommand("recover", "run a magnitude-recovery solver from a config");
    r->add_option("--config", r_config, "config json (experiment schema)")->required();
    r->add_option("--solver", r_solver,
                  "multi-olct|stolct|nonseparable|bandlimited (overrides the config)");
    r->add_option("--out", r_out, "report file (stdout when omitted)");
    r->callback([&] {
        nlohmann::json j =
            nlohmann::json::parse(olct::read_text_file(r_config), nullptr, false);
        if (j.is_discarded()) throw InvalidSpec("malformed JSON in " + r_config);
        if (!r_solver.empty()) j["solver"] = r_solver;
        const auto cfg = olct::experiment_config_from_json(j.dump());
        const std::size_t num_matrices =
            cfg.solver == olct::SolverKind::multi_olct ? cfg.matrices.size() : 1;
        const auto report =
            olct::run_single(cfg, num_matrices, cfg.noise_sigmas.front(), cfg.seed);
        emit(r_out, olct::report_to_json(report));
    });

    // experiment: batch runner
    std::string e_config;
    unsigned e_workers = 1;
    auto* e = app.add_subcommand("experiment", "run a batch experiment config");
    e->add_option("--config", e_config, "config json")->required();
    e->add_option("--workers", e_workers, "worker thread count");
    e->callback([&] {
        const auto cfg = olct::experiment_config_from_json(olct::read_text_file(e_config));
        const auto result = olct::run_experiment(cfg, e_workers);
        std::size_t failures = 0;
        for (const auto& rec : result.records)
            if (rec.failed) ++failures;
        std::printf("%zu runs, %zu failed, results in %s\n", result.records.size(), failures,
                    cfg.output_path.c_str());
        g_status = result.exit_status;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    } catch (const InvalidSpec& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return 2;
    } catch (const olct::Error& err) {
        std::fprintf(stderr, "error [%s]: %s\n", err.kind().c_str(), err.what());
        return 1;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return g_status;
}
