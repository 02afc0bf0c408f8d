#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "olct/experiment.hpp"
#include "olct/io.hpp"
#include "olct/signals.hpp"
#include "support/oracles.hpp"

using olct::Complex;
using olct::SignalKind;
using olct::SignalSpec;

namespace {

SignalSpec base_spec(SignalKind kind, std::size_t length, double step) {
    SignalSpec s;
    s.kind = kind;
    s.length = length;
    s.step = step;
    return s;
}

// strips the runtime_ms column (second to last) from every CSV line
std::string without_runtime(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        const auto last = line.rfind(',');
        const auto prev = line.rfind(',', last == std::string::npos ? last : last - 1);
        REQUIRE(prev != std::string::npos);
        out += line.substr(0, prev) + line.substr(last) + '\n';
    }
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("signal generator shapes and determinism") {
    SUBCASE("centered gaussian is real, symmetric, peaked at the center") {
        auto spec = base_spec(SignalKind::gaussian, 64, 0.25);
        spec.sigma = 1.0;
        const auto f = olct::generate_signal(spec);
        REQUIRE(f.size() == 64);
        CHECK(f.origin == -32);
        const std::size_t mid = 32;  // lattice index 0
        for (std::size_t n = 1; n <= 31; ++n) {
            CHECK(f.samples[mid + n] == f.samples[mid - n]);
            CHECK(f.samples[mid + n].imag() == 0.0);
        }
        for (std::size_t k = 0; k < f.size(); ++k)
            CHECK(std::abs(f.samples[k]) <= f.samples[mid].real());
        CHECK(f.samples[mid].real() == doctest::Approx(1.0));
    }

    SUBCASE("random signals are bit-identical across runs and differ across seeds") {
        auto spec = base_spec(SignalKind::random_compact, 16, 1.0);
        spec.seed = 7;
        const auto a = olct::generate_signal(spec);
        const auto b = olct::generate_signal(spec);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.samples[k] == b.samples[k]);
        spec.seed = 8;
        const auto c = olct::generate_signal(spec);
        bool same = true;
        for (std::size_t k = 0; k < a.size(); ++k) same = same && a.samples[k] == c.samples[k];
        CHECK_FALSE(same);
    }

    SUBCASE("bandlimited generator leaves no DFT energy outside the band") {
        auto spec = base_spec(SignalKind::random_bandlimited, 64, 0.25);
        spec.band = 6.0;  // Nyquist is 4 pi ~ 12.57
        spec.seed = 11;
        const auto f = olct::generate_signal(spec);
        const auto bins = oracle::dft(f.samples);
        double inside = 0.0, outside = 0.0;
        const auto n = static_cast<std::int64_t>(f.size());
        for (std::int64_t k = 0; k < n; ++k) {
            const std::int64_t ks = (k <= n / 2) ? k : k - n;
            const double omega =
                2.0 * olct::kPi * static_cast<double>(ks) / (static_cast<double>(n) * f.step);
            (std::abs(omega) <= spec.band ? inside : outside) += std::norm(bins[k]);
        }
        REQUIRE(inside > 0.0);
        CHECK(outside <= 1e-10 * (inside + outside));
    }

    SUBCASE("chirp carries the gaussian envelope with quadratic phase") {
        auto spec = base_spec(SignalKind::chirp, 64, 0.25);
        spec.sigma = 1.2;
        spec.center = 0.5;
        spec.rate = 3.0;
        const auto f = olct::generate_signal(spec);
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double dt = f.time(k) - spec.center;
            const Complex flat =
                f.samples[k] * std::exp(Complex(0.0, -0.5 * spec.rate * dt * dt));
            CHECK(flat.imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(flat.real() >= 0.0);
        }
    }

    SUBCASE("two bumps sit at +-gap/2 with a dead valley between") {
        auto spec = base_spec(SignalKind::two_bumps, 128, 0.125);
        spec.gap = 8.0;
        const auto f = olct::generate_signal(spec);
        const auto at_time = [&](double t) {
            return f.at(static_cast<std::int64_t>(std::llround(t / f.step)));
        };
        CHECK(std::abs(at_time(-4.0)) == doctest::Approx(1.0));
        CHECK(std::abs(at_time(4.0)) == doctest::Approx(0.75));
        CHECK(std::abs(at_time(0.0)) <= 1e-12);
    }

    SUBCASE("smooth bump is exactly zero outside twice its width") {
        auto spec = base_spec(SignalKind::smooth_bump, 64, 0.25);
        spec.sigma = 1.5;
        spec.center = 0.25;
        const auto f = olct::generate_signal(spec);
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double r = std::abs(f.time(k) - spec.center) / spec.sigma;
            if (r >= 2.0)
                CHECK(f.samples[k] == Complex(0.0, 0.0));
            else
                CHECK(f.samples[k].real() > 0.0);
        }
    }

    SUBCASE("invalid parameters are rejected") {
        CHECK_THROWS_AS(olct::generate_signal(base_spec(SignalKind::gaussian, 0, 0.25)),
                        olct::InvalidSpec);
        CHECK_THROWS_AS(olct::generate_signal(base_spec(SignalKind::gaussian, 8, -1.0)),
                        olct::InvalidSpec);
        auto bad_sigma = base_spec(SignalKind::gaussian, 8, 0.25);
        bad_sigma.sigma = 0.0;
        CHECK_THROWS_AS(olct::generate_signal(bad_sigma), olct::InvalidSpec);
        auto bad_band = base_spec(SignalKind::random_bandlimited, 8, 0.25);
        bad_band.band = 13.0;  // above pi/step
        CHECK_THROWS_AS(olct::generate_signal(bad_band), olct::InvalidSpec);
        auto bad_gap = base_spec(SignalKind::two_bumps, 8, 0.25);
        bad_gap.gap = 0.0;
        CHECK_THROWS_AS(olct::generate_signal(bad_gap), olct::InvalidSpec);
        CHECK_THROWS_AS(olct::signal_kind_from_name("triangle"), olct::InvalidSpec);
        CHECK(olct::signal_kind_from_name(olct::signal_kind_name(SignalKind::two_bumps)) ==
              SignalKind::two_bumps);
    }
}

TEST_CASE("wire formats round trip and reject malformed input") {
    oracle::Rng rng(0x5eed100u);
    const auto f = oracle::random_signal(rng, 12, -5, 0.25);

    SUBCASE("signal json preserves every bit") {
        const auto back = olct::signal_from_json(olct::signal_to_json(f));
        CHECK(back.origin == f.origin);
        CHECK(back.step == f.step);
        REQUIRE(back.size() == f.size());
        for (std::size_t k = 0; k < f.size(); ++k) CHECK(back.samples[k] == f.samples[k]);
    }

    SUBCASE("malformed or non-finite signal json is rejected") {
        CHECK_THROWS_AS(olct::signal_from_json("{"), olct::InvalidSpec);
        CHECK_THROWS_AS(olct::signal_from_json("[1,2]"), olct::InvalidSpec);
        CHECK_THROWS_AS(
            olct::signal_from_json(R"({"origin":0,"step":1.0,"re":[1.0],"im":[]})"),
            olct::InvalidSpec);
        CHECK_THROWS_AS(
            olct::signal_from_json(R"({"origin":0,"step":1.0,"re":[null],"im":[0.0]})"),
            olct::InvalidSpec);
        CHECK_THROWS_AS(
            olct::signal_from_json(R"({"origin":0,"step":0.0,"re":[1.0],"im":[0.0]})"),
            olct::InvalidSpec);
        CHECK_THROWS_AS(
            olct::signal_from_json(R"({"origin":0.5,"step":1.0,"re":[1.0],"im":[0.0]})"),
            olct::InvalidSpec);
        olct::SampledSignal bad = f;
        bad.samples[3] = Complex(std::nan(""), 0.0);
        CHECK_THROWS_AS(olct::signal_to_json(bad), olct::InvalidSpec);
    }

    SUBCASE("spectrum and map json round trip") {
        olct::Spectrum s;
        s.grid = {-3.0, 0.5, 9};
        for (std::size_t k = 0; k < 9; ++k)
            s.values.push_back(Complex(std::sin(0.3 * static_cast<double>(k)), 0.1));
        const auto s2 = olct::spectrum_from_json(olct::spectrum_to_json(s));
        CHECK(s2.grid.start == s.grid.start);
        CHECK(s2.grid.count == s.grid.count);
        for (std::size_t k = 0; k < 9; ++k) CHECK(s2.values[k] == s.values[k]);

        olct::TimeFrequencyMap m;
        m.shift_grid = {-1.0, 0.5, 3};
        m.freq_grid = {0.0, 0.25, 4};
        m.window_id = "gauss";
        for (std::size_t k = 0; k < 12; ++k)
            m.values.push_back(Complex(static_cast<double>(k), -0.5));
        const auto m2 = olct::map_from_json(olct::map_to_json(m));
        CHECK(m2.window_id == "gauss");
        CHECK(m2.freq_grid.step == m.freq_grid.step);
        for (std::size_t k = 0; k < 12; ++k) CHECK(m2.values[k] == m.values[k]);

        auto truncated = olct::map_to_json(m);
        truncated.replace(truncated.find("\"count\":3"), 9, "\"count\":2");
        CHECK_THROWS_AS(olct::map_from_json(truncated), olct::InvalidSpec);
    }

    SUBCASE("report json keeps verdict and diagnostics") {
        olct::RecoveryReport r;
        r.signal = f;
        r.residual = 2.5e-7;
        r.verdict = "unique_up_to_sign";
        r.diagnostics["rank_gap"] = 3.2e8;
        r.diagnostics["masked_fraction"] = 0.125;
        const auto r2 = olct::report_from_json(olct::report_to_json(r));
        CHECK(r2.residual == r.residual);
        CHECK(r2.verdict == r.verdict);
        CHECK(r2.diagnostics.at("rank_gap") == r.diagnostics.at("rank_gap"));
        for (std::size_t k = 0; k < f.size(); ++k) CHECK(r2.signal.samples[k] == f.samples[k]);

        r.verdict.clear();
        const auto text = olct::report_to_json(r);
        CHECK(text.find("verdict") == std::string::npos);
        CHECK(olct::report_from_json(text).verdict.empty());
    }
}

TEST_CASE("experiment config validation") {
    const std::string valid = R"({
        "experiment_id": "demo",
        "solver": "multi-olct",
        "signal": {"kind": "random_compact", "length": 8, "step": 0.5, "seed": 3},
        "ratio_sweep": {"count": 10, "step": 0.25, "y0": 0.1, "w0": -0.2},
        "noise_sigmas": [0.0, 1e-4],
        "trials": 3,
        "seed": 42,
        "output_path": "unused"
    })";

    SUBCASE("a valid config parses into the sweep it describes") {
        const auto cfg = olct::experiment_config_from_json(valid);
        CHECK(cfg.solver == olct::SolverKind::multi_olct);
        REQUIRE(cfg.matrices.size() == 10);
        for (std::size_t k = 0; k < 10; ++k) {
            CHECK(cfg.matrices[k].determinant() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(cfg.matrices[k].a() / cfg.matrices[k].b() ==
                  doctest::Approx(0.25 * static_cast<double>(k)));
            CHECK(cfg.matrices[k].y0() == 0.1);
        }
        CHECK(cfg.matrix_counts == std::vector<std::size_t>{10});
        CHECK(cfg.noise_sigmas == std::vector<double>{0.0, 1e-4});
        CHECK(cfg.trials == 3);
    }

    SUBCASE("schema violations raise InvalidSpec") {
        auto patch = [&](const std::string& from, const std::string& to) {
            std::string s = valid;
            s.replace(s.find(from), from.size(), to);
            return s;
        };
        // negative noise
        CHECK_THROWS_AS(olct::experiment_config_from_json(patch("[0.0, 1e-4]", "[-1e-4]")),
                        olct::InvalidSpec);
        // unknown solver
        CHECK_THROWS_AS(olct::experiment_config_from_json(patch("multi-olct", "magic")),
                        olct::InvalidSpec);
        // no signal
        CHECK_THROWS_AS(olct::experiment_config_from_json(patch("\"signal\"", "\"sign\"")),
                        olct::InvalidSpec);
        // windowed solver without a window
        CHECK_THROWS_AS(olct::experiment_config_from_json(patch("multi-olct", "stolct")),
                        olct::InvalidSpec);
        // zero trials
        CHECK_THROWS_AS(olct::experiment_config_from_json(patch("\"trials\": 3", "\"trials\": 0")),
                        olct::InvalidSpec);
        // malformed text
        CHECK_THROWS_AS(olct::experiment_config_from_json("not json"), olct::InvalidSpec);
        // inconsistent matrix
        CHECK_THROWS_AS(olct::experiment_config_from_json(patch(
                            "\"ratio_sweep\": {\"count\": 10, \"step\": 0.25, \"y0\": 0.1, "
                            "\"w0\": -0.2}",
                            "\"matrices\": [[1, 1, 1, 1, 0, 0]]")),
                        olct::InvalidSpec);
        // matrix_counts beyond the family
        std::string extra = valid;
        extra.insert(extra.rfind('}'), R"(, "matrix_counts": [11])");
        CHECK_THROWS_AS(olct::experiment_config_from_json(extra), olct::InvalidSpec);
    }
}

TEST_CASE("experiment batches: artifacts, determinism, and failure rows") {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "olct_harness_test";
    fs::remove_all(root);

    const auto config_for = [&](const fs::path& out, std::size_t ratio_count) {
        std::ostringstream text;
        text << R"({
            "experiment_id": "batch",
            "solver": "multi-olct",
            "signal": {"kind": "random_compact", "length": 8, "step": 0.5, "seed": 3},
            "ratio_sweep": {"count": )"
             << ratio_count << R"(, "step": 0.25},
            "noise_sigmas": [0.0, 1e-4],
            "trials": 3,
            "seed": 42,
            "output_path": ")"
             << out.string() << "\"}";
        return olct::experiment_config_from_json(text.str());
    };

    SUBCASE("a small sweep produces the full artifact set with clean rows") {
        const auto cfg = config_for(root / "a", 24);
        const auto result = olct::run_experiment(cfg, 2);
        CHECK(result.exit_status == 0);
        REQUIRE(result.records.size() == 6);  // 1 count x 2 noise x 3 trials
        for (const auto& rec : result.records) CHECK_FALSE(rec.failed);
        // noiseless trials recover the signal; noisy trials stay finite and
        // worse (the short-arc modulation fit amplifies measurement noise)
        CHECK(result.records[0].residual <= 1e-6);
        CHECK(result.records[3].residual > result.records[0].residual);
        CHECK(result.records[3].residual <= 1.5);
        for (const char* name :
             {"signal.json", "results.csv", "residual_vs_noise.csv", "residual_vs_matrices.csv",
              "reports/report_n0_m0.json", "reports/report_n1_m0.json"})
            CHECK(fs::exists(root / "a" / name));
        const auto rep =
            olct::report_from_json(slurp(root / "a" / "reports" / "report_n0_m0.json"));
        CHECK(rep.residual <= 1e-6);
        CHECK(rep.signal.size() == 8);
        const auto csv = slurp(root / "a" / "results.csv");
        CHECK(csv.rfind("experiment_id,solver,N,num_matrices,noise_sigma,residual,runtime_ms,"
                        "verdict\n",
                        0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 rows
    }

    SUBCASE("identical configs and seeds give identical outputs modulo runtime") {
        const auto first = olct::run_experiment(config_for(root / "b1", 10), 4);
        const auto second = olct::run_experiment(config_for(root / "b2", 10), 1);
        REQUIRE(first.records.size() == second.records.size());
        for (std::size_t i = 0; i < first.records.size(); ++i) {
            CHECK(first.records[i].residual == second.records[i].residual);
            CHECK(first.records[i].verdict == second.records[i].verdict);
        }
        CHECK(without_runtime(slurp(root / "b1" / "results.csv")) ==
              without_runtime(slurp(root / "b2" / "results.csv")));
        CHECK(slurp(root / "b1" / "reports" / "report_n1_m0.json") ==
              slurp(root / "b2" / "reports" / "report_n1_m0.json"));
        CHECK(slurp(root / "b1" / "signal.json") == slurp(root / "b2" / "signal.json"));
    }

    SUBCASE("solver failures become rows, not aborts") {
        const auto cfg = config_for(root / "c", 4);  // 4 ratios < support length 8
        const auto result = olct::run_experiment(cfg, 2);
        CHECK(result.exit_status == 1);
        REQUIRE(result.records.size() == 6);
        for (const auto& rec : result.records) {
            CHECK(rec.failed);
            CHECK(rec.verdict == "InsufficientDiversity");
            CHECK(std::isnan(rec.residual));
        }
        const auto csv = slurp(root / "c" / "results.csv");
        CHECK(csv.find("InsufficientDiversity") != std::string::npos);
        CHECK_FALSE(fs::exists(root / "c" / "reports" / "report_n0_m0.json"));
    }

    fs::remove_all(root);
}

TEST_CASE("single runs drive the windowed solvers end to end") {
    SUBCASE("matched narrow gaussians under a rotation recover through the map") {
        const auto cfg = olct::experiment_config_from_json(R"({
            "solver": "stolct",
            "signal": {"kind": "gaussian", "length": 49, "step": 0.125, "sigma": 0.35,
                       "center": 0.25},
            "window": {"kind": "gaussian", "length": 41, "step": 0.125, "sigma": 0.35},
            "matrices": [[0.7071067811865476, 0.7071067811865476,
                          -0.7071067811865476, 0.7071067811865476, 0.0, 0.0]]
        })");
        const auto report = olct::run_single(cfg, 1, 0.0, 0);
        CHECK(report.residual <= 1e-5);
        CHECK(report.diagnostics.at("rank_gap") >= 1e5);
    }

    SUBCASE("a real bump under a generic matrix comes back unique up to sign") {
        const auto cfg = olct::experiment_config_from_json(R"({
            "solver": "nonseparable",
            "signal": {"kind": "gaussian", "length": 129, "step": 0.125, "sigma": 0.8,
                       "center": -0.7},
            "window": {"kind": "gaussian", "length": 25, "step": 0.125, "sigma": 0.17},
            "matrices": [[0.9, 1.2, 0.14166666666666666, 1.3, 0.15, -0.2]]
        })");
        const auto report = olct::run_single(cfg, 1, 0.0, 0);
        CHECK(report.verdict == "unique_up_to_sign");
        CHECK(report.residual <= 1e-6);
        CHECK(report.diagnostics.at("components") == doctest::Approx(1.0));
    }
}
