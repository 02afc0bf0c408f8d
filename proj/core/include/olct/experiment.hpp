#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olct/parameters.hpp"
#include "olct/recovery.hpp"
#include "olct/signals.hpp"

namespace olct {

enum class SolverKind { multi_olct, stolct, nonseparable, bandlimited };
SolverKind solver_from_name(const std::string& name);  // throws InvalidSpec
std::string solver_name(SolverKind kind);

/// Sampling layout for the bandlimited solver.
struct BandLayout {
    BandMode mode = BandMode::ft_band;
    double signal_band = 0.0;  ///< ft: plain-Fourier band; olct: transform-domain band
    double window_band = 0.0;  ///< ft mode: window band the shift spacing adapts to
    Grid u_grid;               ///< one magnitude sample set per grid frequency
    double vspan = 0.0;        ///< shift half-extent each set covers
    std::size_t radius = 64;   ///< cardinal-series truncation radius
};

/// A validated batch: which solver, its inputs, and the run grid
/// (matrix counts x noise levels x trials). Parsed from JSON by
/// experiment_config_from_json; see that function for the schema.
struct ExperimentConfig {
    std::string experiment_id;
    SolverKind solver = SolverKind::multi_olct;
    SignalSpec signal;
    SignalSpec window;  ///< stolct / nonseparable / bandlimited solvers
    bool has_window = false;
    std::vector<ParameterMatrix> matrices;
    std::vector<std::size_t> matrix_counts;  ///< prefix sizes to sweep (multi_olct)
    std::vector<double> noise_sigmas{0.0};   ///< relative sigma on |.|^2 data, >= 0
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    double floor = 1e-8;         ///< window-division floor (windowed solvers)
    double masked_limit = 0.95;  ///< masked-fraction tolerance (windowed solvers)
    BandLayout band;             ///< bandlimited solver layout
    std::string output_path;
};

/// Parses and validates a JSON config. Schema (defaults in parentheses):
///   {"experiment_id": str, "solver": "multi-olct"|"stolct"|"nonseparable"|
///    "bandlimited", "signal": signal spec, "window": signal spec (none),
///    "matrices": [[a,b,c,d,y0,w0], ...] or
///    "ratio_sweep": {"count", "start" (0), "step", "y0" (0), "w0" (0)},
///    "matrix_counts": [ints] (all matrices), "noise_sigmas": [reals >= 0]
///    ([0]), "trials": int (1), "seed": int (0), "floor" (1e-8),
///    "masked_limit" (0.95), "band": {"mode": "ft"|"olct", "signal_band",
///    "window_band", "u_grid": [start, step, count], "vspan", "radius" (64)},
///    "output_path": str}
/// A signal spec is {"kind": str, "length": int, "step": real, "sigma",
/// "center", "rate", "band", "gap", "seed"} with generator defaults. A ratio
/// sweep produces matrices (a = start + k*step, b = 1, c = a - 1, d = 1).
/// Throws InvalidSpec on any violation (including negative noise).
ExperimentConfig experiment_config_from_json(const std::string& text);

/// One synthesize-measure-recover pass: generates the signal (and window),
/// computes the solver's magnitude data under the first num_matrices
/// parameter matrices, adds clamped Gaussian noise on the squared magnitudes
/// (sd = noise_sigma * peak), and runs the solver against the generated
/// signal as ground truth. Deterministic given (cfg, num_matrices,
/// noise_sigma, noise_seed).
RecoveryReport run_single(const ExperimentConfig& cfg, std::size_t num_matrices,
                          double noise_sigma, std::uint64_t noise_seed);

/// One row of results.csv.
struct RunRecord {
    std::size_t num_matrices = 0;
    double noise_sigma = 0.0;
    std::size_t trial = 0;
    double residual = 0.0;  ///< NaN when failed
    double runtime_ms = 0.0;
    std::string verdict;  ///< report verdict, "ok", or the error kind when failed
    bool failed = false;
};

struct ExperimentResult {
    std::vector<RunRecord> records;  ///< run-grid order: count, then noise, then trial
    int exit_status = 0;             ///< 0 all runs succeeded, 1 some run failed
};

/// Executes the run grid on up to `workers` threads (each run is internally
/// deterministic; records land in grid order regardless of scheduling) and
/// writes into output_path: signal.json / window.json, results.csv with the
/// fixed column set (experiment_id, solver, N, num_matrices, noise_sigma,
/// residual, runtime_ms, verdict), median summaries residual_vs_noise.csv and
/// residual_vs_matrices.csv, and reports/report_n<i>_m<j>.json for each
/// cell's first trial. Failures are recorded per run without aborting the
/// batch. Everything except the runtime_ms column is bit-identical across
/// runs for identical configs and seeds.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers = 1);

}  // namespace olct
