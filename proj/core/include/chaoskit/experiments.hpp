#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chaoskit/config.hpp"
#include "chaoskit/dynsys.hpp"
#include "chaoskit/embedding.hpp"
#include "chaoskit/exponents.hpp"

namespace chaoskit::experiments {

/// How one neighboring-trajectory pair is produced: jitter the base initial
/// condition, offset the twin, integrate both on the grid.
struct PairProtocol {
    dynsys::SystemSpec system;
    std::vector<double> base_x0;
    dynsys::TimeGrid grid;
    double ic_jitter_std = 0.1;
    double sep_std = 1e-4;
};

/// Full description of a parameter sweep: for each value of swept_param, each
/// noise level sigma, and each trial, generate a pair (seeded by (param index,
/// trial index) only, so every sigma sees the same underlying pair), perturb both
/// trajectories at sigma, and estimate the Lyapunov exponent (Kantz, on the
/// pair's first perturbed trajectory) and the pair persistence exponent (on the
/// union cloud of both perturbed trajectories).
struct SweepConfig {
    PairProtocol protocol;
    std::string swept_param;  // parameter name ("rho", "a", ...)
    std::vector<double> param_values;
    std::vector<double> noise_levels;  // sigma >= 0
    int trials = 5;
    std::uint64_t master_seed = 1;

    std::vector<double> radii;  // filtration radii for the pair exponent
    exponents::FitWindow pexp_window{0.0, 3.0};

    int t_max = 7;
    exponents::FitWindow lyap_window{0.0, 7.0};
    /// Kantz neighborhood radius; 0 selects kantz_delta_c * diameter of the
    /// trajectory the estimator runs on (recomputed per trial).
    double kantz_delta = 0.0;
    double kantz_delta_c = 0.02;
    int min_neighbors = 1;
    int theiler = 0;
    exponents::KantzAveraging averaging = exponents::KantzAveraging::LogOfMean;
    bool include_lyapunov = true;

    /// Observer called with every fit the sweep produces (both kinds), in
    /// deterministic order, before aggregation. Not a config value: it does not
    /// enter canonical() or the provenance hash.
    std::function<void(const exponents::ExponentFit&)> on_fit;

    /// Canonical key = value rendering of every config field, used for the
    /// provenance hash; independent of the source config file's formatting.
    std::string canonical() const;
};

/// One aggregated row. mean/stddev are NaN when every trial failed (serialized
/// as empty CSV cells / JSON null); stddev is the unbiased (n-1) form, 0 for a
/// single trial.
struct SweepRow {
    double param = 0.0;
    double sigma = 0.0;
    std::string kind;  // "lyapunov" | "persistence_pair" | "persistence_local"
    double mean = 0.0;
    double stddev = 0.0;
    int n_trials = 0;  // successful trials aggregated into mean/stddev
    int n_failed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // fixed order: param, then sigma, then kind
    std::string config_hash;    // FNV-1a of the canonical config text
    std::uint64_t master_seed = 0;
    /// One message per failed trial, plus "note:" entries flagging individual
    /// fits whose unconstrained slope strayed outside the theoretical bound
    /// (such fits stay in the aggregate; only row means are enforced).
    std::vector<std::string> failures;
};

/// Runs the sweep. Deterministic given the config: trial t of parameter index p
/// draws its pair from seed derive_seed(master, p, t, 0) and its two perturbation
/// streams (per sigma index s) from derive_seed(master, p, t, 1000 + 2s) and
/// derive_seed(master, p, t, 1000 + 2s + 1). A trial that throws numeric_error is
/// recorded in failures and excluded from its row; a pair-generation failure
/// fails the trial for both kinds. Bounds policy: a single trial fit outside its
/// theoretical bound is flagged in failures but kept in the aggregate (OLS on a
/// curve that completes inside the fit window can overshoot the bound without
/// any numerical fault); every persistence row's MEAN must satisfy the bound to
/// tolerance 1e-9 or the run aborts with numeric_error and diagnostics.
SweepResult run_sweep(const SweepConfig& cfg);

/// Noise ladder over a scalar series: the clean series is embedded once at
/// (tau, m); delta (and with it the radius grid, linspace(0, delta, radii_count))
/// is frozen from that clean embedding as delta_c * diameter unless delta > 0 is
/// given. Baseline exponents come from the clean embedding; each sigma > 0 row
/// averages `trials` perturbed copies (series + N(0, sigma*gamma), gamma the
/// clean series' n-1 standard deviation, seed derive_seed(master, s, t, 0)),
/// re-embedded and estimated with the frozen delta, radii, and windows. Reported
/// means and stddevs are normalized by the baseline value of their kind, so the
/// sigma = 0 row (evaluated once; the perturbation is the identity there) is
/// exactly 1. Noise levels are sorted, deduplicated, and always include 0.
/// A zero baseline value cannot be normalized and is a numeric_error, as is an
/// empty noise list (param_error). Kinds: "lyapunov", "persistence_local".
struct LadderConfig {
    std::vector<double> noise_levels;  // sigma >= 0; 0 is added if absent
    int trials = 5;
    std::uint64_t master_seed = 1;
    embedding::EmbeddingParams embed;
    double delta = 0.0;  // 0 selects delta_c * clean-embedding diameter
    double delta_c = 0.07;
    int radii_count = 100;
    exponents::FitWindow pexp_window{7.0, 13.0};  // absolute radius window
    int t_max = 100;
    exponents::FitWindow lyap_window{40.0, 80.0};
    int min_neighbors = 1;
    int theiler = 0;
    exponents::KantzAveraging averaging = exponents::KantzAveraging::LogOfMean;

    /// Observer called with every fit the ladder produces (baselines included),
    /// in deterministic order. Not part of canonical() or the provenance hash.
    std::function<void(const exponents::ExponentFit&)> on_fit;

    std::string canonical() const;
};

/// Bounds policy matches run_sweep: individual trial fits outside the bound are
/// flagged but kept; each persistence row's mean (un-normalized, i.e. mean of
/// the raw trial values before dividing by the baseline) must satisfy the bound
/// or the run aborts.
SweepResult run_noise_ladder(const embedding::Series& series, const LadderConfig& cfg);

/// CSV with header param,sigma,kind,mean,std,n_trials,n_failed; all-failed rows
/// leave mean/std empty. 17 significant digits; byte-identical across re-runs of
/// the same config and seed.
void write_sweep_csv(const SweepResult& r, const std::string& path);

/// JSON object {"config_hash", "master_seed", "rows": [...], "failures": [...]};
/// all-failed rows carry null mean/std.
void write_sweep_json(const SweepResult& r, const std::string& path);

/// "start:step:stop" -> {start, start+step, ..., stop}; the count is
/// round((stop-start)/step) + 1 and values are generated by index, so
/// "0:0.1:8" has exactly 81 entries. step must move toward stop.
std::vector<double> parse_range(const std::string& text);

/// Reads a sweep config from parsed TOML-style keys (see the CLI documentation
/// for the schema). Missing optional keys fall back to the defaults above.
SweepConfig sweep_config_from_toml(const config::Table& t);
LadderConfig ladder_config_from_toml(const config::Table& t);

}  // namespace chaoskit::experiments
