#include "chaoskit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "chaoskit/common.hpp"
#include "chaoskit/ph0.hpp"

namespace chaoskit::experiments {

namespace {

constexpr double kBoundsTol = 1e-9;

std::string join17(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += fmt17(v[i]);
    }
    return out;
}

const char* averaging_name(exponents::KantzAveraging a) {
    return a == exponents::KantzAveraging::LogOfMean ? "log-of-mean" : "mean-of-log";
}

// Mean that is bit-exact when every sample is identical, so self-normalized
// rows (all trials deterministic) come out exactly 1.
double mean_of(const std::vector<double>& v) {
    bool all_equal = true;
    for (double x : v)
        if (x != v.front()) {
            all_equal = false;
            break;
        }
    if (all_equal) return v.front();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Per-(cell) trial accumulator for one aggregated output row. `raw` carries the
// un-normalized fit values when `values` holds normalized ones (noise ladder);
// `rep` keeps one representative fit so the row-mean bounds check can reuse the
// shared window and cloud size (identical across a row's trials by protocol).
struct Cell {
    std::vector<double> values;
    std::vector<double> raw;
    std::optional<exponents::ExponentFit> rep;
    int n_failed = 0;
};

SweepRow make_row(double param, double sigma, const std::string& kind, const Cell& c) {
    SweepRow row;
    row.param = param;
    row.sigma = sigma;
    row.kind = kind;
    row.n_trials = static_cast<int>(c.values.size());
    row.n_failed = c.n_failed;
    if (c.values.empty()) {
        row.mean = std::numeric_limits<double>::quiet_NaN();
        row.stddev = std::numeric_limits<double>::quiet_NaN();
    } else {
        row.mean = mean_of(c.values);
        row.stddev = sample_std(c.values, row.mean);
    }
    return row;
}

// A single trial fit outside the bound is flagged, never dropped: OLS on a
// curve that completes inside the fit window can overshoot the range-derived
// bound (by up to 1.5x for a step at window center) without any numerical
// fault, and excluding such trials would bias the aggregate.
void flag_trial_bounds(const exponents::ExponentFit& fit, const std::string& where,
                       std::vector<std::string>& failures) {
    exponents::BoundsCheck bc =
        exponents::check_bounds(fit, fit.n_contributing, kBoundsTol);
    if (!bc.ok)
        failures.push_back("note: " + where + ": " + bc.message +
                           "; value kept in aggregate");
}

// Row means are enforced: a mean outside the bound means the protocol itself is
// misconfigured (window past barcode completion), not one unlucky draw.
void ensure_row_bounds(const Cell& cell, double mean, const std::string& where) {
    if (!cell.rep) return;  // every trial failed; the row already reports that
    exponents::ExponentFit row_fit = *cell.rep;
    row_fit.value = mean;
    exponents::BoundsCheck bc =
        exponents::check_bounds(row_fit, row_fit.n_contributing, kBoundsTol);
    if (!bc.ok)
        throw numeric_error("persistence exponent row bound violated (" + where +
                            "): row mean " + bc.message);
}

}  // namespace

std::string SweepConfig::canonical() const {
    std::ostringstream s;
    s << "averaging = " << averaging_name(averaging) << '\n'
      << "base_x0 = " << join17(protocol.base_x0) << '\n'
      << "family = " << protocol.system.family_name() << '\n'
      << "grid = " << fmt17(protocol.grid.t0) << ' ' << fmt17(protocol.grid.dt) << ' '
      << protocol.grid.count << '\n'
      << "ic_jitter_std = " << fmt17(protocol.ic_jitter_std) << '\n'
      << "include_lyapunov = " << (include_lyapunov ? "true" : "false") << '\n'
      << "kantz_delta = " << fmt17(kantz_delta) << '\n'
      << "kantz_delta_c = " << fmt17(kantz_delta_c) << '\n'
      << "lyap_window = " << fmt17(lyap_window.lo) << ' ' << fmt17(lyap_window.hi) << '\n'
      << "master_seed = " << master_seed << '\n'
      << "min_neighbors = " << min_neighbors << '\n'
      << "noise_levels = " << join17(noise_levels) << '\n'
      << "param_values = " << join17(param_values) << '\n'
      << "pexp_window = " << fmt17(pexp_window.lo) << ' ' << fmt17(pexp_window.hi) << '\n'
      << "radii = " << join17(radii) << '\n'
      << "sep_std = " << fmt17(protocol.sep_std) << '\n'
      << "swept_param = " << swept_param << '\n'
      << "system_params = " << fmt17(protocol.system.get_param(
             protocol.system.family_name() == std::string("lorenz") ? "sigma" : "a"));
    // Record the full parameter set by name so two configs differing only in a
    // fixed (non-swept) parameter hash differently.
    if (protocol.system.family_name() == std::string("lorenz")) {
        s << ' ' << fmt17(protocol.system.get_param("beta")) << ' '
          << fmt17(protocol.system.get_param("rho"));
    } else {
        s << ' ' << fmt17(protocol.system.get_param("b")) << ' '
          << fmt17(protocol.system.get_param("c"));
    }
    s << '\n'
      << "t_max = " << t_max << '\n'
      << "theiler = " << theiler << '\n'
      << "trials = " << trials << '\n';
    return s.str();
}

std::string LadderConfig::canonical() const {
    std::ostringstream s;
    s << "averaging = " << averaging_name(averaging) << '\n'
      << "delta = " << fmt17(delta) << '\n'
      << "delta_c = " << fmt17(delta_c) << '\n'
      << "embed_m = " << embed.m << '\n'
      << "embed_tau = " << embed.tau << '\n'
      << "lyap_window = " << fmt17(lyap_window.lo) << ' ' << fmt17(lyap_window.hi) << '\n'
      << "master_seed = " << master_seed << '\n'
      << "min_neighbors = " << min_neighbors << '\n'
      << "noise_levels = " << join17(noise_levels) << '\n'
      << "pexp_window = " << fmt17(pexp_window.lo) << ' ' << fmt17(pexp_window.hi) << '\n'
      << "radii_count = " << radii_count << '\n'
      << "t_max = " << t_max << '\n'
      << "theiler = " << theiler << '\n'
      << "trials = " << trials << '\n';
    return s.str();
}

SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.param_values.empty()) throw param_error("sweep: empty parameter grid");
    if (cfg.noise_levels.empty()) throw param_error("sweep: empty noise level list");
    if (cfg.trials < 1) throw param_error("sweep: trials must be >= 1");
    if (cfg.radii.empty()) throw param_error("sweep: empty radius grid");
    if (cfg.kantz_delta < 0.0) throw param_error("sweep: kantz_delta must be >= 0");
    if (cfg.kantz_delta == 0.0 && cfg.kantz_delta_c <= 0.0)
        throw param_error("sweep: kantz_delta_c must be > 0 when kantz_delta is 0");
    for (double s : cfg.noise_levels)
        if (!(s >= 0.0)) throw param_error("sweep: noise levels must be >= 0");

    const std::size_t n_params = cfg.param_values.size();
    const std::size_t n_sigmas = cfg.noise_levels.size();

    SweepResult result;
    result.master_seed = cfg.master_seed;
    result.config_hash = fnv1a_hex(cfg.canonical());

    std::vector<std::vector<Cell>> lyap(n_params, std::vector<Cell>(n_sigmas));
    std::vector<std::vector<Cell>> pexp(n_params, std::vector<Cell>(n_sigmas));

    for (std::size_t pi = 0; pi < n_params; ++pi) {
        dynsys::SystemSpec spec = cfg.protocol.system;
        spec.set_param(cfg.swept_param, cfg.param_values[pi]);
        const std::string param_tag =
            cfg.swept_param + "=" + fmt17(cfg.param_values[pi]);

        for (int ti = 0; ti < cfg.trials; ++ti) {
            std::optional<dynsys::TrajectoryPair> pair;
            try {
                pair = dynsys::neighboring_pair(
                    spec, cfg.protocol.base_x0, cfg.protocol.grid,
                    cfg.protocol.ic_jitter_std, cfg.protocol.sep_std,
                    derive_seed(cfg.master_seed, pi, static_cast<std::uint64_t>(ti), 0));
            } catch (const numeric_error& e) {
                result.failures.push_back(param_tag + " trial=" + std::to_string(ti) +
                                          " pair generation: " + e.what());
                for (std::size_t si = 0; si < n_sigmas; ++si) {
                    if (cfg.include_lyapunov) ++lyap[pi][si].n_failed;
                    ++pexp[pi][si].n_failed;
                }
                continue;
            }

            for (std::size_t si = 0; si < n_sigmas; ++si) {
                const double sigma = cfg.noise_levels[si];
                const std::string tag = param_tag + " sigma=" + fmt17(sigma) +
                                        " trial=" + std::to_string(ti);
                dynsys::Trajectory px = dynsys::perturb_trajectory(
                    pair->x, sigma,
                    derive_seed(cfg.master_seed, pi, static_cast<std::uint64_t>(ti),
                                1000 + 2 * si));
                dynsys::Trajectory py = dynsys::perturb_trajectory(
                    pair->y, sigma,
                    derive_seed(cfg.master_seed, pi, static_cast<std::uint64_t>(ti),
                                1000 + 2 * si + 1));

                if (cfg.include_lyapunov) {
                    try {
                        exponents::NeighborhoodParams nb;
                        nb.delta = cfg.kantz_delta > 0.0
                                       ? cfg.kantz_delta
                                       : cfg.kantz_delta_c *
                                             ph0::cloud_diameter(px.data, px.size(), px.dim);
                        nb.min_neighbors = cfg.min_neighbors;
                        nb.theiler = cfg.theiler;
                        exponents::ExponentFit fit = exponents::kantz_lyapunov(
                            px, nb, cfg.t_max, cfg.lyap_window, cfg.averaging);
                        if (cfg.on_fit) cfg.on_fit(fit);
                        lyap[pi][si].values.push_back(fit.value);
                    } catch (const numeric_error& e) {
                        result.failures.push_back(tag + " lyapunov: " + e.what());
                        ++lyap[pi][si].n_failed;
                    }
                }

                std::optional<exponents::ExponentFit> fit;
                try {
                    dynsys::TrajectoryPair perturbed;
                    perturbed.x = std::move(px);
                    perturbed.y = std::move(py);
                    perturbed.initial_separation = pair->initial_separation;
                    fit = exponents::persistence_exponent_pair(perturbed, cfg.radii,
                                                               cfg.pexp_window);
                } catch (const numeric_error& e) {
                    result.failures.push_back(tag + " persistence_pair: " + e.what());
                    ++pexp[pi][si].n_failed;
                }
                if (fit) {
                    if (cfg.on_fit) cfg.on_fit(*fit);
                    flag_trial_bounds(*fit, tag, result.failures);
                    pexp[pi][si].values.push_back(fit->value);
                    if (!pexp[pi][si].rep) pexp[pi][si].rep = std::move(*fit);
                }
            }
        }
    }

    for (std::size_t pi = 0; pi < n_params; ++pi)
        for (std::size_t si = 0; si < n_sigmas; ++si) {
            if (cfg.include_lyapunov)
                result.rows.push_back(make_row(cfg.param_values[pi], cfg.noise_levels[si],
                                               "lyapunov", lyap[pi][si]));
            SweepRow row = make_row(cfg.param_values[pi], cfg.noise_levels[si],
                                    "persistence_pair", pexp[pi][si]);
            ensure_row_bounds(pexp[pi][si], row.mean,
                              cfg.swept_param + "=" + fmt17(row.param) +
                                  " sigma=" + fmt17(row.sigma));
            result.rows.push_back(std::move(row));
        }
    return result;
}

SweepResult run_noise_ladder(const embedding::Series& series, const LadderConfig& cfg) {
    if (cfg.noise_levels.empty()) throw param_error("noise ladder: empty noise level list");
    if (cfg.trials < 1) throw param_error("noise ladder: trials must be >= 1");
    if (cfg.radii_count < 2) throw param_error("noise ladder: radii_count must be >= 2");
    if (cfg.delta < 0.0) throw param_error("noise ladder: delta must be >= 0");
    if (cfg.delta == 0.0 && cfg.delta_c <= 0.0)
        throw param_error("noise ladder: delta_c must be > 0 when delta is 0");
    for (double s : cfg.noise_levels)
        if (!(s >= 0.0)) throw param_error("noise ladder: noise levels must be >= 0");

    std::vector<double> sigmas = cfg.noise_levels;
    sigmas.push_back(0.0);
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());

    SweepResult result;
    result.master_seed = cfg.master_seed;
    result.config_hash = fnv1a_hex(cfg.canonical());

    // delta and the radius grid are frozen from the clean embedding so every
    // noise level is measured with the same yardstick.
    dynsys::Trajectory base = embedding::sliding_window_embed(series, cfg.embed);
    const double diameter = ph0::cloud_diameter(base.data, base.size(), base.dim);
    if (diameter <= 0.0)
        throw numeric_error("noise ladder: clean embedding has zero diameter");
    const double delta = cfg.delta > 0.0 ? cfg.delta : cfg.delta_c * diameter;
    std::vector<double> radii(static_cast<std::size_t>(cfg.radii_count));
    for (std::size_t r = 0; r < radii.size(); ++r)
        radii[r] = delta * static_cast<double>(r) /
                   static_cast<double>(cfg.radii_count - 1);

    exponents::NeighborhoodParams nb;
    nb.delta = delta;
    nb.min_neighbors = cfg.min_neighbors;
    nb.theiler = cfg.theiler;

    exponents::ExponentFit lyap_base =
        exponents::kantz_lyapunov(base, nb, cfg.t_max, cfg.lyap_window, cfg.averaging);
    exponents::ExponentFit pexp_base =
        exponents::persistence_exponent_local(base, nb, radii, cfg.pexp_window);
    if (cfg.on_fit) {
        cfg.on_fit(lyap_base);
        cfg.on_fit(pexp_base);
    }
    {
        // The baseline IS the sigma = 0 row (single deterministic evaluation),
        // so its bound check is the row-level one and is fatal.
        exponents::BoundsCheck bc =
            exponents::check_bounds(pexp_base, pexp_base.n_contributing, kBoundsTol);
        if (!bc.ok)
            throw numeric_error(
                "persistence exponent row bound violated (sigma=0 baseline): " +
                bc.message);
    }
    if (lyap_base.value == 0.0)
        throw numeric_error("noise ladder: baseline Lyapunov exponent is 0, cannot normalize");
    if (pexp_base.value == 0.0)
        throw numeric_error(
            "noise ladder: baseline persistence exponent is 0, cannot normalize");

    // Clean-series scale for the noise law sigma * gamma.
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(series.size());
    double acc = 0.0;
    for (double v : series.values) acc += (v - mean) * (v - mean);
    const double gamma = std::sqrt(acc / static_cast<double>(series.size() - 1));

    for (std::size_t si = 0; si < sigmas.size(); ++si) {
        const double sigma = sigmas[si];
        Cell lyap_cell, pexp_cell;
        if (sigma == 0.0) {
            // Identity perturbation: one deterministic evaluation, exactly 1.
            lyap_cell.values.push_back(1.0);
            pexp_cell.values.push_back(1.0);
        } else {
            for (int ti = 0; ti < cfg.trials; ++ti) {
                std::mt19937_64 rng(
                    derive_seed(cfg.master_seed, si, static_cast<std::uint64_t>(ti), 0));
                std::normal_distribution<double> unit(0.0, 1.0);
                embedding::Series noisy = series;
                for (double& v : noisy.values) v += sigma * gamma * unit(rng);

                const std::string tag =
                    "sigma=" + fmt17(sigma) + " trial=" + std::to_string(ti);
                dynsys::Trajectory cloud;
                try {
                    cloud = embedding::sliding_window_embed(noisy, cfg.embed);
                } catch (const numeric_error& e) {
                    result.failures.push_back(tag + " embedding: " + e.what());
                    ++lyap_cell.n_failed;
                    ++pexp_cell.n_failed;
                    continue;
                }

                try {
                    exponents::ExponentFit fit = exponents::kantz_lyapunov(
                        cloud, nb, cfg.t_max, cfg.lyap_window, cfg.averaging);
                    if (cfg.on_fit) cfg.on_fit(fit);
                    lyap_cell.values.push_back(fit.value / lyap_base.value);
                } catch (const numeric_error& e) {
                    result.failures.push_back(tag + " lyapunov: " + e.what());
                    ++lyap_cell.n_failed;
                }

                std::optional<exponents::ExponentFit> fit;
                try {
                    fit = exponents::persistence_exponent_local(cloud, nb, radii,
                                                                cfg.pexp_window);
                } catch (const numeric_error& e) {
                    result.failures.push_back(tag + " persistence_local: " + e.what());
                    ++pexp_cell.n_failed;
                }
                if (fit) {
                    if (cfg.on_fit) cfg.on_fit(*fit);
                    flag_trial_bounds(*fit, tag, result.failures);
                    pexp_cell.values.push_back(fit->value / pexp_base.value);
                    pexp_cell.raw.push_back(fit->value);
                    if (!pexp_cell.rep) pexp_cell.rep = std::move(*fit);
                }
            }
            // Normalized row means cannot be bounds-checked directly; the raw
            // (pre-normalization) mean carries the check.
            if (!pexp_cell.raw.empty())
                ensure_row_bounds(pexp_cell, mean_of(pexp_cell.raw),
                                  "sigma=" + fmt17(sigma));
        }
        result.rows.push_back(make_row(sigma, sigma, "lyapunov", lyap_cell));
        result.rows.push_back(make_row(sigma, sigma, "persistence_local", pexp_cell));
    }
    return result;
}

void write_sweep_csv(const SweepResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << "param,sigma,kind,mean,std,n_trials,n_failed\n";
    for (const SweepRow& row : r.rows) {
        out << fmt17(row.param) << ',' << fmt17(row.sigma) << ',' << row.kind << ',';
        if (row.n_trials > 0)
            out << fmt17(row.mean) << ',' << fmt17(row.stddev);
        else
            out << ',';
        out << ',' << row.n_trials << ',' << row.n_failed << '\n';
    }
    if (!out) throw numeric_error("write failed: " + path);
}

void write_sweep_json(const SweepResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << "{\n  \"config_hash\": \"" << r.config_hash << "\",\n"
        << "  \"master_seed\": " << r.master_seed << ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const SweepRow& row = r.rows[i];
        out << "    {\"param\": " << fmt17(row.param) << ", \"sigma\": " << fmt17(row.sigma)
            << ", \"kind\": \"" << row.kind << "\", \"mean\": "
            << (row.n_trials > 0 ? fmt17(row.mean) : "null") << ", \"std\": "
            << (row.n_trials > 0 ? fmt17(row.stddev) : "null")
            << ", \"n_trials\": " << row.n_trials << ", \"n_failed\": " << row.n_failed
            << '}' << (i + 1 < r.rows.size() ? "," : "") << '\n';
    }
    out << "  ],\n  \"failures\": [";
    for (std::size_t i = 0; i < r.failures.size(); ++i) {
        std::string escaped;
        for (char c : r.failures[i]) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out << (i ? ", " : "") << '"' << escaped << '"';
    }
    out << "]\n}\n";
    if (!out) throw numeric_error("write failed: " + path);
}

std::vector<double> parse_range(const std::string& text) {
    std::size_t c1 = text.find(':');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        text.find(':', c2 + 1) != std::string::npos)
        throw param_error("range must be start:step:stop, got '" + text + "'");
    auto num = [&](const std::string& part) {
        const char* s = part.c_str();
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end == s || *end != '\0')
            throw param_error("range: cannot parse '" + part + "' in '" + text + "'");
        return v;
    };
    double start = num(text.substr(0, c1));
    double step = num(text.substr(c1 + 1, c2 - c1 - 1));
    double stop = num(text.substr(c2 + 1));
    if (step == 0.0) throw param_error("range: step must be nonzero in '" + text + "'");
    double span = (stop - start) / step;
    if (span < -0.5) throw param_error("range: step moves away from stop in '" + text + "'");
    auto count = static_cast<std::size_t>(std::llround(std::max(span, 0.0))) + 1;
    if (count > 10'000'000) throw param_error("range: too many values in '" + text + "'");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = start + static_cast<double>(i) * step;
    return out;
}

namespace {

std::vector<double> numbers_or_range(const config::Table& t, const std::string& key) {
    // Accepts either an explicit array ([0, 0.1]) or a range string ("0:0.1:8").
    if (!t.has(key)) throw param_error("config: missing key '" + key + "'");
    if (t.entries().at(key).kind == config::Value::Kind::String)
        return parse_range(t.get_string(key));
    return t.get_double_array(key);
}

std::vector<double> numbers_or_range_or(const config::Table& t, const std::string& key,
                                        const std::vector<double>& def) {
    return t.has(key) ? numbers_or_range(t, key) : def;
}

exponents::FitWindow window_or(const config::Table& t, const std::string& key,
                               exponents::FitWindow def) {
    if (!t.has(key)) return def;
    std::vector<double> v = t.get_double_array(key);
    if (v.size() != 2)
        throw param_error("config: key '" + key + "' must be a 2-element [lo, hi] array");
    return {v[0], v[1]};
}

exponents::KantzAveraging averaging_or(const config::Table& t, const std::string& key) {
    std::string name = t.get_string_or(key, "log-of-mean");
    if (name == "log-of-mean") return exponents::KantzAveraging::LogOfMean;
    if (name == "mean-of-log") return exponents::KantzAveraging::MeanOfLog;
    throw param_error("config: key '" + key +
                      "' must be \"log-of-mean\" or \"mean-of-log\", got \"" + name + "\"");
}

}  // namespace

SweepConfig sweep_config_from_toml(const config::Table& t) {
    SweepConfig cfg;
    std::string family = t.get_string("system.family");
    const bool lorenz = family == "lorenz";
    if (!lorenz && family != "rossler")
        throw param_error("config: system.family must be \"lorenz\" or \"rossler\", got \"" +
                          family + "\"");

    if (lorenz) {
        cfg.protocol.system = dynsys::SystemSpec::lorenz(
            t.get_double_or("system.rho", 28.0), t.get_double_or("system.sigma", 10.0),
            t.get_double_or("system.beta", 8.0 / 3.0));
        cfg.protocol.base_x0 = {-13.0, -14.0, 47.0};
        cfg.protocol.grid = {0.0, 0.01, 2001};
        cfg.protocol.ic_jitter_std = 0.1;
        cfg.swept_param = "rho";
        // Radius-scale grid: merge radii are half the pairwise distances, so the
        // published diameter-scale grid {0, 0.1, ..., 8} / window [0, 6] maps to
        // half these values; the measured complexes are identical.
        cfg.radii = parse_range("0:0.05:4");
        cfg.pexp_window = {0.0, 3.0};
        cfg.t_max = 7;
        cfg.lyap_window = {0.0, 7.0};
    } else {
        cfg.protocol.system = dynsys::SystemSpec::rossler(
            t.get_double_or("system.a", 0.4), t.get_double_or("system.b", 2.0),
            t.get_double_or("system.c", 4.0));
        cfg.protocol.base_x0 = {-0.4, 0.6, 1.0};
        cfg.protocol.grid = {0.0, 1.0 / 15.0, 15001};
        cfg.protocol.ic_jitter_std = 0.001;
        cfg.swept_param = "a";
        // Same radius-scale halving as the Lorenz defaults.
        cfg.radii = parse_range("0:0.0005:0.25");
        cfg.pexp_window = {0.0, 0.075};
        cfg.t_max = 100;
        cfg.lyap_window = {0.0, 100.0};
    }

    if (t.has("system.x0")) {
        cfg.protocol.base_x0 = t.get_double_array("system.x0");
        if (cfg.protocol.base_x0.size() != 3)
            throw param_error("config: system.x0 must have 3 entries");
    }
    cfg.protocol.grid.t0 = t.get_double_or("system.t0", cfg.protocol.grid.t0);
    cfg.protocol.grid.dt = t.get_double_or("system.dt", cfg.protocol.grid.dt);
    cfg.protocol.grid.count = static_cast<std::size_t>(
        t.get_uint_or("system.count", cfg.protocol.grid.count));
    cfg.protocol.ic_jitter_std =
        t.get_double_or("system.ic_jitter_std", cfg.protocol.ic_jitter_std);
    cfg.protocol.sep_std = t.get_double_or("system.sep_std", cfg.protocol.sep_std);

    if (t.has("sweep.param")) cfg.swept_param = t.get_string("sweep.param");
    cfg.param_values = numbers_or_range(t, "sweep.values");
    cfg.noise_levels = numbers_or_range_or(t, "sweep.noise", {0.0});
    cfg.trials = static_cast<int>(t.get_int_or("sweep.trials", cfg.trials));
    cfg.master_seed = t.get_uint_or("sweep.master_seed", cfg.master_seed);
    cfg.include_lyapunov = t.get_bool_or("sweep.include_lyapunov", cfg.include_lyapunov);

    cfg.radii = numbers_or_range_or(t, "fit.radii", cfg.radii);
    cfg.pexp_window = window_or(t, "fit.pexp_window", cfg.pexp_window);
    cfg.t_max = static_cast<int>(t.get_int_or("fit.t_max", cfg.t_max));
    cfg.lyap_window = window_or(t, "fit.lyap_window",
                                {0.0, static_cast<double>(cfg.t_max)});
    cfg.kantz_delta = t.get_double_or("fit.kantz_delta", cfg.kantz_delta);
    cfg.kantz_delta_c = t.get_double_or("fit.kantz_delta_c", cfg.kantz_delta_c);
    cfg.min_neighbors = static_cast<int>(t.get_int_or("fit.min_neighbors", cfg.min_neighbors));
    cfg.theiler = static_cast<int>(t.get_int_or("fit.theiler", cfg.theiler));
    cfg.averaging = averaging_or(t, "fit.averaging");
    return cfg;
}

LadderConfig ladder_config_from_toml(const config::Table& t) {
    LadderConfig cfg;
    cfg.embed.tau = static_cast<int>(t.get_int("embed.tau"));
    cfg.embed.m = static_cast<int>(t.get_int("embed.m"));
    cfg.noise_levels = numbers_or_range(t, "ladder.noise");
    cfg.trials = static_cast<int>(t.get_int_or("ladder.trials", cfg.trials));
    cfg.master_seed = t.get_uint_or("ladder.master_seed", cfg.master_seed);
    cfg.delta = t.get_double_or("ladder.delta", cfg.delta);
    cfg.delta_c = t.get_double_or("ladder.delta_c", cfg.delta_c);
    cfg.radii_count = static_cast<int>(t.get_int_or("ladder.radii_count", cfg.radii_count));
    cfg.pexp_window = window_or(t, "fit.pexp_window", cfg.pexp_window);
    cfg.t_max = static_cast<int>(t.get_int_or("fit.t_max", cfg.t_max));
    cfg.lyap_window = window_or(t, "fit.lyap_window", cfg.lyap_window);
    cfg.min_neighbors = static_cast<int>(t.get_int_or("fit.min_neighbors", cfg.min_neighbors));
    cfg.theiler = static_cast<int>(t.get_int_or("fit.theiler", cfg.theiler));
    cfg.averaging = averaging_or(t, "fit.averaging");
    return cfg;
}

}  // namespace chaoskit::experiments
