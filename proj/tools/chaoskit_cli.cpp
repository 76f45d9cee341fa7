// Command-line front end: simulation, embedding, denoising, barcodes, Betti
// curves, both exponent estimators, neighborhood-scale scans, parameter sweeps,
// and noise ladders. Exit codes: 0 success, 1 bad input, 2 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoskit/common.hpp"
#include "chaoskit/config.hpp"
#include "chaoskit/dynsys.hpp"
#include "chaoskit/embedding.hpp"
#include "chaoskit/experiments.hpp"
#include "chaoskit/exponents.hpp"
#include "chaoskit/ph0.hpp"
#include "chaoskit/series.hpp"
#include "chaoskit/svg.hpp"
#include "chaoskit/trajectory.hpp"

namespace {

using namespace chaoskit;

std::vector<double> parse_triple(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stod(cur));
    if (out.size() != 3) throw param_error("expected three comma-separated values: " + text);
    return out;
}

exponents::FitWindow parse_window(const std::string& text) {
    std::size_t c = text.find(':');
    if (c == std::string::npos || text.find(':', c + 1) != std::string::npos)
        throw param_error("window must be lo:hi, got '" + text + "'");
    try {
        return {std::stod(text.substr(0, c)), std::stod(text.substr(c + 1))};
    } catch (const std::exception&) {
        throw param_error("window must be lo:hi with numeric bounds, got '" + text + "'");
    }
}

exponents::KantzAveraging parse_averaging(const std::string& name) {
    return name == "mean-of-log" ? exponents::KantzAveraging::MeanOfLog
                                 : exponents::KantzAveraging::LogOfMean;
}

// Point-cloud input shared by the estimator commands: either an embedded/state
// cloud CSV, or a scalar series CSV embedded on the fly when --tau/--m are given.
struct CloudInput {
    std::string path;
    int tau = 0;
    int m = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--in", path, "input CSV (point cloud, or series with --tau/--m)")
            ->required();
        cmd->add_option("--tau", tau, "delay (treat --in as a scalar series)");
        cmd->add_option("--m", m, "embedding dimension (treat --in as a scalar series)");
    }

    dynsys::Trajectory load() const {
        if (tau != 0 || m != 0) {
            if (tau <= 0 || m <= 0)
                throw param_error("--tau and --m must both be positive when embedding");
            embedding::EmbeddingParams p;
            p.tau = tau;
            p.m = m;
            return embedding::sliding_window_embed(embedding::load_series_csv(path), p);
        }
        return dynsys::load_trajectory_csv(path);
    }
};

void write_fit_svg(const exponents::ExponentFit& fit, const std::string& path,
                   const std::string& xlabel) {
    std::vector<double> in_x, in_y;
    exponents::SlopeFit line = exponents::fit_slope(fit.abscissa, fit.ordinate, fit.window);
    for (std::size_t i = 0; i < fit.abscissa.size(); ++i)
        if (fit.abscissa[i] >= fit.window.lo && fit.abscissa[i] <= fit.window.hi) {
            in_x.push_back(fit.abscissa[i]);
            in_y.push_back(line.intercept + line.slope * fit.abscissa[i]);
        }
    svg::write_line_plot(
        {{fit.kind + " curve", fit.abscissa, fit.ordinate}, {"window fit", in_x, in_y}},
        {fit.kind + " = " + fmt17(fit.value), xlabel, "log divergence"}, path);
}

void write_sweep_svg(const experiments::SweepResult& r, const std::string& path,
                     const std::string& xlabel) {
    // One line per (kind, sigma) combination, in first-appearance order.
    std::vector<svg::LineSeries> series;
    for (const experiments::SweepRow& row : r.rows) {
        std::string label = row.kind + " sigma=" + fmt17(row.sigma);
        svg::LineSeries* s = nullptr;
        for (svg::LineSeries& cand : series)
            if (cand.label == label) s = &cand;
        if (!s) {
            series.push_back({label, {}, {}});
            s = &series.back();
        }
        s->x.push_back(row.param);
        s->y.push_back(row.n_trials > 0 ? row.mean
                                        : std::numeric_limits<double>::quiet_NaN());
    }
    svg::write_line_plot(series, {"", xlabel, "exponent"}, path);
}

config::Table load_table(const std::string& path) { return config::load_config(path); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaos quantification toolkit: persistence and Lyapunov exponents"};
    app.require_subcommand(1);

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "integrate a Lorenz or Rossler trajectory");
    std::string sim_system = "lorenz", sim_x0, sim_out;
    double sim_rho = 28.0, sim_sigma = 10.0, sim_beta = 8.0 / 3.0;
    double sim_a = 0.4, sim_b = 2.0, sim_c = 4.0;
    double sim_t = 20.0, sim_dt = 0.01, sim_t0 = 0.0;
    std::size_t sim_count = 0;
    sim->add_option("--system", sim_system, "lorenz or rossler")
        ->check(CLI::IsMember({"lorenz", "rossler"}));
    sim->add_option("--rho", sim_rho, "Lorenz rho");
    sim->add_option("--sigma", sim_sigma, "Lorenz sigma");
    sim->add_option("--beta", sim_beta, "Lorenz beta");
    sim->add_option("--a", sim_a, "Rossler a");
    sim->add_option("--b", sim_b, "Rossler b");
    sim->add_option("--c", sim_c, "Rossler c");
    sim->add_option("--x0", sim_x0, "initial state as x,y,z (default per system)");
    sim->add_option("--t", sim_t, "total integration time");
    sim->add_option("--dt", sim_dt, "time step");
    sim->add_option("--t0", sim_t0, "initial time");
    sim->add_option("--count", sim_count, "sample count (overrides --t)");
    sim->add_option("--out", sim_out, "output trajectory CSV")->required();

    // ---- embed ----
    auto* emb = app.add_subcommand("embed", "delay-embed a scalar series");
    std::string emb_in, emb_out;
    int emb_tau = 0, emb_m = 0, emb_max_tau = 50, emb_max_m = 10, emb_bins = 0;
    bool emb_auto = false;
    emb->add_option("--in", emb_in, "input series CSV")->required();
    emb->add_option("--tau", emb_tau, "delay in samples");
    emb->add_option("--m", emb_m, "embedding dimension (coordinates per point)");
    emb->add_flag("--auto", emb_auto,
                  "choose tau (mutual-information minimum) and m (Cao saturation)");
    emb->add_option("--max-tau", emb_max_tau, "largest delay probed by --auto");
    emb->add_option("--max-m", emb_max_m, "largest dimension probed by --auto");
    emb->add_option("--bins", emb_bins, "mutual-information bins (0 = ceil(sqrt(n)))");
    emb->add_option("--out", emb_out, "output point-cloud CSV")->required();

    // ---- denoise ----
    auto* den = app.add_subcommand("denoise", "local-projection noise reduction");
    std::string den_in, den_out;
    int den_dim = 3, den_proj = 2, den_iter = 1;
    double den_radius = 0.0;
    den->add_option("--in", den_in, "input series CSV")->required();
    den->add_option("--embed-dim", den_dim, "embedding dimension of the filter");
    den->add_option("--radius", den_radius, "neighborhood radius (0 = 5% of diameter)");
    den->add_option("--projection-dim", den_proj, "retained principal directions");
    den->add_option("--iterations", den_iter, "number of filter passes");
    den->add_option("--out", den_out, "output series CSV")->required();

    // ---- barcode ----
    auto* bar = app.add_subcommand("barcode", "degree-0 persistence barcode of a cloud");
    CloudInput bar_in;
    std::string bar_out;
    bar_in.add_flags(bar);
    bar->add_option("--out", bar_out, "output barcode JSON")->required();

    // ---- betti-curve ----
    auto* bet = app.add_subcommand("betti-curve", "component counts over a radius grid");
    CloudInput bet_in;
    std::string bet_radii, bet_out, bet_svg;
    bet_in.add_flags(bet);
    bet->add_option("--radii", bet_radii, "radius grid start:step:stop")->required();
    bet->add_option("--out", bet_out, "output CSV (epsilon,betti0)")->required();
    bet->add_option("--svg", bet_svg, "optional line-plot SVG");

    // ---- lyapunov ----
    auto* lya = app.add_subcommand("lyapunov", "Kantz divergence-curve estimator");
    CloudInput lya_in;
    std::string lya_window, lya_out, lya_svg, lya_avg = "log-of-mean";
    double lya_delta = 0.0, lya_delta_c = 0.05;
    int lya_tmax = 75, lya_minn = 1, lya_theiler = 0;
    lya_in.add_flags(lya);
    lya->add_option("--delta", lya_delta, "neighborhood radius (overrides --delta-c)");
    lya->add_option("--delta-c", lya_delta_c, "radius as a fraction of cloud diameter");
    lya->add_option("--t-max", lya_tmax, "curve length in samples");
    lya->add_option("--window", lya_window, "fit window lo:hi (default 0:t-max)");
    lya->add_option("--min-neighbors", lya_minn, "minimum neighbors per anchor");
    lya->add_option("--theiler", lya_theiler, "temporal exclusion window");
    lya->add_option("--averaging", lya_avg, "log-of-mean or mean-of-log")
        ->check(CLI::IsMember({"log-of-mean", "mean-of-log"}));
    lya->add_option("--out", lya_out, "output fit JSON")->required();
    lya->add_option("--svg", lya_svg, "optional divergence-curve SVG");

    // ---- pexp ----
    auto* pex = app.add_subcommand("pexp", "local persistence exponent of one cloud");
    CloudInput pex_in;
    std::string pex_window, pex_frac = "0.2:0.55", pex_out, pex_svg;
    double pex_delta = 0.0, pex_delta_c = 0.07;
    int pex_radii = 100;
    pex_in.add_flags(pex);
    pex->add_option("--delta", pex_delta, "neighborhood radius (overrides --delta-c)");
    pex->add_option("--delta-c", pex_delta_c, "radius as a fraction of cloud diameter");
    pex->add_option("--radii-count", pex_radii, "filtration radii on [0, delta]");
    pex->add_option("--window", pex_window, "absolute fit window lo:hi");
    pex->add_option("--window-frac", pex_frac, "fit window as fractions of delta");
    pex->add_option("--out", pex_out, "output fit JSON")->required();
    pex->add_option("--svg", pex_svg, "optional curve SVG");

    // ---- pexp-pair ----
    auto* pp = app.add_subcommand("pexp-pair",
                                  "pair persistence exponent (direct or config sweep)");
    std::string pp_x, pp_y, pp_radii, pp_window = "0:6", pp_config, pp_out, pp_csv;
    pp->add_option("--x", pp_x, "first trajectory CSV");
    pp->add_option("--y", pp_y, "second trajectory CSV");
    pp->add_option("--radii", pp_radii, "radius grid start:step:stop");
    pp->add_option("--window", pp_window, "fit window lo:hi");
    pp->add_option("--config", pp_config, "sweep config file (persistence rows only)");
    pp->add_option("--out", pp_out, "output JSON")->required();
    pp->add_option("--csv", pp_csv, "also write sweep rows CSV (config mode)");

    // ---- sweep ----
    auto* swp = app.add_subcommand("sweep", "parameter sweep over neighboring pairs");
    std::string swp_config, swp_out, swp_json, swp_svg;
    std::optional<int> swp_trials;
    std::optional<std::uint64_t> swp_seed;
    swp->add_option("--config", swp_config, "sweep config file")->required();
    swp->add_option("--trials", swp_trials, "override trials");
    swp->add_option("--seed", swp_seed, "override master seed");
    swp->add_option("--out", swp_out, "output rows CSV")->required();
    swp->add_option("--json", swp_json, "optional result JSON");
    swp->add_option("--svg", swp_svg, "optional mean-vs-parameter SVG");

    // ---- noise-ladder ----
    auto* lad = app.add_subcommand("noise-ladder",
                                   "normalized exponents of a series under rising noise");
    std::string lad_config, lad_in, lad_out, lad_json, lad_svg;
    std::optional<int> lad_trials;
    std::optional<std::uint64_t> lad_seed;
    lad->add_option("--config", lad_config, "ladder config file")->required();
    lad->add_option("--in", lad_in, "input series CSV")->required();
    lad->add_option("--trials", lad_trials, "override trials");
    lad->add_option("--seed", lad_seed, "override master seed");
    lad->add_option("--out", lad_out, "output rows CSV")->required();
    lad->add_option("--json", lad_json, "optional result JSON");
    lad->add_option("--svg", lad_svg, "optional normalized-mean SVG");

    // ---- delta-scan ----
    auto* dsc = app.add_subcommand("delta-scan",
                                   "stability scan of both exponents over delta = c*D");
    CloudInput dsc_in;
    std::string dsc_grid = "0.01:0.01:0.2", dsc_frac = "0.2:0.55", dsc_window, dsc_out,
                dsc_svg, dsc_avg = "log-of-mean";
    double dsc_tol = 0.05;
    int dsc_tmax = 75, dsc_radii = 100, dsc_minn = 1, dsc_theiler = 0;
    dsc_in.add_flags(dsc);
    dsc->add_option("--c-grid", dsc_grid, "candidate c values start:step:stop");
    dsc->add_option("--stability-tol", dsc_tol, "max relative step inside a stable run");
    dsc->add_option("--t-max", dsc_tmax, "Kantz curve length");
    dsc->add_option("--lyap-window", dsc_window, "Kantz fit window lo:hi (default 0:t-max)");
    dsc->add_option("--radii-count", dsc_radii, "filtration radii per candidate");
    dsc->add_option("--pexp-frac", dsc_frac, "persistence window as fractions of delta");
    dsc->add_option("--min-neighbors", dsc_minn, "minimum neighbors per anchor");
    dsc->add_option("--theiler", dsc_theiler, "temporal exclusion window");
    dsc->add_option("--averaging", dsc_avg, "log-of-mean or mean-of-log")
        ->check(CLI::IsMember({"log-of-mean", "mean-of-log"}));
    dsc->add_option("--out", dsc_out, "output scan CSV")->required();
    dsc->add_option("--svg", dsc_svg, "optional exponents-vs-c SVG");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(sim)) {
            dynsys::SystemSpec spec =
                sim_system == "lorenz"
                    ? dynsys::SystemSpec::lorenz(sim_rho, sim_sigma, sim_beta)
                    : dynsys::SystemSpec::rossler(sim_a, sim_b, sim_c);
            std::vector<double> x0 =
                !sim_x0.empty() ? parse_triple(sim_x0)
                : sim_system == "lorenz" ? std::vector<double>{-13.0, -14.0, 47.0}
                                         : std::vector<double>{-0.4, 0.6, 1.0};
            if (sim_dt <= 0.0) throw param_error("--dt must be > 0");
            dynsys::TimeGrid grid;
            grid.t0 = sim_t0;
            grid.dt = sim_dt;
            grid.count = sim_count > 0
                             ? sim_count
                             : static_cast<std::size_t>(std::llround(sim_t / sim_dt)) + 1;
            dynsys::Trajectory tr = dynsys::integrate(spec, x0, grid);
            dynsys::save_trajectory_csv(tr, sim_out);
            std::cout << "wrote " << sim_out << ": " << spec.family_name()
                      << " trajectory, " << tr.size() << " points, dt=" << fmt17(grid.dt)
                      << "\n";
        } else if (app.got_subcommand(emb)) {
            embedding::Series s = embedding::load_series_csv(emb_in);
            if (emb_auto) {
                embedding::DelaySelection ds =
                    embedding::select_delay_ami(s, emb_max_tau, emb_bins);
                emb_tau = ds.tau;
                if (ds.warning)
                    std::cerr << "warning: no reliable mutual-information minimum; "
                                 "using tau="
                              << ds.tau << "\n";
                embedding::DimSelection dim =
                    embedding::select_dim_fnn(s, emb_tau, emb_max_m);
                emb_m = dim.m;
                if (dim.warning)
                    std::cerr << "warning: embedding-dimension saturation not reached "
                                 "or series looks like noise; using m="
                              << dim.m << "\n";
            }
            if (emb_tau <= 0 || emb_m <= 0)
                throw param_error("give --tau and --m, or --auto");
            embedding::EmbeddingParams p;
            p.tau = emb_tau;
            p.m = emb_m;
            dynsys::Trajectory cloud = embedding::sliding_window_embed(s, p);
            dynsys::save_trajectory_csv(cloud, emb_out);
            std::cout << "wrote " << emb_out << ": " << cloud.size() << " points in R^"
                      << cloud.dim << " (tau=" << emb_tau << ", m=" << emb_m << ")\n";
        } else if (app.got_subcommand(den)) {
            embedding::Series s = embedding::load_series_csv(den_in);
            double radius = den_radius > 0.0
                                ? den_radius
                                : embedding::default_denoise_radius(s, den_dim);
            embedding::Series out =
                embedding::local_projection_denoise(s, den_dim, radius, den_proj, den_iter);
            embedding::save_series_csv(out, den_out);
            std::cout << "wrote " << den_out << ": " << out.size()
                      << " samples, radius=" << fmt17(radius) << ", " << den_iter
                      << " pass(es)\n";
        } else if (app.got_subcommand(bar)) {
            dynsys::Trajectory cloud = bar_in.load();
            ph0::Barcode0 bc = ph0::barcode0(cloud);
            ph0::save_barcode_json(bc, bar_out);
            std::cout << "wrote " << bar_out << ": " << bc.n_bars()
                      << " bars from " << bc.n_points << " points, largest finite death="
                      << fmt17(bc.deaths.empty() ? 0.0 : bc.deaths.back()) << "\n";
        } else if (app.got_subcommand(bet)) {
            dynsys::Trajectory cloud = bet_in.load();
            std::vector<double> radii = experiments::parse_range(bet_radii);
            ph0::BettiCurve curve = ph0::betti_curve(cloud, radii);
            ph0::save_betti_csv(curve, bet_out);
            if (!bet_svg.empty()) {
                std::vector<double> counts(curve.counts.begin(), curve.counts.end());
                svg::write_line_plot({{"betti0", curve.radii, counts}},
                                     {"", "epsilon", "components"}, bet_svg);
            }
            std::cout << "wrote " << bet_out << ": " << curve.radii.size()
                      << " radii, betti0 " << curve.counts.front() << " -> "
                      << curve.counts.back() << "\n";
        } else if (app.got_subcommand(lya)) {
            dynsys::Trajectory cloud = lya_in.load();
            exponents::NeighborhoodParams nb;
            nb.delta = lya_delta > 0.0 ? lya_delta
                                       : lya_delta_c * ph0::cloud_diameter(
                                             cloud.data, cloud.size(), cloud.dim);
            nb.min_neighbors = lya_minn;
            nb.theiler = lya_theiler;
            exponents::FitWindow window =
                lya_window.empty() ? exponents::FitWindow{0.0, double(lya_tmax)}
                                   : parse_window(lya_window);
            exponents::ExponentFit fit = exponents::kantz_lyapunov(
                cloud, nb, lya_tmax, window, parse_averaging(lya_avg));
            exponents::save_fit_json(fit, lya_out);
            if (!lya_svg.empty()) write_fit_svg(fit, lya_svg, "t (samples)");
            std::cout << "wrote " << lya_out << ": lyapunov=" << fmt17(fit.value)
                      << " per sample (" << fmt17(fit.metadata.at("lambda_per_time_unit"))
                      << " per time unit), delta=" << fmt17(nb.delta)
                      << ", r2=" << fmt17(fit.r_squared) << "\n";
        } else if (app.got_subcommand(pex)) {
            dynsys::Trajectory cloud = pex_in.load();
            exponents::NeighborhoodParams nb;
            nb.delta = pex_delta > 0.0 ? pex_delta
                                       : pex_delta_c * ph0::cloud_diameter(
                                             cloud.data, cloud.size(), cloud.dim);
            std::vector<double> radii(static_cast<std::size_t>(pex_radii));
            for (std::size_t r = 0; r < radii.size(); ++r)
                radii[r] = nb.delta * double(r) / double(pex_radii - 1);
            exponents::FitWindow window;
            if (!pex_window.empty()) {
                window = parse_window(pex_window);
            } else {
                exponents::FitWindow frac = parse_window(pex_frac);
                window = {frac.lo * nb.delta, frac.hi * nb.delta};
            }
            exponents::ExponentFit fit =
                exponents::persistence_exponent_local(cloud, nb, radii, window);
            exponents::save_fit_json(fit, pex_out);
            if (!pex_svg.empty()) write_fit_svg(fit, pex_svg, "epsilon");
            std::cout << "wrote " << pex_out << ": pexp=" << fmt17(fit.value)
                      << ", bound=" << fmt17(*fit.upper_bound)
                      << ", delta=" << fmt17(nb.delta) << ", r2=" << fmt17(fit.r_squared)
                      << "\n";
        } else if (app.got_subcommand(pp)) {
            if (!pp_config.empty()) {
                experiments::SweepConfig cfg =
                    experiments::sweep_config_from_toml(load_table(pp_config));
                cfg.include_lyapunov = false;
                experiments::SweepResult res = experiments::run_sweep(cfg);
                experiments::write_sweep_json(res, pp_out);
                if (!pp_csv.empty()) experiments::write_sweep_csv(res, pp_csv);
                std::cout << "wrote " << pp_out << ": " << res.rows.size()
                          << " persistence rows, config hash " << res.config_hash << "\n";
            } else {
                if (pp_x.empty() || pp_y.empty() || pp_radii.empty())
                    throw param_error("direct mode needs --x, --y, and --radii "
                                      "(or use --config)");
                dynsys::TrajectoryPair pair;
                pair.x = dynsys::load_trajectory_csv(pp_x);
                pair.y = dynsys::load_trajectory_csv(pp_y);
                if (pair.x.size() == 0 || pair.x.size() != pair.y.size() ||
                    pair.x.dim != pair.y.dim)
                    throw param_error("--x and --y must have equal point counts and dim");
                pair.initial_separation = point_distance(
                    pair.x.point(0).data(), pair.y.point(0).data(), pair.x.dim);
                exponents::ExponentFit fit = exponents::persistence_exponent_pair(
                    pair, experiments::parse_range(pp_radii), parse_window(pp_window));
                exponents::save_fit_json(fit, pp_out);
                std::cout << "wrote " << pp_out << ": pexp=" << fmt17(fit.value)
                          << ", bound=" << fmt17(*fit.upper_bound)
                          << ", r2=" << fmt17(fit.r_squared) << "\n";
            }
        } else if (app.got_subcommand(swp)) {
            experiments::SweepConfig cfg =
                experiments::sweep_config_from_toml(load_table(swp_config));
            if (swp_trials) cfg.trials = *swp_trials;
            if (swp_seed) cfg.master_seed = *swp_seed;
            experiments::SweepResult res = experiments::run_sweep(cfg);
            experiments::write_sweep_csv(res, swp_out);
            if (!swp_json.empty()) experiments::write_sweep_json(res, swp_json);
            if (!swp_svg.empty()) write_sweep_svg(res, swp_svg, cfg.swept_param);
            std::cout << "wrote " << swp_out << ": " << res.rows.size() << " rows, "
                      << res.failures.size() << " failed trials, config hash "
                      << res.config_hash << "\n";
        } else if (app.got_subcommand(lad)) {
            experiments::LadderConfig cfg =
                experiments::ladder_config_from_toml(load_table(lad_config));
            if (lad_trials) cfg.trials = *lad_trials;
            if (lad_seed) cfg.master_seed = *lad_seed;
            embedding::Series s = embedding::load_series_csv(lad_in);
            experiments::SweepResult res = experiments::run_noise_ladder(s, cfg);
            experiments::write_sweep_csv(res, lad_out);
            if (!lad_json.empty()) experiments::write_sweep_json(res, lad_json);
            if (!lad_svg.empty()) write_sweep_svg(res, lad_svg, "sigma");
            std::cout << "wrote " << lad_out << ": " << res.rows.size() << " rows, "
                      << res.failures.size() << " failed trials, config hash "
                      << res.config_hash << "\n";
        } else if (app.got_subcommand(dsc)) {
            dynsys::Trajectory cloud = dsc_in.load();
            exponents::DeltaScanParams p;
            p.c_grid = experiments::parse_range(dsc_grid);
            p.stability_tol = dsc_tol;
            p.t_max = dsc_tmax;
            p.lyap_window = dsc_window.empty()
                                ? exponents::FitWindow{0.0, double(dsc_tmax)}
                                : parse_window(dsc_window);
            p.min_neighbors = dsc_minn;
            p.theiler = dsc_theiler;
            p.radii_count = dsc_radii;
            exponents::FitWindow frac = parse_window(dsc_frac);
            p.pexp_lo_frac = frac.lo;
            p.pexp_hi_frac = frac.hi;
            p.averaging = parse_averaging(dsc_avg);
            exponents::DeltaScanReport rep = exponents::select_delta_scan(cloud, p);
            std::FILE* f = std::fopen(dsc_out.c_str(), "w");
            if (!f) throw param_error("cannot open for writing: " + dsc_out);
            std::fputs("c,delta,lyapunov,pexp,failed\n", f);
            for (const exponents::DeltaScanRow& row : rep.rows)
                std::fprintf(f, "%s,%s,%s,%s,%d\n", fmt17(row.c).c_str(),
                             fmt17(row.delta).c_str(),
                             row.failed ? "" : fmt17(row.lyapunov).c_str(),
                             row.failed ? "" : fmt17(row.pexp).c_str(),
                             row.failed ? 1 : 0);
            std::fclose(f);
            if (!dsc_svg.empty()) {
                svg::LineSeries ls{"lyapunov", {}, {}}, ps{"pexp", {}, {}};
                for (const exponents::DeltaScanRow& row : rep.rows) {
                    double nan = std::numeric_limits<double>::quiet_NaN();
                    ls.x.push_back(row.c);
                    ls.y.push_back(row.failed ? nan : row.lyapunov);
                    ps.x.push_back(row.c);
                    ps.y.push_back(row.failed ? nan : row.pexp);
                }
                svg::write_line_plot({ls, ps}, {"", "c", "exponent"}, dsc_svg);
            }
            std::cout << "wrote " << dsc_out << ": c_chosen=" << fmt17(rep.c_chosen)
                      << " (delta=" << fmt17(rep.delta_chosen) << "), "
                      << (rep.stable_range_found
                              ? "stable range [" + fmt17(rep.stable_lo) + ", " +
                                    fmt17(rep.stable_hi) + "]"
                              : std::string("no stable range, least-variation fallback"))
                      << "\n";
        }
    } catch (const param_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
