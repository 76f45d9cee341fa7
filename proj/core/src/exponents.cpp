#include "chaoskit/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "chaoskit/common.hpp"
#include "chaoskit/ph0.hpp"

namespace chaoskit::exponents {

SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                   const FitWindow& window) {
    if (xs.size() != ys.size()) throw param_error("fit_slope: xs/ys length mismatch");
    if (!(window.lo <= window.hi)) throw param_error("fit_slope: window.lo must be <= hi");
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < window.lo || xs[i] > window.hi) continue;
        sx += xs[i];
        sy += ys[i];
        ++n;
    }
    if (n < 2) throw param_error("fit_slope: fewer than 2 samples in the fit window");
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < window.lo || xs[i] > window.hi) continue;
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw param_error("fit_slope: all abscissas in the window coincide");
    SlopeFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.n_used = n;
    if (syy == 0.0) {
        out.r_squared = 1.0;
    } else {
        double ss_res = syy - out.slope * sxy;
        if (ss_res < 0.0) ss_res = 0.0;
        out.r_squared = 1.0 - ss_res / syy;
    }
    return out;
}

ExponentFit kantz_lyapunov(const dynsys::Trajectory& traj, const NeighborhoodParams& nb,
                           int t_max, const FitWindow& window, KantzAveraging averaging) {
    traj.validate();
    if (nb.delta <= 0.0) throw param_error("kantz: delta must be > 0");
    if (nb.min_neighbors < 1) throw param_error("kantz: min_neighbors must be >= 1");
    if (nb.theiler < 0) throw param_error("kantz: theiler must be >= 0");
    if (t_max < 1) throw param_error("kantz: t_max must be >= 1");
    const std::size_t N = traj.size();
    if (N <= static_cast<std::size_t>(t_max))
        throw param_error("kantz: trajectory shorter than t_max");
    if (window.lo < 0.0 || window.hi > static_cast<double>(t_max) || window.lo >= window.hi)
        throw param_error("kantz: fit window must lie inside [0, t_max]");

    const int p = traj.dim;
    const double* d = traj.data.data();
    auto dist = [&](std::size_t i, std::size_t j) {
        return point_distance(d + i * p, d + j * p, p);
    };

    struct Anchor {
        std::size_t i;
        std::vector<std::size_t> nbrs;
        double L0;
    };
    std::vector<Anchor> anchors;
    std::size_t skipped_zero = 0;
    const std::size_t last_anchor = N - static_cast<std::size_t>(t_max) - 1;
    for (std::size_t i = 0; i <= last_anchor; ++i) {
        Anchor a;
        a.i = i;
        for (std::size_t j = 0; j < N; ++j) {
            if (j == i) continue;
            if (nb.theiler > 0) {
                std::size_t gap = i > j ? i - j : j - i;
                if (gap <= static_cast<std::size_t>(nb.theiler)) continue;
            }
            if (dist(i, j) < nb.delta) a.nbrs.push_back(j);
        }
        if (a.nbrs.size() < static_cast<std::size_t>(nb.min_neighbors)) continue;
        double sum = 0.0;
        for (std::size_t j : a.nbrs) sum += dist(i, j);
        a.L0 = sum / static_cast<double>(a.nbrs.size());
        if (a.L0 == 0.0) {
            ++skipped_zero;
            continue;
        }
        anchors.push_back(std::move(a));
    }
    if (anchors.empty())
        throw numeric_error("kantz: no anchor has " + std::to_string(nb.min_neighbors) +
                            " neighbors within delta = " + fmt17(nb.delta));

    ExponentFit fit;
    fit.kind = "lyapunov";
    fit.window = window;
    fit.n_contributing = anchors.size();
    fit.abscissa.resize(static_cast<std::size_t>(t_max) + 1);
    fit.ordinate.resize(static_cast<std::size_t>(t_max) + 1);
    std::size_t min_count = anchors.size();
    for (int t = 0; t <= t_max; ++t) {
        double acc = 0.0;
        std::size_t cnt = 0;
        for (const Anchor& a : anchors) {
            double sum = 0.0;
            std::size_t alive = 0;
            for (std::size_t j : a.nbrs) {
                if (j + static_cast<std::size_t>(t) >= N) continue;
                sum += dist(a.i + static_cast<std::size_t>(t), j + static_cast<std::size_t>(t));
                ++alive;
            }
            if (alive == 0) continue;  // advanced set emptied; drop from this t's mean
            const double ratio = (sum / static_cast<double>(alive)) / a.L0;
            acc += averaging == KantzAveraging::LogOfMean ? ratio : std::log(ratio);
            ++cnt;
        }
        if (cnt == 0)
            throw numeric_error("kantz: every anchor lost its neighbors at t = " +
                                std::to_string(t));
        min_count = std::min(min_count, cnt);
        const double mean = acc / static_cast<double>(cnt);
        fit.abscissa[t] = static_cast<double>(t);
        fit.ordinate[t] = averaging == KantzAveraging::LogOfMean ? std::log(mean) : mean;
    }

    SlopeFit sf = fit_slope(fit.abscissa, fit.ordinate, window);
    fit.value = sf.slope;
    fit.r_squared = sf.r_squared;
    fit.metadata["delta"] = nb.delta;
    fit.metadata["anchors_skipped_zero_length"] = static_cast<double>(skipped_zero);
    fit.metadata["min_anchors_at_some_t"] = static_cast<double>(min_count);
    if (traj.grid.dt > 0.0) fit.metadata["lambda_per_time_unit"] = sf.slope / traj.grid.dt;
    return fit;
}

namespace {

void require_radius_grid(const std::vector<double>& radii) {
    if (radii.size() < 2) throw param_error("radius grid needs at least 2 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 0.0) throw param_error("radii must be >= 0");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw param_error("radii must be strictly increasing");
    }
}

}  // namespace

ExponentFit persistence_exponent_pair(const dynsys::TrajectoryPair& pair,
                                      const std::vector<double>& radii,
                                      const FitWindow& window, bool allow_nonzero_origin) {
    pair.x.validate();
    pair.y.validate();
    if (pair.x.dim != pair.y.dim)
        throw param_error("persistence_exponent_pair: mismatched dimensions");
    require_radius_grid(radii);
    if (!allow_nonzero_origin && radii.front() != 0.0)
        throw param_error("persistence_exponent_pair: radii must start at 0");
    if (!(window.lo < window.hi))
        throw param_error("persistence_exponent_pair: window must have positive width");

    std::vector<double> z;
    z.reserve(pair.x.data.size() + pair.y.data.size());
    z.insert(z.end(), pair.x.data.begin(), pair.x.data.end());
    z.insert(z.end(), pair.y.data.begin(), pair.y.data.end());
    const std::size_t n = pair.x.size() + pair.y.size();

    ph0::BettiCurve curve =
        ph0::betti_curve(std::span<const double>(z), n, pair.x.dim, radii);

    ExponentFit fit;
    fit.kind = "persistence_pair";
    fit.window = window;
    fit.n_contributing = n;
    fit.abscissa = radii;
    fit.ordinate.resize(radii.size());
    const double beta1 = static_cast<double>(curve.counts.front());
    for (std::size_t r = 0; r < radii.size(); ++r)
        fit.ordinate[r] = -std::log(static_cast<double>(curve.counts[r]) / beta1);

    SlopeFit sf = fit_slope(fit.abscissa, fit.ordinate, window);
    fit.value = sf.slope;
    fit.r_squared = sf.r_squared;
    fit.upper_bound = std::log(static_cast<double>(n)) / window.width();
    fit.metadata["n_points"] = static_cast<double>(n);
    fit.metadata["beta_at_origin"] = beta1;
    return fit;
}

ExponentFit persistence_exponent_local(const dynsys::Trajectory& traj,
                                       const NeighborhoodParams& nb,
                                       const std::vector<double>& radii,
                                       const FitWindow& window) {
    traj.validate();
    if (nb.delta <= 0.0) throw param_error("persistence_exponent_local: delta must be > 0");
    require_radius_grid(radii);
    if (!(window.lo < window.hi))
        throw param_error("persistence_exponent_local: window must have positive width");

    const std::size_t N = traj.size();
    const int p = traj.dim;
    const double* d = traj.data.data();

    std::vector<double> ratio_sum(radii.size(), 0.0);
    std::vector<double> nbr_coords;
    std::size_t max_nbhd = 0;
    for (std::size_t i = 0; i < N; ++i) {
        nbr_coords.clear();
        const double* pi = d + i * p;
        for (std::size_t j = 0; j < N; ++j)
            if (point_distance(pi, d + j * p, p) < nb.delta)
                nbr_coords.insert(nbr_coords.end(), d + j * p, d + (j + 1) * p);
        const std::size_t k = nbr_coords.size() / static_cast<std::size_t>(p);
        max_nbhd = std::max(max_nbhd, k);
        ph0::Barcode0 bc = ph0::barcode0(std::span<const double>(nbr_coords), k, p);
        const double beta1 = static_cast<double>(ph0::betti_at(bc, radii.front()));
        for (std::size_t r = 0; r < radii.size(); ++r)
            ratio_sum[r] += static_cast<double>(ph0::betti_at(bc, radii[r])) / beta1;
    }

    ExponentFit fit;
    fit.kind = "persistence_local";
    fit.window = window;
    fit.n_contributing = N;
    fit.abscissa = radii;
    fit.ordinate.resize(radii.size());
    for (std::size_t r = 0; r < radii.size(); ++r)
        fit.ordinate[r] = -std::log(ratio_sum[r] / static_cast<double>(N));

    SlopeFit sf = fit_slope(fit.abscissa, fit.ordinate, window);
    fit.value = sf.slope;
    fit.r_squared = sf.r_squared;
    fit.upper_bound = std::log(static_cast<double>(N)) / window.width();
    fit.metadata["delta"] = nb.delta;
    fit.metadata["max_neighborhood_size"] = static_cast<double>(max_nbhd);
    fit.metadata["upper_bound_max_neighborhood"] =
        std::log(static_cast<double>(max_nbhd)) / window.width();
    return fit;
}

BoundsCheck check_bounds(const ExponentFit& fit, std::size_t n_points, double tol) {
    if (n_points < 1) throw param_error("check_bounds: n_points must be >= 1");
    if (!(fit.window.width() > 0.0))
        throw param_error("check_bounds: fit window must have positive width");
    if (tol < 0.0) throw param_error("check_bounds: tol must be >= 0");
    BoundsCheck out;
    out.bound = std::log(static_cast<double>(n_points)) / fit.window.width();
    if (fit.value < -tol) {
        out.ok = false;
        out.message = "exponent " + fmt17(fit.value) + " below 0";
    } else if (fit.value > out.bound + tol) {
        out.ok = false;
        out.message = "exponent " + fmt17(fit.value) + " above bound " + fmt17(out.bound) +
                      " (n = " + std::to_string(n_points) +
                      ", window width = " + fmt17(fit.window.width()) + ")";
    }
    return out;
}

namespace {

double rel_step(double u, double v) {
    double scale = std::max(std::abs(u), std::abs(v));
    if (scale < 1e-300) return 0.0;  // both effectively zero: no variation
    return std::abs(u - v) / scale;
}

}  // namespace

DeltaScanReport select_delta_scan(const dynsys::Trajectory& traj, const DeltaScanParams& p) {
    traj.validate();
    if (p.c_grid.size() < 2) throw param_error("delta scan: need at least 2 c values");
    for (std::size_t i = 0; i < p.c_grid.size(); ++i) {
        if (p.c_grid[i] <= 0.0) throw param_error("delta scan: c values must be > 0");
        if (i > 0 && !(p.c_grid[i] > p.c_grid[i - 1]))
            throw param_error("delta scan: c grid must be strictly increasing");
    }
    if (p.stability_tol <= 0.0) throw param_error("delta scan: stability_tol must be > 0");
    if (p.radii_count < 2) throw param_error("delta scan: radii_count must be >= 2");
    if (!(0.0 <= p.pexp_lo_frac && p.pexp_lo_frac < p.pexp_hi_frac && p.pexp_hi_frac <= 1.0))
        throw param_error("delta scan: need 0 <= pexp_lo_frac < pexp_hi_frac <= 1");

    const double diam =
        ph0::cloud_diameter(std::span<const double>(traj.data), traj.size(), traj.dim);
    if (diam <= 0.0) throw numeric_error("delta scan: degenerate cloud (diameter 0)");

    DeltaScanReport rep;
    for (double c : p.c_grid) {
        DeltaScanRow row;
        row.c = c;
        row.delta = c * diam;
        NeighborhoodParams nb{row.delta, p.min_neighbors, p.theiler};
        std::vector<double> radii(p.radii_count);
        for (int r = 0; r < p.radii_count; ++r)
            radii[r] = row.delta * static_cast<double>(r) / (p.radii_count - 1);
        try {
            ExponentFit lyap = kantz_lyapunov(traj, nb, p.t_max, p.lyap_window, p.averaging);
            ExponentFit pex = persistence_exponent_local(
                traj, nb, radii,
                FitWindow{p.pexp_lo_frac * row.delta, p.pexp_hi_frac * row.delta});
            row.lyapunov = lyap.value;
            row.pexp = pex.value;
        } catch (const numeric_error&) {
            row.failed = true;
        }
        rep.rows.push_back(row);
    }

    // Longest contiguous run where consecutive values of both exponents stay within
    // the relative tolerance and no row failed.
    const std::size_t n = rep.rows.size();
    auto step_ok = [&](std::size_t i) {
        const DeltaScanRow& a = rep.rows[i];
        const DeltaScanRow& b = rep.rows[i + 1];
        if (a.failed || b.failed) return false;
        return rel_step(a.lyapunov, b.lyapunov) < p.stability_tol &&
               rel_step(a.pexp, b.pexp) < p.stability_tol;
    };
    std::size_t best_lo = 0, best_len = 0;
    std::size_t run_lo = 0, run_len = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (step_ok(i)) {
            if (run_len == 0) run_lo = i;
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_lo = run_lo;
            }
        } else {
            run_len = 0;
        }
    }

    if (best_len > 0) {
        rep.stable_range_found = true;
        rep.stable_lo = rep.rows[best_lo].c;
        rep.stable_hi = rep.rows[best_lo + best_len].c;
        double sum = 0.0;
        for (std::size_t i = best_lo; i <= best_lo + best_len; ++i) sum += rep.rows[i].c;
        rep.c_chosen = sum / static_cast<double>(best_len + 1);
    } else {
        // No stable subrange: pick the c with the least total relative variation to
        // its neighbors, skipping failed rows.
        double best_score = std::numeric_limits<double>::infinity();
        std::size_t best_i = n;  // sentinel
        for (std::size_t i = 0; i < n; ++i) {
            if (rep.rows[i].failed) continue;
            double score = 0.0;
            int terms = 0;
            for (std::size_t j : {i > 0 ? i - 1 : n, i + 1 < n ? i + 1 : n}) {
                if (j >= n || rep.rows[j].failed) continue;
                score += rel_step(rep.rows[i].lyapunov, rep.rows[j].lyapunov) +
                         rel_step(rep.rows[i].pexp, rep.rows[j].pexp);
                ++terms;
            }
            if (terms == 0) continue;
            score /= terms;
            if (score < best_score) {
                best_score = score;
                best_i = i;
            }
        }
        if (best_i == n)
            throw numeric_error("delta scan: every candidate c failed or is isolated");
        rep.c_chosen = rep.rows[best_i].c;
    }
    rep.delta_chosen = rep.c_chosen * diam;
    return rep;
}

namespace {

nlohmann::json fit_to_json_obj(const ExponentFit& fit) {
    nlohmann::json j;
    j["kind"] = fit.kind;
    j["value"] = fit.value;
    j["window"] = {fit.window.lo, fit.window.hi};
    if (fit.upper_bound)
        j["upper_bound"] = *fit.upper_bound;
    else
        j["upper_bound"] = nullptr;
    j["r_squared"] = fit.r_squared;
    nlohmann::json curve = nlohmann::json::array();
    for (std::size_t i = 0; i < fit.abscissa.size(); ++i)
        curve.push_back({fit.abscissa[i], fit.ordinate[i]});
    j["curve"] = curve;
    j["n_contributing"] = fit.n_contributing;
    j["metadata"] = fit.metadata;
    return j;
}

}  // namespace

std::string fit_to_json(const ExponentFit& fit) { return fit_to_json_obj(fit).dump(2) + "\n"; }

ExponentFit fit_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw param_error(std::string("fit JSON: ") + e.what());
    }
    ExponentFit fit;
    try {
        fit.kind = j.at("kind").get<std::string>();
        fit.value = j.at("value").get<double>();
        fit.window.lo = j.at("window").at(0).get<double>();
        fit.window.hi = j.at("window").at(1).get<double>();
        if (!j.at("upper_bound").is_null()) fit.upper_bound = j["upper_bound"].get<double>();
        fit.r_squared = j.at("r_squared").get<double>();
        for (const auto& pt : j.at("curve")) {
            fit.abscissa.push_back(pt.at(0).get<double>());
            fit.ordinate.push_back(pt.at(1).get<double>());
        }
        fit.n_contributing = j.at("n_contributing").get<std::size_t>();
        if (j.contains("metadata"))
            fit.metadata = j["metadata"].get<std::map<std::string, double>>();
    } catch (const nlohmann::json::exception& e) {
        throw param_error(std::string("fit JSON: ") + e.what());
    }
    return fit;
}

void save_fit_json(const ExponentFit& fit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << fit_to_json(fit);
    if (!out) throw param_error("write failed: " + path);
}

ExponentFit load_fit_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return fit_from_json(ss.str());
}

}  // namespace chaoskit::exponents
