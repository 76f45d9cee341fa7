#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chaoskit/trajectory.hpp"

namespace chaoskit::exponents {

/// Neighborhood definition shared by the anchor-based estimators: a point j is a
/// neighbor of anchor i when ||x_i - x_j|| < delta. theiler excludes temporally
/// close indices (|i - j| <= theiler) from Kantz neighborhoods; it defaults to 0
/// and is ignored by the local persistence exponent, whose neighborhoods include
/// the anchor itself.
struct NeighborhoodParams {
    double delta = 0.0;
    int min_neighbors = 1;
    int theiler = 0;
};

/// Closed fit interval [lo, hi] on the curve's abscissa; samples with
/// lo <= x <= hi enter the regression.
struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
};

/// How per-anchor stretch factors are aggregated into the divergence curve.
/// LogOfMean is the published form (log of the mean stretch); MeanOfLog is the
/// common variant, kept selectable.
enum class KantzAveraging { LogOfMean, MeanOfLog };

/// A fitted exponent plus everything needed to audit it.
struct ExponentFit {
    std::string kind;  // "lyapunov" | "persistence_pair" | "persistence_local"
    double value = 0.0;
    FitWindow window;
    std::optional<double> upper_bound;  // empty for lyapunov
    double r_squared = 0.0;
    std::vector<double> abscissa;
    std::vector<double> ordinate;
    std::size_t n_contributing = 0;
    std::map<std::string, double> metadata;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_used = 0;
};

/// Ordinary least squares over the samples whose abscissa lies in the window
/// (inclusive). Fewer than 2 such samples is a param_error. r_squared is
/// 1 - SS_res/SS_tot, defined as 1 when SS_tot = 0.
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                   const FitWindow& window);

/// Kantz divergence-curve estimator on an embedded (or state-space) trajectory.
/// Anchors are points i with i + t_max < N and at least min_neighbors neighbors
/// (anchor excluded). L_i is the mean distance from x_i to its neighbors; the
/// neighbor set is fixed at t = 0 and advanced in index, dropping neighbors j with
/// j + t >= N, so the abscissa t counts samples. The curve is
///   S(t) = log mean_i [ L_{i+t} / L_i ]      (LogOfMean)
/// for t = 0..t_max (S(0) = 0), and value is the OLS slope over the window, per
/// sample. Anchors with L_i = 0 are skipped and counted in metadata. The window
/// must lie inside [0, t_max]. No qualifying anchor at all is a numeric_error.
/// metadata: lambda_per_time_unit (value/dt), anchors_skipped_zero_length,
/// min_anchors_at_some_t, delta.
ExponentFit kantz_lyapunov(const dynsys::Trajectory& traj, const NeighborhoodParams& nb,
                           int t_max, const FitWindow& window,
                           KantzAveraging averaging = KantzAveraging::LogOfMean);

/// Global persistence exponent of a trajectory pair: Z is the union of both
/// trajectories' points, the curve is -log(beta_0^{eps_r}(Z) / beta_0^{eps_1}(Z))
/// over the radius grid, and value is the OLS slope over the window (natural log
/// throughout). radii[0] must be 0 unless allow_nonzero_origin.
/// upper_bound = log(|Z|) / window.width(); n_contributing = |Z|.
ExponentFit persistence_exponent_pair(const dynsys::TrajectoryPair& pair,
                                      const std::vector<double>& radii,
                                      const FitWindow& window,
                                      bool allow_nonzero_origin = false);

/// Local persistence exponent of a single embedding: for each anchor i the
/// delta-neighborhood (anchor included) gets its own degree-0 barcode, the ratios
/// beta_0^{eps_r}/beta_0^{eps_1} are averaged over anchors at each radius, and the
/// curve is -log of that mean. Singleton neighborhoods contribute ratio 1; a delta
/// below the smallest pairwise distance therefore gives exponent exactly 0.
/// upper_bound = log(N)/window.width(); metadata also carries the tighter
/// upper_bound_max_neighborhood = log(max_i |N_delta(x_i)|)/window.width() and
/// max_neighborhood_size. min_neighbors and theiler are ignored here.
ExponentFit persistence_exponent_local(const dynsys::Trajectory& traj,
                                       const NeighborhoodParams& nb,
                                       const std::vector<double>& radii,
                                       const FitWindow& window);

struct BoundsCheck {
    bool ok = true;
    double bound = 0.0;  // log(n_points)/window.width()
    std::string message;
};

/// Checks 0 <= fit.value <= log(n_points)/fit.window.width(), within tol on both
/// sides (tol = 0 is the exact proposition). Reports, never clamps.
BoundsCheck check_bounds(const ExponentFit& fit, std::size_t n_points, double tol = 0.0);

struct DeltaScanParams {
    std::vector<double> c_grid;    // neighborhood scale candidates, delta = c * D_X
    double stability_tol = 0.05;   // max relative step between consecutive c values
    int t_max = 75;
    FitWindow lyap_window{0.0, 75.0};
    int min_neighbors = 1;
    int theiler = 0;
    int radii_count = 100;         // radii evenly spaced on [0, delta]
    double pexp_lo_frac = 0.2;     // persistence fit window as fractions of delta
    double pexp_hi_frac = 0.55;
    KantzAveraging averaging = KantzAveraging::LogOfMean;
};

struct DeltaScanRow {
    double c = 0.0;
    double delta = 0.0;
    double lyapunov = 0.0;
    double pexp = 0.0;
    bool failed = false;  // an estimator threw for this c
};

struct DeltaScanReport {
    std::vector<DeltaScanRow> rows;
    double c_chosen = 0.0;
    double delta_chosen = 0.0;
    /// Bounds (in c) of the longest contiguous stable subrange, when one exists.
    double stable_lo = 0.0;
    double stable_hi = 0.0;
    bool stable_range_found = false;
};

/// Runs both estimators at delta = c * D_X for every c, then picks the longest
/// contiguous subrange where consecutive values of BOTH exponents differ by less
/// than stability_tol (relative); c_chosen is the mean c of that subrange. With no
/// stable subrange the c with the smallest total relative variation to its
/// neighbors is returned, flagged via stable_range_found = false. Constant
/// exponents make the whole grid stable, so c_chosen is then the grid midpoint.
DeltaScanReport select_delta_scan(const dynsys::Trajectory& traj, const DeltaScanParams& p);

/// ExponentFit JSON: {"kind", "value", "window": [lo, hi], "upper_bound": real|null,
/// "r_squared", "curve": [[x, y], ...], "n_contributing", "metadata": {...}}.
std::string fit_to_json(const ExponentFit& fit);
ExponentFit fit_from_json(const std::string& text);
void save_fit_json(const ExponentFit& fit, const std::string& path);
ExponentFit load_fit_json(const std::string& path);

}  // namespace chaoskit::exponents
