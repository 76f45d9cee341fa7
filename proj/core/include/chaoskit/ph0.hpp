#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chaoskit/trajectory.hpp"

namespace chaoskit::ph0 {

// Radius convention, which differs from most persistent-homology tooling:
// the Vietoris-Rips complex at radius eps connects points i, j whenever
// ||x_i - x_j|| <= 2*eps, so an edge enters the filtration at
// eps = ||x_i - x_j|| / 2. Tools using the diameter convention (edge at
// eps = ||x_i - x_j||) report deaths exactly twice as large as the ones here.

/// Degree-0 barcode of a finite point cloud under the radius convention.
/// Every bar is born at 0. Exactly one bar [0, +inf) is implicit; `deaths`
/// holds the finite merge radii in ascending order. Zero-length bars [0, 0)
/// from coincident points are dropped at construction, so counts at eps = 0
/// equal the number of distinct points.
struct Barcode0 {
    std::size_t n_points = 0;
    std::vector<double> deaths;

    std::size_t n_bars() const { return deaths.size() + 1; }
};

/// Single-linkage 0-dim persistence: deaths are MST edge lengths / 2.
/// data is row-major n x dim. Empty input is a param_error.
Barcode0 barcode0(std::span<const double> data, std::size_t n, int dim);
Barcode0 barcode0(const dynsys::Trajectory& cloud);

/// Number of bars alive at eps: birth <= eps < death (half-open).
int betti_at(const Barcode0& bc, double eps);

/// beta_0 sampled on a strictly increasing radius grid. As a function of eps the
/// curve is right-constant and non-increasing; the final count is always >= 1.
struct BettiCurve {
    std::vector<double> radii;
    std::vector<int> counts;

    void validate() const;
};

BettiCurve betti_curve(std::span<const double> data, std::size_t n, int dim,
                       const std::vector<double>& radii);
BettiCurve betti_curve(const dynsys::Trajectory& cloud, const std::vector<double>& radii);
/// Same sampling from an existing barcode (avoids recomputing the MST).
BettiCurve betti_curve_of(const Barcode0& bc, const std::vector<double>& radii);

/// Interleaving distance between two non-increasing right-constant step curves:
/// the smallest alpha >= 0 with f(v) >= g(v+alpha) and g(v) >= f(v+alpha) for all v.
/// Both curves must share their first radius (else param_error); they are compared
/// on [radii[0], max of last radii] with right-constant extension beyond their last
/// breakpoints. If the final counts differ, no finite shift works and the result is
/// +inf. The infimum is attained at a difference of breakpoints, found exactly by
/// candidate enumeration; no sampling grid is involved.
double interleaving_distance(const BettiCurve& f, const BettiCurve& g);

/// Distortion of the index correspondence i <-> i between equal-size clouds:
/// max over i < j of | ||z_i - z_j|| - ||z'_i - z'_j|| |. Upper-bounds twice the
/// Gromov-Hausdorff distance. value = 0 for n < 2.
struct CorrespondenceBound {
    double value = 0.0;
    std::size_t arg_i = 0;
    std::size_t arg_j = 0;
};

CorrespondenceBound distortion_identity(std::span<const double> za, int dim_a,
                                        std::span<const double> zb, int dim_b,
                                        std::size_t n);
CorrespondenceBound distortion_identity(const dynsys::Trajectory& za,
                                        const dynsys::Trajectory& zb);

/// Largest pairwise distance of the cloud (0 for n < 2).
double cloud_diameter(std::span<const double> data, std::size_t n, int dim);

/// JSON object {"n_points": n, "bars": [[0.0, death], ..., [0.0, "inf"]]};
/// the infinite death serializes as the string "inf" and is listed last.
std::string barcode_to_json(const Barcode0& bc);
Barcode0 barcode_from_json(const std::string& text);
void save_barcode_json(const Barcode0& bc, const std::string& path);
Barcode0 load_barcode_json(const std::string& path);

/// CSV with header epsilon,betti0.
void save_betti_csv(const BettiCurve& curve, const std::string& path);
BettiCurve load_betti_csv(const std::string& path);

}  // namespace chaoskit::ph0
