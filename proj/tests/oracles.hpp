#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately written with different algorithms and data layouts than the
// production code: Prim instead of Kruskal for the MST, BFS instead of
// union-find for components, an adaptive Dormand-Prince integrator instead of
// fixed-step RK4, direct nested loops for mutual information and Cao's E1.

#include <cstddef>
#include <functional>
#include <vector>

namespace oracles {

// Points are flat row-major arrays: point i occupies [i*dim, (i+1)*dim).

// Connected components of the graph with an edge wherever dist(i, j) <= 2*eps
// (the radius convention: an edge enters the filtration at half its length).
int bfs_components(const std::vector<double>& pts, std::size_t n, std::size_t dim,
                   double eps);

// All n-1 MST edge lengths, ascending, via Prim's algorithm in O(n^2).
std::vector<double> prim_mst_edges(const std::vector<double>& pts, std::size_t n,
                                   std::size_t dim);

// Adaptive Dormand-Prince 5(4) integration of x' = f(t, x), sampled exactly at
// t0, t0+dt, ..., t0+(count-1)*dt. rel_tol controls the per-step error.
std::vector<std::vector<double>> rk45(
    const std::function<void(double, const double*, double*)>& f, std::size_t dim,
    const std::vector<double>& x0, double t0, double dt, std::size_t count,
    double rel_tol);

// Lorenz / Rossler vector fields for rk45.
std::function<void(double, const double*, double*)> lorenz_field(double sigma,
                                                                 double beta,
                                                                 double rho);
std::function<void(double, const double*, double*)> rossler_field(double a, double b,
                                                                  double c);

// Histogram mutual information between paired samples (x[i], y[i]) with
// equiquantile bin edges computed independently per margin, natural log.
double mi_equiquantile(const std::vector<double>& x, const std::vector<double>& y,
                       int bins);

// The full automutual-information curve MI(tau) for tau = 1..max_tau.
std::vector<double> ami_curve(const std::vector<double>& s, int max_tau, int bins);

// Cao's E(m): mean over anchors of the (m+1)-dimensional distance to the
// nearest neighbor found in m dimensions, divided by the m-dimensional
// distance. E1(m) = E(m+1)/E(m) is left to the caller.
double cao_E(const std::vector<double>& s, int tau, int m);

// Ordinary least squares in long double, over the samples with lo <= x <= hi.
struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t n = 0;
};
OlsFit ols(const std::vector<double>& xs, const std::vector<double>& ys, double lo,
           double hi);

}  // namespace oracles
