#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

namespace {

double dist(const std::vector<double>& pts, std::size_t dim, std::size_t i,
            std::size_t j) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double diff = pts[i * dim + d] - pts[j * dim + d];
        s += diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace

int bfs_components(const std::vector<double>& pts, std::size_t n, std::size_t dim,
                   double eps) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> queue;
    int components = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        ++components;
        queue.assign(1, start);
        seen[start] = 1;
        while (!queue.empty()) {
            std::size_t v = queue.back();
            queue.pop_back();
            for (std::size_t w = 0; w < n; ++w)
                if (!seen[w] && dist(pts, dim, v, w) <= 2.0 * eps) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
    }
    return components;
}

std::vector<double> prim_mst_edges(const std::vector<double>& pts, std::size_t n,
                                   std::size_t dim) {
    if (n < 2) return {};
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<char> in_tree(n, 0);
    std::vector<double> best(n, inf);
    std::vector<double> edges;
    in_tree[0] = 1;
    for (std::size_t w = 1; w < n; ++w) best[w] = dist(pts, dim, 0, w);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        double pick_d = inf;
        for (std::size_t w = 0; w < n; ++w)
            if (!in_tree[w] && best[w] < pick_d) {
                pick = w;
                pick_d = best[w];
            }
        in_tree[pick] = 1;
        edges.push_back(pick_d);
        for (std::size_t w = 0; w < n; ++w)
            if (!in_tree[w]) best[w] = std::min(best[w], dist(pts, dim, pick, w));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::vector<std::vector<double>> rk45(
    const std::function<void(double, const double*, double*)>& f, std::size_t dim,
    const std::vector<double>& x0, double t0, double dt, std::size_t count,
    double rel_tol) {
    // Dormand-Prince 5(4) coefficients.
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    std::vector<std::vector<double>> out;
    out.reserve(count);
    std::vector<double> x = x0;
    out.push_back(x);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
    std::vector<double> tmp(dim), x5(dim);

    for (std::size_t s = 1; s < count; ++s) {
        double t = t0 + static_cast<double>(s - 1) * dt;
        const double t_end = t0 + static_cast<double>(s) * dt;
        double h = (t_end - t) / 4.0;
        int guard = 0;
        while (t < t_end) {
            if (++guard > 100000) throw std::runtime_error("rk45: step count blown");
            if (t + h > t_end) h = t_end - t;
            f(t, x.data(), k1.data());
            for (std::size_t d = 0; d < dim; ++d) tmp[d] = x[d] + h * a21 * k1[d];
            f(t + c2 * h, tmp.data(), k2.data());
            for (std::size_t d = 0; d < dim; ++d)
                tmp[d] = x[d] + h * (a31 * k1[d] + a32 * k2[d]);
            f(t + c3 * h, tmp.data(), k3.data());
            for (std::size_t d = 0; d < dim; ++d)
                tmp[d] = x[d] + h * (a41 * k1[d] + a42 * k2[d] + a43 * k3[d]);
            f(t + c4 * h, tmp.data(), k4.data());
            for (std::size_t d = 0; d < dim; ++d)
                tmp[d] = x[d] + h * (a51 * k1[d] + a52 * k2[d] + a53 * k3[d] +
                                     a54 * k4[d]);
            f(t + c5 * h, tmp.data(), k5.data());
            for (std::size_t d = 0; d < dim; ++d)
                tmp[d] = x[d] + h * (a61 * k1[d] + a62 * k2[d] + a63 * k3[d] +
                                     a64 * k4[d] + a65 * k5[d]);
            f(t + h, tmp.data(), k6.data());
            for (std::size_t d = 0; d < dim; ++d)
                x5[d] = x[d] + h * (b1 * k1[d] + b3 * k3[d] + b4 * k4[d] +
                                    b5 * k5[d] + b6 * k6[d]);
            f(t + h, x5.data(), k7.data());

            double err = 0.0, scale = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                double ed = h * (e1 * k1[d] + e3 * k3[d] + e4 * k4[d] + e5 * k5[d] +
                                 e6 * k6[d] + e7 * k7[d]);
                err += ed * ed;
                double sd = std::max(std::abs(x[d]), std::abs(x5[d])) + 1e-12;
                scale += sd * sd;
            }
            err = std::sqrt(err / scale);
            if (err <= rel_tol) {
                t += h;
                x = x5;
            }
            double grow = err > 0.0 ? 0.9 * std::pow(rel_tol / err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        }
        out.push_back(x);
    }
    return out;
}

std::function<void(double, const double*, double*)> lorenz_field(double sigma,
                                                                 double beta,
                                                                 double rho) {
    return [=](double, const double* x, double* dx) {
        dx[0] = sigma * (x[1] - x[0]);
        dx[1] = x[0] * (rho - x[2]) - x[1];
        dx[2] = x[0] * x[1] - beta * x[2];
    };
}

std::function<void(double, const double*, double*)> rossler_field(double a, double b,
                                                                  double c) {
    return [=](double, const double* x, double* dx) {
        dx[0] = -x[1] - x[2];
        dx[1] = x[0] + a * x[1];
        dx[2] = b + x[2] * (x[0] - c);
    };
}

namespace {

// Bin index per equiquantile edges: values are ranked by sorting; bin k holds
// ranks [k*n/bins, (k+1)*n/bins). Ties share the bin of their first occurrence.
std::vector<int> quantile_bins(const std::vector<double>& v, int bins) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<int> bin(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        int k = static_cast<int>(static_cast<std::size_t>(bins) * r / n);
        // Equal values must land in one bin regardless of rank order.
        if (r > 0 && v[order[r]] == v[order[r - 1]])
            bin[order[r]] = bin[order[r - 1]];
        else
            bin[order[r]] = k;
    }
    return bin;
}

}  // namespace

double mi_equiquantile(const std::vector<double>& x, const std::vector<double>& y,
                       int bins) {
    if (x.size() != y.size() || x.empty())
        throw std::runtime_error("mi_equiquantile: bad input");
    const std::size_t n = x.size();
    std::vector<int> bx = quantile_bins(x, bins);
    std::vector<int> by = quantile_bins(y, bins);
    std::vector<double> px(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> py(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> pxy(static_cast<std::size_t>(bins) * bins, 0.0);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        px[bx[i]] += w;
        py[by[i]] += w;
        pxy[static_cast<std::size_t>(bx[i]) * bins + by[i]] += w;
    }
    double mi = 0.0;
    for (int a = 0; a < bins; ++a)
        for (int b = 0; b < bins; ++b) {
            double j = pxy[static_cast<std::size_t>(a) * bins + b];
            if (j > 0.0) mi += j * std::log(j / (px[a] * py[b]));
        }
    return mi;
}

std::vector<double> ami_curve(const std::vector<double>& s, int max_tau, int bins) {
    std::vector<double> curve;
    for (int tau = 1; tau <= max_tau; ++tau) {
        std::vector<double> head(s.begin(), s.end() - tau);
        std::vector<double> tail(s.begin() + tau, s.end());
        curve.push_back(mi_equiquantile(head, tail, bins));
    }
    return curve;
}

double cao_E(const std::vector<double>& s, int tau, int m) {
    const std::size_t n = s.size();
    const std::size_t N = n - static_cast<std::size_t>(m) * tau;  // usable anchors
    if (N < 2) throw std::runtime_error("cao_E: series too short");
    auto d_inf = [&](std::size_t i, std::size_t j, int dims) {
        double best = 0.0;
        for (int k = 0; k < dims; ++k)
            best = std::max(best,
                            std::abs(s[i + static_cast<std::size_t>(k) * tau] -
                                     s[j + static_cast<std::size_t>(k) * tau]));
        return best;
    };
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t nn = N;
        double nn_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < N; ++j) {
            if (j == i) continue;
            double d = d_inf(i, j, m);
            if (d < nn_d) {
                nn_d = d;
                nn = j;
            }
        }
        if (nn == N || nn_d == 0.0) continue;  // degenerate anchor
        acc += d_inf(i, nn, m + 1) / nn_d;
        ++used;
    }
    if (used == 0) throw std::runtime_error("cao_E: all anchors degenerate");
    return acc / static_cast<double>(used);
}

OlsFit ols(const std::vector<double>& xs, const std::vector<double>& ys, double lo,
           double hi) {
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < lo || xs[i] > hi) continue;
        sx += xs[i];
        sy += ys[i];
        sxx += static_cast<long double>(xs[i]) * xs[i];
        sxy += static_cast<long double>(xs[i]) * ys[i];
        ++n;
    }
    if (n < 2) throw std::runtime_error("ols: < 2 samples in window");
    long double nn = static_cast<long double>(n);
    long double denom = nn * sxx - sx * sx;
    OlsFit fit;
    fit.slope = static_cast<double>((nn * sxy - sx * sy) / denom);
    fit.intercept = static_cast<double>((sy - fit.slope * sx) / nn);
    fit.n = n;
    return fit;
}

}  // namespace oracles
