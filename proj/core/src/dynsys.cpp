#include "chaoskit/dynsys.hpp"

#include <array>
#include <cmath>
#include <random>

#include "chaoskit/common.hpp"

namespace chaoskit::dynsys {

SystemSpec SystemSpec::lorenz(double rho, double sigma, double beta) {
    SystemSpec s;
    s.family = SystemFamily::Lorenz;
    s.rho = rho;
    s.sigma = sigma;
    s.beta = beta;
    return s;
}

SystemSpec SystemSpec::rossler(double a, double b, double c) {
    SystemSpec s;
    s.family = SystemFamily::Rossler;
    s.a = a;
    s.b = b;
    s.c = c;
    return s;
}

std::string SystemSpec::family_name() const {
    return family == SystemFamily::Lorenz ? "lorenz" : "rossler";
}

void SystemSpec::deriv(const double* x, double* dxdt) const {
    if (family == SystemFamily::Lorenz) {
        dxdt[0] = sigma * (x[1] - x[0]);
        dxdt[1] = x[0] * (rho - x[2]) - x[1];
        dxdt[2] = x[0] * x[1] - beta * x[2];
    } else {
        dxdt[0] = -x[1] - x[2];
        dxdt[1] = x[0] + a * x[1];
        dxdt[2] = b + x[2] * (x[0] - c);
    }
}

void SystemSpec::set_param(const std::string& name, double value) {
    if (name == "sigma") sigma = value;
    else if (name == "beta") beta = value;
    else if (name == "rho") rho = value;
    else if (name == "a") a = value;
    else if (name == "b") b = value;
    else if (name == "c") c = value;
    else throw param_error("unknown system parameter: " + name);
}

double SystemSpec::get_param(const std::string& name) const {
    if (name == "sigma") return sigma;
    if (name == "beta") return beta;
    if (name == "rho") return rho;
    if (name == "a") return a;
    if (name == "b") return b;
    if (name == "c") return c;
    throw param_error("unknown system parameter: " + name);
}

Trajectory integrate(const SystemSpec& spec, const std::vector<double>& x0,
                     const TimeGrid& grid) {
    const int p = spec.dim();
    if (static_cast<int>(x0.size()) != p)
        throw param_error("initial condition must have dimension " + std::to_string(p));
    if (grid.count == 0) throw param_error("time grid must contain at least one point");
    if (grid.count > 1 && grid.dt <= 0.0)
        throw param_error("time step dt must be positive");

    Trajectory tr;
    tr.dim = p;
    tr.grid = grid;
    tr.data.resize(grid.count * static_cast<std::size_t>(p));

    std::array<double, 3> x{x0[0], x0[1], x0[2]};
    for (int k = 0; k < p; ++k) tr.data[k] = x[k];

    std::array<double, 3> k1{}, k2{}, k3{}, k4{}, tmp{};
    const double dt = grid.dt;
    for (std::size_t i = 1; i < grid.count; ++i) {
        spec.deriv(x.data(), k1.data());
        for (int k = 0; k < p; ++k) tmp[k] = x[k] + 0.5 * dt * k1[k];
        spec.deriv(tmp.data(), k2.data());
        for (int k = 0; k < p; ++k) tmp[k] = x[k] + 0.5 * dt * k2[k];
        spec.deriv(tmp.data(), k3.data());
        for (int k = 0; k < p; ++k) tmp[k] = x[k] + dt * k3[k];
        spec.deriv(tmp.data(), k4.data());
        for (int k = 0; k < p; ++k)
            x[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);

        for (int k = 0; k < p; ++k) {
            if (!std::isfinite(x[k]))
                throw numeric_error("integration diverged at step " + std::to_string(i) +
                                    " (t = " + fmt17(grid.time(i)) + ")");
            tr.data[i * static_cast<std::size_t>(p) + k] = x[k];
        }
    }
    return tr;
}

TrajectoryPair neighboring_pair(const SystemSpec& spec, const std::vector<double>& base_x0,
                                const TimeGrid& grid, double ic_jitter_std, double sep_std,
                                std::uint64_t seed) {
    const int p = spec.dim();
    if (static_cast<int>(base_x0.size()) != p)
        throw param_error("base initial condition must have dimension " + std::to_string(p));
    if (ic_jitter_std < 0.0) throw param_error("ic_jitter_std must be >= 0");
    if (sep_std <= 0.0) throw param_error("sep_std must be > 0");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, ic_jitter_std);
    std::normal_distribution<double> sep(0.0, sep_std);

    std::vector<double> x0(base_x0);
    if (ic_jitter_std > 0.0)
        for (double& v : x0) v += jitter(rng);

    std::vector<double> y0(p);
    double d0 = 0.0;
    do {
        d0 = 0.0;
        for (int k = 0; k < p; ++k) {
            double off = sep(rng);
            y0[k] = x0[k] + off;
            d0 += off * off;
        }
        d0 = std::sqrt(d0);
    } while (d0 == 0.0);

    TrajectoryPair pair;
    pair.x = integrate(spec, x0, grid);
    pair.y = integrate(spec, y0, grid);
    pair.initial_separation = d0;
    return pair;
}

std::vector<double> coordinate_stddevs(const Trajectory& tr) {
    tr.validate();
    const std::size_t n = tr.size();
    if (n < 2) throw param_error("need at least 2 points for a sample stddev");
    const int p = tr.dim;
    std::vector<double> mean(p, 0.0), out(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < p; ++k) mean[k] += tr.data[i * p + k];
    for (int k = 0; k < p; ++k) mean[k] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < p; ++k) {
            double d = tr.data[i * p + k] - mean[k];
            out[k] += d * d;
        }
    for (int k = 0; k < p; ++k) out[k] = std::sqrt(out[k] / static_cast<double>(n - 1));
    return out;
}

Trajectory perturb_trajectory(const Trajectory& tr, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw param_error("noise level sigma must be >= 0");
    if (sigma == 0.0) return tr;
    std::vector<double> gamma = coordinate_stddevs(tr);

    Trajectory out = tr;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    const int p = tr.dim;
    for (std::size_t i = 0; i < tr.size(); ++i)
        for (int k = 0; k < p; ++k) out.data[i * p + k] += sigma * gamma[k] * unit(rng);
    return out;
}

}  // namespace chaoskit::dynsys
