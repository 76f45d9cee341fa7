#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chaoskit/trajectory.hpp"

namespace chaoskit::dynsys {

enum class SystemFamily { Lorenz, Rossler };

/// A 3-d flow plus its parameters.
///   Lorenz:  x' = sigma*(y-x),  y' = x*(rho-z)-y,  z' = x*y - beta*z
///   Rossler: x' = -y-z,         y' = x + a*y,      z' = b + z*(x-c)
struct SystemSpec {
    SystemFamily family = SystemFamily::Lorenz;
    double sigma = 10.0;
    double beta = 8.0 / 3.0;
    double rho = 28.0;
    double a = 0.4;
    double b = 2.0;
    double c = 4.0;

    static SystemSpec lorenz(double rho, double sigma = 10.0, double beta = 8.0 / 3.0);
    static SystemSpec rossler(double a, double b = 2.0, double c = 4.0);

    int dim() const { return 3; }
    std::string family_name() const;

    /// Evaluates the vector field at state x (length 3) into dxdt.
    void deriv(const double* x, double* dxdt) const;

    /// Named parameter access for sweeps. Valid names: sigma, beta, rho, a, b, c.
    /// Unknown names throw param_error.
    void set_param(const std::string& name, double value);
    double get_param(const std::string& name) const;
};

/// Classical fixed-step RK4 over the given grid. The first output point is x0
/// exactly. A non-finite state after any step throws numeric_error naming the
/// failing step index and time.
Trajectory integrate(const SystemSpec& spec, const std::vector<double>& x0,
                     const TimeGrid& grid);

/// Draws x0 = base + N(0, ic_jitter_std) per coordinate and y0 = x0 + N(0, sep_std)
/// per coordinate (redrawn in the zero-probability event of an exact collision, so
/// the returned initial_separation is always > 0), then integrates both on the grid.
/// Deterministic for a given seed. sep_std must be > 0, ic_jitter_std >= 0.
TrajectoryPair neighboring_pair(const SystemSpec& spec, const std::vector<double>& base_x0,
                                const TimeGrid& grid, double ic_jitter_std, double sep_std,
                                std::uint64_t seed);

/// Adds i.i.d. N(0, sigma*gamma_d) noise to every point, where gamma_d is the
/// unbiased (n-1) sample standard deviation of coordinate d over the trajectory;
/// sigma*gamma_d is the noise standard deviation. sigma = 0 returns the input
/// unchanged, as does a constant coordinate (gamma_d = 0). sigma < 0 is a
/// param_error. Deterministic for a given seed.
Trajectory perturb_trajectory(const Trajectory& tr, double sigma, std::uint64_t seed);

/// Unbiased (n-1) sample standard deviation per coordinate. Needs size >= 2.
std::vector<double> coordinate_stddevs(const Trajectory& tr);

}  // namespace chaoskit::dynsys
