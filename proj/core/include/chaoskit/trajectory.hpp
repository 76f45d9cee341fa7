#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace chaoskit::dynsys {

/// Uniform time grid t_i = t0 + i*dt, i = 0..count-1.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t count = 0;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
};

/// Ordered point sequence in R^dim with a uniform time grid.
/// Storage is row-major: data[i*dim + k] is coordinate k of point i.
/// Also serves as a plain point cloud wherever only geometry matters.
struct Trajectory {
    int dim = 0;
    TimeGrid grid;
    std::vector<double> data;

    std::size_t size() const { return grid.count; }

    std::span<const double> point(std::size_t i) const {
        return {data.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    std::span<double> point(std::size_t i) {
        return {data.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }

    /// Throws param_error if dim/count/data sizes disagree or a coordinate is non-finite.
    void validate() const;
};

/// Two trajectories on a common grid plus their initial state-space separation.
struct TrajectoryPair {
    Trajectory x;
    Trajectory y;
    double initial_separation = 0.0;
};

/// Writes CSV with header t,x1,...,xp and 17 significant digits per value.
void save_trajectory_csv(const Trajectory& tr, const std::string& path);

/// Reads the format written by save_trajectory_csv. The grid is reconstructed from
/// the t column; non-uniform t spacing is a param_error.
Trajectory load_trajectory_csv(const std::string& path);

}  // namespace chaoskit::dynsys
