#include "chaoskit/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chaoskit/common.hpp"

namespace chaoskit::dynsys {

void Trajectory::validate() const {
    if (dim <= 0) throw param_error("trajectory dim must be positive");
    if (grid.count == 0) throw param_error("trajectory must contain at least one point");
    if (data.size() != grid.count * static_cast<std::size_t>(dim))
        throw param_error("trajectory data size does not match dim*count");
    for (double v : data)
        if (!std::isfinite(v)) throw param_error("trajectory contains non-finite coordinate");
}

void save_trajectory_csv(const Trajectory& tr, const std::string& path) {
    tr.validate();
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << "t";
    for (int k = 1; k <= tr.dim; ++k) out << ",x" << k;
    out << "\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out << fmt17(tr.grid.time(i));
        for (double v : tr.point(i)) out << "," << fmt17(v);
        out << "\n";
    }
    if (!out) throw param_error("write failed: " + path);
}

namespace {

double parse_cell(const std::string& cell, const std::string& path, std::size_t line_no) {
    const char* s = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw param_error(path + ": line " + std::to_string(line_no) +
                          ": cannot parse number '" + cell + "'");
    return v;
}

}  // namespace

Trajectory load_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open: " + path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> times;
    Trajectory tr;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("t,", 0) == 0) {
            tr.dim = static_cast<int>(std::count(line.begin(), line.end(), ','));
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(parse_cell(cell, path, line_no));
        if (row.size() < 2)
            throw param_error(path + ": line " + std::to_string(line_no) +
                              ": expected t plus at least one coordinate");
        if (tr.dim == 0) tr.dim = static_cast<int>(row.size()) - 1;
        if (row.size() != static_cast<std::size_t>(tr.dim) + 1)
            throw param_error(path + ": line " + std::to_string(line_no) +
                              ": inconsistent column count");
        times.push_back(row[0]);
        tr.data.insert(tr.data.end(), row.begin() + 1, row.end());
    }
    if (times.empty()) throw param_error(path + ": no data rows");
    tr.grid.t0 = times[0];
    tr.grid.count = times.size();
    tr.grid.dt = times.size() > 1 ? times[1] - times[0] : 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double expect = tr.grid.time(i);
        double tol = 1e-9 * std::max(1.0, std::abs(expect));
        if (std::abs(times[i] - expect) > tol)
            throw param_error(path + ": non-uniform time grid at line " +
                              std::to_string(i + 2));
    }
    tr.validate();
    return tr;
}

}  // namespace chaoskit::dynsys
