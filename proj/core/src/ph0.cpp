#include "chaoskit/ph0.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "chaoskit/common.hpp"

namespace chaoskit::ph0 {

namespace {

// Dense Prim: O(n^2) time, O(n) memory. The multiset of MST edge weights is the
// same for every minimum spanning tree, so deaths do not depend on tie-breaking.
std::vector<double> mst_edge_lengths(std::span<const double> data, std::size_t n, int dim) {
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<char> in_tree(n, 0);
    std::vector<double> lengths;
    lengths.reserve(n > 0 ? n - 1 : 0);

    std::size_t current = 0;
    in_tree[0] = 1;
    for (std::size_t added = 1; added < n; ++added) {
        const double* pc = data.data() + current * static_cast<std::size_t>(dim);
        for (std::size_t j = 0; j < n; ++j) {
            if (in_tree[j]) continue;
            double d = point_distance(pc, data.data() + j * static_cast<std::size_t>(dim), dim);
            if (d < best[j]) best[j] = d;
        }
        std::size_t pick = n;
        double pick_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (!in_tree[j] && best[j] < pick_d) {
                pick_d = best[j];
                pick = j;
            }
        }
        in_tree[pick] = 1;
        lengths.push_back(pick_d);
        current = pick;
    }
    return lengths;
}

}  // namespace

Barcode0 barcode0(std::span<const double> data, std::size_t n, int dim) {
    if (n == 0) throw param_error("barcode0: empty point set");
    if (dim <= 0) throw param_error("barcode0: dimension must be positive");
    if (data.size() != n * static_cast<std::size_t>(dim))
        throw param_error("barcode0: data size does not match n*dim");

    Barcode0 bc;
    bc.n_points = n;
    std::vector<double> lengths = mst_edge_lengths(data, n, dim);
    bc.deaths.reserve(lengths.size());
    for (double w : lengths)
        if (w > 0.0) bc.deaths.push_back(w / 2.0);
    std::sort(bc.deaths.begin(), bc.deaths.end());
    return bc;
}

Barcode0 barcode0(const dynsys::Trajectory& cloud) {
    return barcode0(std::span<const double>(cloud.data), cloud.size(), cloud.dim);
}

int betti_at(const Barcode0& bc, double eps) {
    if (eps < 0.0) throw param_error("betti_at: eps must be >= 0");
    auto it = std::upper_bound(bc.deaths.begin(), bc.deaths.end(), eps);
    return static_cast<int>(bc.deaths.end() - it) + 1;
}

void BettiCurve::validate() const {
    if (radii.empty() || radii.size() != counts.size())
        throw param_error("betti curve: radii/counts must be non-empty and equal length");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw param_error("betti curve: radii must be strictly increasing");
        if (counts[i] < 1) throw param_error("betti curve: counts must be >= 1");
        if (i > 0 && counts[i] > counts[i - 1])
            throw param_error("betti curve: counts must be non-increasing");
    }
}

BettiCurve betti_curve_of(const Barcode0& bc, const std::vector<double>& radii) {
    if (radii.empty()) throw param_error("betti_curve: empty radius grid");
    BettiCurve c;
    c.radii = radii;
    c.counts.reserve(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw param_error("betti_curve: radii must be strictly increasing");
        c.counts.push_back(betti_at(bc, radii[i]));
    }
    return c;
}

BettiCurve betti_curve(std::span<const double> data, std::size_t n, int dim,
                       const std::vector<double>& radii) {
    return betti_curve_of(barcode0(data, n, dim), radii);
}

BettiCurve betti_curve(const dynsys::Trajectory& cloud, const std::vector<double>& radii) {
    return betti_curve_of(barcode0(cloud), radii);
}

namespace {

// Right-constant evaluation; v must be >= radii[0].
int eval_step(const BettiCurve& c, double v) {
    auto it = std::upper_bound(c.radii.begin(), c.radii.end(), v);
    return c.counts[static_cast<std::size_t>(it - c.radii.begin()) - 1];
}

// Checks f(v) >= g(v + alpha) for all v in [r0, hi]. Both curves are right-constant
// step functions, so it suffices to check the left end and every point where either
// side can change value: breakpoints of f, and g's breakpoints shifted left by alpha.
bool dominates_shifted(const BettiCurve& f, const BettiCurve& g, double alpha, double r0,
                       double hi) {
    if (eval_step(f, r0) < eval_step(g, r0 + alpha)) return false;
    for (double b : f.radii) {
        if (b <= r0 || b > hi) continue;
        if (eval_step(f, b) < eval_step(g, b + alpha)) return false;
    }
    for (double b : g.radii) {
        double v = b - alpha;
        if (v <= r0 || v > hi) continue;
        if (eval_step(f, v) < eval_step(g, b)) return false;
    }
    return true;
}

}  // namespace

double interleaving_distance(const BettiCurve& f, const BettiCurve& g) {
    f.validate();
    g.validate();
    if (f.radii.front() != g.radii.front())
        throw param_error("interleaving_distance: curves must share their first radius");
    if (f.counts.back() != g.counts.back())
        return std::numeric_limits<double>::infinity();

    const double r0 = f.radii.front();
    const double hi = std::max(f.radii.back(), g.radii.back());

    std::vector<double> breaks;
    breaks.reserve(f.radii.size() + g.radii.size());
    breaks.insert(breaks.end(), f.radii.begin(), f.radii.end());
    breaks.insert(breaks.end(), g.radii.begin(), g.radii.end());

    std::vector<double> cands;
    cands.reserve(breaks.size() * breaks.size() / 2 + 1);
    cands.push_back(0.0);
    for (std::size_t i = 0; i < breaks.size(); ++i)
        for (std::size_t j = 0; j < breaks.size(); ++j) {
            double d = breaks[i] - breaks[j];
            if (d > 0.0) cands.push_back(d);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    auto feasible = [&](double alpha) {
        return dominates_shifted(f, g, alpha, r0, hi) &&
               dominates_shifted(g, f, alpha, r0, hi);
    };

    // Feasibility is monotone in alpha (both curves are non-increasing), so the
    // smallest feasible candidate is found by binary search.
    std::size_t lo = 0, hi_idx = cands.size() - 1;
    if (feasible(cands[0])) return cands[0];
    // cands.back() >= max breakpoint difference, which is always feasible when the
    // final counts agree.
    while (hi_idx - lo > 1) {
        std::size_t mid = lo + (hi_idx - lo) / 2;
        if (feasible(cands[mid]))
            hi_idx = mid;
        else
            lo = mid;
    }
    return cands[hi_idx];
}

CorrespondenceBound distortion_identity(std::span<const double> za, int dim_a,
                                        std::span<const double> zb, int dim_b,
                                        std::size_t n) {
    if (dim_a <= 0 || dim_b <= 0) throw param_error("distortion_identity: bad dimension");
    if (za.size() != n * static_cast<std::size_t>(dim_a) ||
        zb.size() != n * static_cast<std::size_t>(dim_b))
        throw param_error("distortion_identity: clouds must both have n points");
    CorrespondenceBound out;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double da = point_distance(za.data() + i * dim_a, za.data() + j * dim_a, dim_a);
            double db = point_distance(zb.data() + i * dim_b, zb.data() + j * dim_b, dim_b);
            double d = std::abs(da - db);
            if (d > out.value) {
                out.value = d;
                out.arg_i = i;
                out.arg_j = j;
            }
        }
    return out;
}

CorrespondenceBound distortion_identity(const dynsys::Trajectory& za,
                                        const dynsys::Trajectory& zb) {
    if (za.size() != zb.size())
        throw param_error("distortion_identity: clouds must have equal sizes");
    return distortion_identity(std::span<const double>(za.data), za.dim,
                               std::span<const double>(zb.data), zb.dim, za.size());
}

double cloud_diameter(std::span<const double> data, std::size_t n, int dim) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = point_distance(data.data() + i * dim, data.data() + j * dim, dim);
            if (d > best) best = d;
        }
    return best;
}

std::string barcode_to_json(const Barcode0& bc) {
    nlohmann::json bars = nlohmann::json::array();
    for (double d : bc.deaths) bars.push_back({0.0, d});
    bars.push_back({0.0, "inf"});
    nlohmann::json j;
    j["n_points"] = bc.n_points;
    j["bars"] = bars;
    return j.dump(2) + "\n";
}

Barcode0 barcode_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw param_error(std::string("barcode JSON: ") + e.what());
    }
    if (!j.contains("n_points") || !j.contains("bars"))
        throw param_error("barcode JSON: missing n_points or bars");
    Barcode0 bc;
    bc.n_points = j["n_points"].get<std::size_t>();
    std::size_t infinite = 0;
    for (const auto& bar : j["bars"]) {
        if (!bar.is_array() || bar.size() != 2)
            throw param_error("barcode JSON: each bar must be [birth, death]");
        if (bar[1].is_string()) {
            if (bar[1].get<std::string>() != "inf")
                throw param_error("barcode JSON: unknown death string");
            ++infinite;
            continue;
        }
        bc.deaths.push_back(bar[1].get<double>());
    }
    if (infinite != 1) throw param_error("barcode JSON: exactly one infinite bar expected");
    std::sort(bc.deaths.begin(), bc.deaths.end());
    return bc;
}

void save_barcode_json(const Barcode0& bc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << barcode_to_json(bc);
    if (!out) throw param_error("write failed: " + path);
}

Barcode0 load_barcode_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return barcode_from_json(ss.str());
}

void save_betti_csv(const BettiCurve& curve, const std::string& path) {
    curve.validate();
    std::ofstream out(path);
    if (!out) throw param_error("cannot open for writing: " + path);
    out << "epsilon,betti0\n";
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
        out << fmt17(curve.radii[i]) << "," << curve.counts[i] << "\n";
    if (!out) throw param_error("write failed: " + path);
}

BettiCurve load_betti_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw param_error("cannot open: " + path);
    std::string line;
    std::size_t line_no = 0;
    BettiCurve c;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("epsilon", 0) == 0) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw param_error(path + ": line " + std::to_string(line_no) + ": expected 2 columns");
        try {
            c.radii.push_back(std::stod(line.substr(0, comma)));
            c.counts.push_back(std::stoi(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw param_error(path + ": line " + std::to_string(line_no) + ": cannot parse row");
        }
    }
    c.validate();
    return c;
}

}  // namespace chaoskit::ph0
