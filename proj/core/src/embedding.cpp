#include "chaoskit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "chaoskit/common.hpp"
#include "chaoskit/ph0.hpp"

namespace chaoskit::embedding {

dynsys::Trajectory sliding_window_embed(const Series& s, const EmbeddingParams& p) {
    if (p.tau < 1) throw param_error("embedding tau must be >= 1");
    if (p.m < 1) throw param_error("embedding dimension m must be >= 1");
    const std::size_t len = s.size();
    const std::size_t span = static_cast<std::size_t>(p.m - 1) * static_cast<std::size_t>(p.tau);
    if (len <= span)
        throw param_error("series too short for m=" + std::to_string(p.m) +
                          ", tau=" + std::to_string(p.tau));
    const std::size_t n = len - span;

    dynsys::Trajectory tr;
    tr.dim = p.m;
    tr.grid = {0.0, 1.0, n};
    tr.data.resize(n * static_cast<std::size_t>(p.m));
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < p.m; ++k)
            tr.data[i * p.m + k] = s.values[i + static_cast<std::size_t>(k) * p.tau];
    return tr;
}

namespace {

// Equiquantile bin index per sample, by rank. Ties keep their original order
// (stable sort), which makes assignments deterministic.
std::vector<int> rank_bins(const std::vector<double>& v, int bins) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<int> bin(n);
    for (std::size_t r = 0; r < n; ++r)
        bin[order[r]] = static_cast<int>(r * static_cast<std::size_t>(bins) / n);
    return bin;
}

double histogram_mi(const std::vector<int>& bin, int bins, int tau) {
    const std::size_t n = bin.size();
    const std::size_t m = n - static_cast<std::size_t>(tau);
    std::vector<double> joint(static_cast<std::size_t>(bins) * bins, 0.0);
    std::vector<double> px(bins, 0.0), py(bins, 0.0);
    for (std::size_t t = 0; t < m; ++t)
        joint[static_cast<std::size_t>(bin[t]) * bins + bin[t + tau]] += 1.0;
    double mi = 0.0;
    for (int i = 0; i < bins; ++i)
        for (int j = 0; j < bins; ++j) {
            px[i] += joint[static_cast<std::size_t>(i) * bins + j];
            py[j] += joint[static_cast<std::size_t>(i) * bins + j];
        }
    for (int i = 0; i < bins; ++i)
        for (int j = 0; j < bins; ++j) {
            double c = joint[static_cast<std::size_t>(i) * bins + j];
            if (c == 0.0) continue;
            mi += (c / m) * std::log(c * m / (px[i] * py[j]));
        }
    return mi;
}

}  // namespace

DelaySelection select_delay_ami(const Series& s, int max_tau, int bins) {
    const std::size_t n = s.size();
    if (max_tau < 2) throw param_error("max_tau must be >= 2");
    if (n < static_cast<std::size_t>(max_tau) + 2)
        throw param_error("series too short for max_tau");
    auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    if (*mn == *mx) throw param_error("constant series has undefined mutual information");

    int B = bins > 0 ? bins : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    B = std::min<int>(B, static_cast<int>(n));
    std::vector<int> bin = rank_bins(s.values, B);

    DelaySelection out;
    out.mi.resize(static_cast<std::size_t>(max_tau) + 1);
    for (int tau = 0; tau <= max_tau; ++tau) out.mi[tau] = histogram_mi(bin, B, tau);

    // Independence floor: for m independent pairs over a BxB histogram,
    // E[MI] ~ (B-1)^2 / (2m) nats (chi-square asymptotics). If the whole curve sits
    // near that floor there is no structure to find a minimum in.
    const double m_min = static_cast<double>(n) - max_tau;
    const double floor_mi = (B - 1.0) * (B - 1.0) / (2.0 * m_min);
    double peak = 0.0;
    for (int tau = 1; tau <= max_tau; ++tau) peak = std::max(peak, out.mi[tau]);
    if (peak <= 2.0 * floor_mi) {
        out.tau = max_tau;
        out.warning = true;
        return out;
    }

    for (int tau = 1; tau < max_tau; ++tau) {
        if (out.mi[tau] < out.mi[tau - 1] && out.mi[tau] < out.mi[tau + 1]) {
            out.tau = tau;
            return out;
        }
    }
    out.tau = max_tau;
    out.warning = true;
    return out;
}

namespace {

double maxnorm_dist(const double* s, std::size_t i, std::size_t j, int m, int tau) {
    double best = 0.0;
    for (int k = 0; k < m; ++k) {
        double d = std::abs(s[i + static_cast<std::size_t>(k) * tau] -
                            s[j + static_cast<std::size_t>(k) * tau]);
        if (d > best) best = d;
    }
    return best;
}

}  // namespace

DimSelection select_dim_fnn(const Series& s, int tau, int max_m, double threshold) {
    if (tau < 1) throw param_error("tau must be >= 1");
    if (max_m < 2) throw param_error("max_m must be >= 2");
    if (threshold <= 0.0) throw param_error("threshold must be > 0");
    const std::size_t n = s.size();
    // E(m) for m = 1..max_m+1 needs windows of m+1 coordinates.
    const std::size_t need = static_cast<std::size_t>(max_m + 1) * tau + 1;
    if (n <= need) throw param_error("series too short for max_m at this tau");

    const double* v = s.values.data();
    std::vector<double> E(max_m + 2, 0.0), Estar(max_m + 2, 0.0);
    for (int m = 1; m <= max_m + 1; ++m) {
        // Index range where the (m+1)-coordinate window also exists.
        const std::size_t nm1 = n - static_cast<std::size_t>(m) * tau;
        double sum_a = 0.0, sum_star = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < nm1; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t nn = nm1;
            for (std::size_t j = 0; j < nm1; ++j) {
                if (j == i) continue;
                double d = maxnorm_dist(v, i, j, m, tau);
                if (d > 0.0 && d < best) {
                    best = d;
                    nn = j;
                }
            }
            if (nn == nm1) continue;  // all duplicates of i; skip anchor
            double d_next = maxnorm_dist(v, i, nn, m + 1, tau);
            sum_a += d_next / best;
            sum_star += std::abs(v[i + static_cast<std::size_t>(m) * tau] -
                                 v[nn + static_cast<std::size_t>(m) * tau]);
            ++used;
        }
        if (used == 0) throw numeric_error("Cao E(m): no usable anchors (degenerate series)");
        E[m] = sum_a / static_cast<double>(used);
        Estar[m] = sum_star / static_cast<double>(used);
    }

    DimSelection out;
    out.e1.resize(max_m);
    out.e2.resize(max_m);
    for (int m = 1; m <= max_m; ++m) {
        out.e1[m - 1] = E[m + 1] / E[m];
        out.e2[m - 1] = Estar[m] == 0.0 ? 1.0 : Estar[m + 1] / Estar[m];
    }

    bool noise_like = true;
    for (int m = 1; m <= max_m; ++m)
        if (std::abs(out.e2[m - 1] - 1.0) >= 0.1) noise_like = false;

    int chosen = 0;
    for (int m = 1; m < max_m; ++m) {
        if (std::abs(out.e1[m] - out.e1[m - 1]) < threshold) {
            chosen = m + 1;
            break;
        }
    }
    if (chosen == 0) {
        out.m = max_m;
        out.warning = true;
        return out;
    }
    out.m = chosen;
    out.warning = noise_like;
    return out;
}

Series local_projection_denoise(const Series& s, int embed_dim, double radius,
                                int projection_dim, int iterations) {
    if (embed_dim < 2) throw param_error("embed_dim must be >= 2");
    if (projection_dim < 1 || projection_dim >= embed_dim)
        throw param_error("projection_dim must be in [1, embed_dim)");
    if (radius <= 0.0) throw param_error("neighborhood radius must be > 0");
    if (iterations < 1) throw param_error("iterations must be >= 1");

    const int q = embed_dim;
    Series cur = s;
    for (int pass = 0; pass < iterations; ++pass) {
        dynsys::Trajectory emb = sliding_window_embed(cur, {1, q});
        const std::size_t nw = emb.size();
        std::vector<double> corrected(emb.data);

        Eigen::MatrixXd cov(q, q);
        Eigen::VectorXd mu(q), zi(q);
        std::vector<std::size_t> nbrs;
        for (std::size_t i = 0; i < nw; ++i) {
            nbrs.clear();
            const double* pi = emb.data.data() + i * q;
            for (std::size_t j = 0; j < nw; ++j)
                if (point_distance(pi, emb.data.data() + j * q, q) <= radius)
                    nbrs.push_back(j);
            if (nbrs.size() < static_cast<std::size_t>(q) + 1) continue;

            mu.setZero();
            for (std::size_t j : nbrs)
                for (int k = 0; k < q; ++k) mu[k] += emb.data[j * q + k];
            mu /= static_cast<double>(nbrs.size());

            cov.setZero();
            for (std::size_t j : nbrs) {
                for (int k = 0; k < q; ++k) zi[k] = emb.data[j * q + k] - mu[k];
                cov.noalias() += zi * zi.transpose();
            }
            cov /= static_cast<double>(nbrs.size());

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
            if (es.info() != Eigen::Success)
                throw numeric_error("covariance eigendecomposition failed");
            // Eigenvalues ascend; keep the top projection_dim directions.
            const auto& V = es.eigenvectors();
            for (int k = 0; k < q; ++k) zi[k] = emb.data[i * q + k] - mu[k];
            Eigen::VectorXd proj = mu;
            for (int k = q - projection_dim; k < q; ++k)
                proj.noalias() += V.col(k) * (V.col(k).dot(zi));
            for (int k = 0; k < q; ++k) corrected[i * q + k] = proj[k];
        }

        // Average each sample's corrected copies over the windows containing it.
        std::vector<double> acc(cur.size(), 0.0);
        std::vector<int> cnt(cur.size(), 0);
        for (std::size_t i = 0; i < nw; ++i)
            for (int k = 0; k < q; ++k) {
                acc[i + static_cast<std::size_t>(k)] += corrected[i * q + k];
                cnt[i + static_cast<std::size_t>(k)] += 1;
            }
        for (std::size_t t = 0; t < cur.size(); ++t)
            cur.values[t] = acc[t] / static_cast<double>(cnt[t]);
    }
    return cur;
}

double default_denoise_radius(const Series& s, int embed_dim) {
    dynsys::Trajectory emb = sliding_window_embed(s, {1, embed_dim});
    return 0.05 * ph0::cloud_diameter(std::span<const double>(emb.data), emb.size(), emb.dim);
}

}  // namespace chaoskit::embedding
