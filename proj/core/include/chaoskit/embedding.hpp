#pragma once

#include <vector>

#include "chaoskit/series.hpp"
#include "chaoskit/trajectory.hpp"

namespace chaoskit::embedding {

/// Delay-embedding parameters: m coordinates spaced tau samples apart.
struct EmbeddingParams {
    int tau = 1;
    int m = 2;
};

/// Point i = (s[i], s[i+tau], ..., s[i+(m-1)*tau]), for i = 0..N-1 with
/// N = len - (m-1)*tau. The result carries a unit time grid (t0 = 0, dt = 1);
/// abscissas downstream are in samples. Requires tau >= 1, m >= 1, N >= 1.
dynsys::Trajectory sliding_window_embed(const Series& s, const EmbeddingParams& p);

struct DelaySelection {
    int tau = 0;
    /// Set when no reliable minimum exists (flat MI or no local minimum); tau is
    /// then max_tau and should be treated as a fallback, not a measurement.
    bool warning = false;
    /// mi[k] = histogram mutual information at lag k, k = 0..max_tau (nats).
    std::vector<double> mi;
};

/// Smallest tau >= 1 that is a strict local minimum of the equiquantile-histogram
/// mutual information between s[0..n-tau) and s[tau..n). bins = 0 selects
/// ceil(sqrt(n)). Binning is by rank, so the selected tau is invariant under
/// monotone affine maps of the data. A constant series has undefined MI and is a
/// param_error. Minima are accepted only if the MI curve is distinguishable from
/// the chi-square independence floor (see implementation note), otherwise the
/// warning flag is set and tau = max_tau.
DelaySelection select_delay_ami(const Series& s, int max_tau, int bins = 0);

struct DimSelection {
    int m = 0;
    bool warning = false;
    /// e1[k] = Cao E1(k+1); e2[k] = Cao E2(k+1), k = 0..max_m-1.
    std::vector<double> e1;
    std::vector<double> e2;
};

/// Cao's method: M = m+1 for the smallest m with |E1(m+1) - E1(m)| < threshold
/// (E1 saturation). If E1 never saturates, or E2 stays within 0.1 of 1 everywhere
/// (the signature of i.i.d. noise), the warning flag is set; the unsaturated case
/// returns max_m. Distances use the max-norm as in Cao's original formulation.
DimSelection select_dim_fnn(const Series& s, int tau, int max_m, double threshold = 0.05);

/// One pass of locally-projective noise reduction: embed at embed_dim with unit
/// delay, project each point's radius-neighborhood onto the top projection_dim
/// principal directions of the neighborhood's centered covariance, then replace
/// every scalar sample by the average of its corrected copies over the windows
/// containing it. Neighborhoods with fewer than embed_dim+1 points are left
/// uncorrected. iterations >= 1 repeats the pass; the output length always equals
/// the input length. radius must be > 0 (see default_denoise_radius).
Series local_projection_denoise(const Series& s, int embed_dim, double radius,
                                int projection_dim = 2, int iterations = 1);

/// 5% of the diameter of the unit-delay embedding at embed_dim; the documented
/// default neighborhood radius for local_projection_denoise.
double default_denoise_radius(const Series& s, int embed_dim = 3);

}  // namespace chaoskit::embedding
