#ifndef DIMCAL_TSNE_HPP
#define DIMCAL_TSNE_HPP

#include <cstdint>
#include <vector>

#include "dimcal/matrix.hpp"
#include "dimcal/neighbors.hpp"

namespace dimcal {

/**
 * @file tsne.hpp
 * @brief Exact t-SNE: perplexity-calibrated affinities and KL minimization.
 *
 * No tree or interpolation approximations are used; every pairwise term is
 * computed exactly, which keeps the gradient verifiable against finite
 * differences and is affordable at the sample sizes this toolkit targets
 * (n up to a few thousand).
 */

/// Row-stochastic conditional affinities p_{j|i} with their calibrated
/// bandwidths. `unconverged` lists rows where the bisection missed the
/// perplexity tolerance within its iteration budget (never a fatal error).
struct ConditionalAffinities {
    Matrix conditional; ///< n x n, zero diagonal, rows sum to 1
    Vector sigmas;
    Vector achieved_perplexity;
    std::vector<Index> unconverged;
};

/// Symmetrized joint distribution p_ij = (p_{i|j} + p_{j|i}) / (2n).
struct AffinityModel {
    Matrix joint; ///< n x n symmetric, zero diagonal, total mass 1
    Vector sigmas;
    double target_perplexity = 0.0;
    Vector achieved_perplexity;
    std::vector<Index> unconverged;

    Index size() const { return joint.rows(); }
};

struct TsneOptions {
    double perplexity = 30.0;
    int output_dim = 2;
    std::uint64_t seed = 0;

    int max_iter = 1000;
    double learning_rate = 200.0;
    double initial_momentum = 0.5;
    double final_momentum = 0.8;
    int momentum_switch_iter = 250;
    double exaggeration = 12.0;
    int exaggeration_iter = 250; ///< early exaggeration is active while iter < this

    double affinity_tol = 1e-5;
    int affinity_max_iter = 200;

    /// KL is evaluated at initialization, every this many iterations, and at
    /// the last iterate; the best evaluated iterate is what the run returns.
    int kl_eval_interval = 25;

    double init_scale = 1e-4;     ///< std of the leading init coordinate
    double init_jitter_sd = 1e-5; ///< seeded Gaussian jitter on top of the PCA init
};

/// One embedding with everything needed to reproduce it.
struct EmbeddingRun {
    Matrix embedding; ///< n x q, the best-KL evaluated iterate
    double perplexity = 0.0;
    std::uint64_t seed = 0;
    double final_kl = 0.0;
    double initial_kl = 0.0;
    int iterations = 0;     ///< optimizer iterations executed
    int best_iteration = 0; ///< iteration of the returned iterate (0 = init)
    std::int64_t kl_clamp_events = 0;
    TsneOptions options;
};

/**
 * Calibrate per-point bandwidths so each row's perplexity 2^H matches
 * `perplexity` within `tol`, by bisection on sigma over [1e-20, 1e20]
 * (perplexity is monotone in sigma). Requires 1 < perplexity < n.
 */
ConditionalAffinities conditional_affinities(const DistanceMatrix& dist,
                                             double perplexity,
                                             double tol = 1e-5,
                                             int max_iter = 200);

/// Throws DataError unless `conditional` is square with zero diagonal and
/// rows summing to 1 within 1e-8. Bandwidths carry through to the model.
AffinityModel symmetrize(const ConditionalAffinities& cond,
                         double target_perplexity);

/// Bare-matrix variant for inputs with no calibration metadata.
AffinityModel symmetrize(const Matrix& conditional);

/// conditional_affinities followed by symmetrize.
AffinityModel compute_affinities(const DistanceMatrix& dist, double perplexity,
                                 double tol = 1e-5, int max_iter = 200);

/// Student-t (df = 1) similarities q_ij, normalized over all ordered pairs.
Matrix low_dim_similarities(const Matrix& embedding);

/**
 * KL(P || Q) summed over i != j with 0 log 0 = 0. Where p_ij > 0 and
 * q_ij < 1e-12, q is clamped at 1e-12; each clamp is counted into
 * *clamp_events when given (never silently).
 */
double kl_divergence(const Matrix& P, const Matrix& Q,
                     std::int64_t* clamp_events = nullptr);

/// Analytic gradient of kl_divergence with respect to the embedding:
/// grad_i = 4 sum_j (p_ij - q_ij) (1 + ||y_i - y_j||^2)^-1 (y_i - y_j).
Matrix kl_gradient(const Matrix& P, const Matrix& embedding);

/// Scores on the first q principal components, rescaled so the leading
/// coordinate has standard deviation `scale`. Degenerate (zero-variance) data
/// yields all zeros; missing trailing components are zero-padded.
Matrix tsne_pca_init(const Matrix& data, int q, double scale);

/// Adds seeded N(0, sd^2) to every entry, row-major draw order.
Matrix add_init_jitter(Matrix init, std::uint64_t seed, double sd);

/// Pure N(0, scale^2) layout for distance-only inputs.
Matrix tsne_random_init(Index n, int q, std::uint64_t seed, double scale);

/**
 * Gradient descent with momentum, adaptive per-coordinate gains, and early
 * exaggeration, from the given initial layout. KL is tracked against the
 * un-exaggerated P; the best evaluated iterate is returned, so final_kl never
 * exceeds the KL at initialization. Throws RunError (with the iteration
 * index) if the layout stops being finite.
 */
EmbeddingRun optimize_embedding(const AffinityModel& model, Matrix init,
                                const TsneOptions& options);

/// Full pipeline from data: distances, affinities, PCA init plus jitter,
/// optimization. Deterministic in (data, options) including the seed.
EmbeddingRun run_tsne(const Matrix& data, const TsneOptions& options);

/// Distance-matrix variant; initialization is seeded random instead of PCA.
EmbeddingRun run_tsne(const DistanceMatrix& dist, const TsneOptions& options);

} // namespace dimcal

#endif
