#include "dimcal/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dimcal/errors.hpp"
#include "dimcal/pca.hpp"
#include "dimcal/rng.hpp"

namespace dimcal {

namespace {

constexpr double kSigmaLo = 1e-20;
constexpr double kSigmaHi = 1e20;
constexpr double kQFloor = 1e-12;

// Natural-log entropy of the Gaussian kernel row at inverse bandwidth beta,
// shifted by the row's minimum squared distance for stable exponents.
// Returns exp(H), i.e. the row perplexity, and fills the kernel weights.
double row_perplexity(const Eigen::ArrayXd& shifted_sq, double beta,
                      Eigen::ArrayXd& weights) {
    weights = (-beta * shifted_sq).exp();
    const double total = weights.sum();
    const double weighted = (weights * shifted_sq).sum();
    const double entropy = std::log(total) + beta * weighted / total;
    return std::exp(entropy);
}

// Squared-distance matrix of the current layout via the Gram identity,
// mapped in place to Student-t weights w_ij = 1 / (1 + d^2), zero diagonal.
void student_weights(const Matrix& X, Vector& sq, Matrix& W) {
    sq = X.rowwise().squaredNorm();
    W.noalias() = -2.0 * X * X.transpose();
    W.colwise() += sq;
    W.rowwise() += sq.transpose();
    W.array() = 1.0 / (1.0 + W.array().max(0.0));
    W.diagonal().setZero();
}

double evaluate_kl(const Matrix& P, const Matrix& W, double sum_w,
                   std::int64_t& clamp_events) {
    const Index n = P.rows();
    double kl = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double p = P(i, j);
            if (i == j || p <= 0.0) continue;
            double q = W(i, j) / sum_w;
            if (q < kQFloor) {
                q = kQFloor;
                ++clamp_events;
            }
            kl += p * std::log(p / q);
        }
    }
    return kl;
}

inline double step_sign(double x) {
    if (x == 0.0) return 0.0;
    return x < 0.0 ? -1.0 : 1.0;
}

} // namespace

ConditionalAffinities conditional_affinities(const DistanceMatrix& dist,
                                             double perplexity, double tol,
                                             int max_iter) {
    const Index n = dist.size();
    if (!(perplexity > 1.0) || !(perplexity < static_cast<double>(n)))
        throw ParameterError("perplexity must lie strictly between 1 and n = " +
                             std::to_string(n) + ", got " +
                             std::to_string(perplexity));
    if (!(tol > 0.0))
        throw ParameterError("calibration tolerance must be positive");
    if (max_iter < 1)
        throw ParameterError("calibration iteration budget must be at least 1");

    ConditionalAffinities out;
    out.conditional = Matrix::Zero(n, n);
    out.sigmas = Vector::Zero(n);
    out.achieved_perplexity = Vector::Zero(n);

    Eigen::ArrayXd shifted(n - 1);
    Eigen::ArrayXd weights(n - 1);
    std::vector<Index> others(static_cast<std::size_t>(n - 1));

    for (Index i = 0; i < n; ++i) {
        Index m = 0;
        double min_sq = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = dist(i, j);
            const double d2 = d * d;
            shifted[m] = d2;
            others[static_cast<std::size_t>(m)] = j;
            min_sq = std::min(min_sq, d2);
            ++m;
        }
        shifted -= min_sq;

        double lo = kSigmaLo;
        double hi = kSigmaHi;
        double sigma = 0.0;
        double achieved = 0.0;
        bool converged = false;
        for (int iter = 0; iter < max_iter; ++iter) {
            sigma = 0.5 * (lo + hi);
            const double beta = 1.0 / (2.0 * sigma * sigma);
            achieved = row_perplexity(shifted, beta, weights);
            if (std::abs(achieved - perplexity) <= tol) {
                converged = true;
                break;
            }
            // Perplexity grows with sigma.
            if (achieved > perplexity)
                hi = sigma;
            else
                lo = sigma;
        }
        if (!converged) out.unconverged.push_back(i);

        const double total = weights.sum();
        for (Index m2 = 0; m2 < n - 1; ++m2)
            out.conditional(i, others[static_cast<std::size_t>(m2)]) =
                weights[m2] / total;
        out.sigmas[i] = sigma;
        out.achieved_perplexity[i] = achieved;
    }
    return out;
}

namespace {

Matrix symmetrize_checked(const Matrix& conditional) {
    const Index n = conditional.rows();
    if (conditional.cols() != n || n < 2)
        throw DataError("conditional affinity matrix must be square with n >= 2");
    if (!all_finite(conditional))
        throw DataError("conditional affinity matrix contains non-finite entries");
    for (Index i = 0; i < n; ++i) {
        if (conditional(i, i) != 0.0)
            throw DataError("conditional affinity diagonal must be zero (row " +
                            std::to_string(i) + ")");
        const double row_sum = conditional.row(i).sum();
        if (std::abs(row_sum - 1.0) > 1e-8)
            throw DataError("conditional affinity row " + std::to_string(i) +
                            " sums to " + std::to_string(row_sum) +
                            ", expected 1");
    }
    return (conditional + conditional.transpose()) / (2.0 * static_cast<double>(n));
}

} // namespace

AffinityModel symmetrize(const ConditionalAffinities& cond,
                         double target_perplexity) {
    AffinityModel model;
    model.joint = symmetrize_checked(cond.conditional);
    model.sigmas = cond.sigmas;
    model.target_perplexity = target_perplexity;
    model.achieved_perplexity = cond.achieved_perplexity;
    model.unconverged = cond.unconverged;
    return model;
}

AffinityModel symmetrize(const Matrix& conditional) {
    AffinityModel model;
    model.joint = symmetrize_checked(conditional);
    return model;
}

AffinityModel compute_affinities(const DistanceMatrix& dist, double perplexity,
                                 double tol, int max_iter) {
    return symmetrize(conditional_affinities(dist, perplexity, tol, max_iter),
                      perplexity);
}

Matrix low_dim_similarities(const Matrix& embedding) {
    const Index n = embedding.rows();
    if (n < 2) throw ParameterError("similarities need at least 2 points");
    if (!all_finite(embedding))
        throw DataError("embedding contains non-finite entries");
    Matrix W = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double w =
                1.0 / (1.0 + (embedding.row(i) - embedding.row(j)).squaredNorm());
            W(i, j) = w;
            W(j, i) = w;
        }
    }
    return W / W.sum();
}

double kl_divergence(const Matrix& P, const Matrix& Q,
                     std::int64_t* clamp_events) {
    const Index n = P.rows();
    if (Q.rows() != n || P.cols() != n || Q.cols() != n)
        throw ParameterError("KL divergence needs two square matrices of equal size");
    std::int64_t clamps = 0;
    double kl = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double p = P(i, j);
            if (i == j || p <= 0.0) continue;
            double q = Q(i, j);
            if (q < kQFloor) {
                q = kQFloor;
                ++clamps;
            }
            kl += p * std::log(p / q);
        }
    }
    if (clamp_events) *clamp_events += clamps;
    return kl;
}

Matrix kl_gradient(const Matrix& P, const Matrix& embedding) {
    const Index n = embedding.rows();
    if (P.rows() != n || P.cols() != n)
        throw ParameterError("affinity matrix does not match the embedding size");
    Vector sq;
    Matrix W(n, n);
    student_weights(embedding, sq, W);
    const double sum_w = W.sum();
    W.array() = (P.array() - W.array() / sum_w) * W.array();
    const Vector row_sums = W.rowwise().sum();
    Matrix grad = W * embedding;
    grad = 4.0 * (row_sums.asDiagonal() * embedding - grad);
    return grad;
}

Matrix tsne_pca_init(const Matrix& data, int q, double scale) {
    const Index n = data.rows();
    if (q < 1) throw ParameterError("output dimension must be at least 1");
    if (n < 2) throw ParameterError("initialization needs at least 2 rows");
    const Index avail =
        std::min<Index>(q, std::min<Index>(n - 1, data.cols()));
    Matrix init = Matrix::Zero(n, q);
    const PcaBasis basis = fit_pca(data, avail);
    init.leftCols(avail) = project(basis, data);
    const double sd0 =
        std::sqrt(init.col(0).squaredNorm() / static_cast<double>(n - 1));
    if (sd0 > 0.0) init *= scale / sd0;
    return init;
}

Matrix add_init_jitter(Matrix init, std::uint64_t seed, double sd) {
    if (!(sd >= 0.0)) throw ParameterError("jitter sd must be non-negative");
    if (sd == 0.0) return init;
    Rng rng(seed);
    for (Index i = 0; i < init.rows(); ++i)
        for (Index j = 0; j < init.cols(); ++j) init(i, j) += sd * rng.normal();
    return init;
}

Matrix tsne_random_init(Index n, int q, std::uint64_t seed, double scale) {
    if (n < 2 || q < 1)
        throw ParameterError("random initialization needs n >= 2 and q >= 1");
    Rng rng(seed);
    Matrix init(n, q);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < q; ++j) init(i, j) = scale * rng.normal();
    return init;
}

EmbeddingRun optimize_embedding(const AffinityModel& model, Matrix init,
                                const TsneOptions& options) {
    const Index n = model.size();
    if (model.joint.cols() != n || n < 2)
        throw ParameterError("affinity model must be square with n >= 2");
    if (init.rows() != n)
        throw ParameterError("initial layout has " + std::to_string(init.rows()) +
                             " rows, affinities have " + std::to_string(n));
    if (init.cols() < 1) throw ParameterError("layout must have at least 1 column");
    if (options.max_iter < 0) throw ParameterError("max_iter must be non-negative");
    if (options.kl_eval_interval < 1)
        throw ParameterError("kl_eval_interval must be at least 1");
    if (!(options.learning_rate > 0.0))
        throw ParameterError("learning rate must be positive");
    if (!all_finite(init)) throw DataError("initial layout is not finite");

    const Matrix& P = model.joint;
    const Index q = init.cols();

    EmbeddingRun run;
    run.options = options;
    run.perplexity = options.perplexity;
    run.seed = options.seed;
    run.iterations = options.max_iter;

    Matrix X = std::move(init);
    X.rowwise() -= X.colwise().mean();

    Matrix velocity = Matrix::Zero(n, q);
    Matrix gains = Matrix::Ones(n, q);
    Matrix grad(n, q);
    Matrix W(n, n);
    Vector sq;

    double momentum = options.initial_momentum;

    const auto evaluate = [&](const Matrix& Y) {
        student_weights(Y, sq, W);
        return evaluate_kl(P, W, W.sum(), run.kl_clamp_events);
    };

    run.initial_kl = evaluate(X);
    double best_kl = run.initial_kl;
    Matrix best_X = X;
    int best_iter = 0;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        if (iter == options.momentum_switch_iter)
            momentum = options.final_momentum;
        const double lie =
            iter < options.exaggeration_iter ? options.exaggeration : 1.0;

        student_weights(X, sq, W);
        const double sum_w = W.sum();
        W.array() = (lie * P.array() - W.array() / sum_w) * W.array();
        const Vector row_sums = W.rowwise().sum();
        grad.noalias() = W * X;
        grad = 4.0 * (row_sums.asDiagonal() * X - grad);

        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < q; ++j) {
                const double g = grad(i, j);
                double gain = gains(i, j);
                gain = step_sign(g) != step_sign(velocity(i, j)) ? gain + 0.2
                                                                 : gain * 0.8;
                gain = std::max(gain, 0.01);
                gains(i, j) = gain;
                velocity(i, j) =
                    momentum * velocity(i, j) - options.learning_rate * gain * g;
            }
        }
        X += velocity;
        X.rowwise() -= X.colwise().mean();

        if (!all_finite(X))
            throw RunError("embedding became non-finite at iteration " +
                               std::to_string(iter + 1),
                           iter + 1);

        const int done = iter + 1;
        if (done % options.kl_eval_interval == 0 || done == options.max_iter) {
            const double kl = evaluate(X);
            if (kl < best_kl) {
                best_kl = kl;
                best_X = X;
                best_iter = done;
            }
        }
    }

    run.embedding = std::move(best_X);
    run.final_kl = best_kl;
    run.best_iteration = best_iter;
    return run;
}

EmbeddingRun run_tsne(const Matrix& data, const TsneOptions& options) {
    const DistanceMatrix dist = pairwise_distances(data);
    const AffinityModel model = compute_affinities(
        dist, options.perplexity, options.affinity_tol, options.affinity_max_iter);
    Matrix init = add_init_jitter(
        tsne_pca_init(data, options.output_dim, options.init_scale),
        options.seed, options.init_jitter_sd);
    return optimize_embedding(model, std::move(init), options);
}

EmbeddingRun run_tsne(const DistanceMatrix& dist, const TsneOptions& options) {
    const AffinityModel model = compute_affinities(
        dist, options.perplexity, options.affinity_tol, options.affinity_max_iter);
    Matrix init = tsne_random_init(dist.size(), options.output_dim, options.seed,
                                   options.init_scale);
    return optimize_embedding(model, std::move(init), options);
}

} // namespace dimcal
