#include "dimcal/datagen.hpp"

#include <cmath>
#include <sstream>

#include "dimcal/errors.hpp"
#include "dimcal/matrix_io.hpp"
#include "dimcal/rng.hpp"

namespace dimcal {

GeneratedData generate_links(int points_per_circle, std::uint64_t seed) {
    (void)seed; // placement is deterministic, no jitter
    if (points_per_circle < 3) {
        throw ParameterError("generate_links: need at least 3 points per circle");
    }
    const int m = points_per_circle;
    Matrix points(2 * m, 3);
    Labels labels(static_cast<std::size_t>(2 * m));
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * M_PI * k / m;
        points(k, 0) = std::cos(theta);
        points(k, 1) = std::sin(theta);
        points(k, 2) = 0.0;
        labels[static_cast<std::size_t>(k)] = 0;
    }
    // Second circle in the y = 0 plane, center shifted by one radius along x,
    // so it threads through the first.
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * M_PI * k / m;
        points(m + k, 0) = 1.0 + std::cos(theta);
        points(m + k, 1) = 0.0;
        points(m + k, 2) = std::sin(theta);
        labels[static_cast<std::size_t>(m + k)] = 1;
    }
    return GeneratedData{std::move(points), std::move(labels)};
}

Eigen::Vector3d trefoil_point(double t) {
    return {std::sin(t) + 2.0 * std::sin(2.0 * t),
            std::cos(t) - 2.0 * std::cos(2.0 * t),
            -std::sin(3.0 * t)};
}

Matrix generate_trefoil(int n_points, std::uint64_t seed) {
    (void)seed;
    if (n_points < 3) {
        throw ParameterError("generate_trefoil: need at least 3 points");
    }
    Matrix points(n_points, 3);
    for (int k = 0; k < n_points; ++k) {
        const double t = 2.0 * M_PI * k / n_points;
        points.row(k) = trefoil_point(t).transpose();
    }
    return points;
}

Matrix load_mammoth(const std::string& path, int n_subsample, std::uint64_t seed) {
    const ParsedMatrix parsed = read_matrix(path);
    if (parsed.values.cols() != 3) {
        std::ostringstream msg;
        msg << path << ": expected a 3-column point cloud, found "
            << parsed.values.cols() << " columns";
        throw IngestionError(msg.str());
    }
    const Index n = parsed.values.rows();
    if (n_subsample < 1 || n_subsample > n) {
        std::ostringstream msg;
        msg << "load_mammoth: n_subsample = " << n_subsample
            << " outside [1, " << n << "]";
        throw ParameterError(msg.str());
    }
    Rng rng(seed);
    const auto picks =
        sample_without_replacement(static_cast<int>(n), n_subsample, rng);
    Matrix out(n_subsample, 3);
    for (int i = 0; i < n_subsample; ++i) {
        out.row(i) = parsed.values.row(picks[static_cast<std::size_t>(i)]);
    }
    return out;
}

GeneratedData generate_gaussian_clusters(int clusters, int points_per_cluster,
                                         int dim, double mean_scale,
                                         double cov_low, double cov_high,
                                         std::uint64_t seed) {
    if (clusters < 1 || points_per_cluster < 1 || dim < 1) {
        throw ParameterError("generate_gaussian_clusters: counts must be positive");
    }
    if (clusters > dim) {
        std::ostringstream msg;
        msg << "generate_gaussian_clusters: clusters = " << clusters
            << " exceeds dim = " << dim << " (means are mean_scale * e_i)";
        throw ParameterError(msg.str());
    }
    if (!(cov_low > 0.0) || cov_high < cov_low) {
        throw ParameterError("generate_gaussian_clusters: need 0 < cov_low <= cov_high");
    }

    Rng rng(seed);
    const int n = clusters * points_per_cluster;
    Matrix points(n, dim);
    Labels labels(static_cast<std::size_t>(n));
    Vector sd(dim);
    int row = 0;
    for (int c = 0; c < clusters; ++c) {
        for (int j = 0; j < dim; ++j) {
            sd(j) = std::sqrt(cov_low + (cov_high - cov_low) * rng.uniform());
        }
        for (int k = 0; k < points_per_cluster; ++k, ++row) {
            for (int j = 0; j < dim; ++j) {
                const double mean = (j == c) ? mean_scale : 0.0;
                points(row, j) = mean + sd(j) * rng.normal();
            }
            labels[static_cast<std::size_t>(row)] = c;
        }
    }
    return GeneratedData{std::move(points), std::move(labels)};
}

DatasetBundle embed_and_noise(const Matrix& signal, Index target_dim,
                              double noise_sd, std::uint64_t seed,
                              std::optional<Labels> labels) {
    const Index n = signal.rows();
    const Index r = signal.cols();
    if (target_dim < r) {
        std::ostringstream msg;
        msg << "embed_and_noise: target_dim = " << target_dim
            << " smaller than signal dimension " << r;
        throw ParameterError(msg.str());
    }
    if (noise_sd < 0.0) {
        throw ParameterError("embed_and_noise: noise_sd must be nonnegative");
    }
    if (labels && static_cast<Index>(labels->size()) != n) {
        throw ParameterError("embed_and_noise: label count does not match rows");
    }

    DatasetBundle bundle;
    bundle.signal = signal;
    bundle.embedded = Matrix::Zero(n, target_dim);
    bundle.embedded.leftCols(r) = signal;
    bundle.noise_sd = noise_sd;
    bundle.seed = seed;
    bundle.labels = std::move(labels);

    if (noise_sd == 0.0) {
        bundle.observed = bundle.embedded;
        return bundle;
    }
    Rng rng(seed);
    bundle.observed = bundle.embedded;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < target_dim; ++j) {
            bundle.observed(i, j) += noise_sd * rng.normal();
        }
    }
    return bundle;
}

} // namespace dimcal
