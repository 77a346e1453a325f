#ifndef DIMCAL_DATAGEN_HPP
#define DIMCAL_DATAGEN_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "dimcal/matrix.hpp"

namespace dimcal {

/**
 * @file datagen.hpp
 * @brief Synthetic signal-plus-noise datasets.
 *
 * Each generator produces a low-dimensional signal Y; embed_and_noise() pads
 * it with zero columns to the target dimension and adds isotropic Gaussian
 * noise, yielding the observed matrix the reduction methods actually see.
 * All generators are deterministic in their arguments, seed included.
 */

struct GeneratedData {
    Matrix points;
    std::optional<Labels> labels;
};

// The framework triple: signal, its zero-padded embedding, and the noisy
// observation, plus the metadata needed to reproduce it.
struct DatasetBundle {
    Matrix signal;   ///< n x r
    Matrix embedded; ///< n x p, equals [signal | 0]
    Matrix observed; ///< n x p, embedded + noise
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
    std::optional<Labels> labels;
};

/**
 * Two interlocked unit circles in 3-D: one in the z = 0 plane centered at the
 * origin, one in the y = 0 plane centered at (1, 0, 0), each sampled at
 * equally spaced angles. Placement is deterministic; the seed is accepted for
 * signature uniformity and does not perturb the points. Labels are 0/1 by
 * circle.
 */
GeneratedData generate_links(int points_per_circle, std::uint64_t seed);

// One point of the trefoil curve at parameter t:
//   (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t).
Eigen::Vector3d trefoil_point(double t);

// n_points samples of the trefoil curve at equally spaced t in [0, 2*pi).
Matrix generate_trefoil(int n_points, std::uint64_t seed);

/**
 * Load a 3-column point cloud from a delimited text file and subsample
 * n_subsample rows uniformly without replacement. The row order of the result
 * is the (seeded) sampling order; n_subsample equal to the row count returns
 * a permutation of the input.
 */
Matrix load_mammoth(const std::string& path, int n_subsample, std::uint64_t seed);

/**
 * `clusters` Gaussian clusters in `dim` dimensions. Cluster i has mean
 * mean_scale * e_i and a diagonal covariance with per-cluster entries drawn
 * uniformly from [cov_low, cov_high]. Requires clusters <= dim and
 * cov_low > 0. Draw order: per cluster, first the `dim` covariance entries,
 * then `dim` normals per point, row-major.
 */
GeneratedData generate_gaussian_clusters(int clusters, int points_per_cluster,
                                         int dim, double mean_scale,
                                         double cov_low, double cov_high,
                                         std::uint64_t seed);

/**
 * Embed a signal into `target_dim` dimensions by zero padding and add
 * i.i.d. Normal(0, noise_sd^2) to every entry (row-major draw order). With
 * noise_sd = 0 the observed matrix equals the embedding exactly. Labels, when
 * given, are carried through untouched.
 */
DatasetBundle embed_and_noise(const Matrix& signal, Index target_dim,
                              double noise_sd, std::uint64_t seed,
                              std::optional<Labels> labels = std::nullopt);

} // namespace dimcal

#endif
