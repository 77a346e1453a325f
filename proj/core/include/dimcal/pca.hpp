#ifndef DIMCAL_PCA_HPP
#define DIMCAL_PCA_HPP

#include <utility>
#include <vector>

#include "dimcal/matrix.hpp"

namespace dimcal {

/**
 * @file pca.hpp
 * @brief PCA signal extraction: fit, project, inverse transform, scree data.
 *
 * The basis is computed from the singular value decomposition of the centered
 * data matrix rather than an eigendecomposition of the covariance, which is
 * the numerically stable route. Eigenvalues are reported as squared singular
 * values divided by (n - 1).
 */

struct PcaBasis {
    Vector mean;         ///< column means of the fit data, length p
    Matrix eigenvectors; ///< p x r, orthonormal columns, descending eigenvalue order
    Vector eigenvalues;  ///< all min(n, p) eigenvalues, nonincreasing, clamped at 0
    double variance_retained = 0.0; ///< share of total variance in the first r components

    Index input_dim() const { return eigenvectors.rows(); }
    Index rank() const { return eigenvectors.cols(); }
};

/**
 * Fit a rank-r basis to `data` (n x p). Requires n >= 2 and
 * 1 <= r <= min(n - 1, p); throws ParameterError otherwise, DataError on
 * non-finite entries.
 *
 * Eigenvector signs are canonicalized so the largest-magnitude entry of each
 * column is positive, making the fit deterministic.
 */
PcaBasis fit_pca(const Matrix& data, Index r);

// (data - mean) * V_r; the rows of the result are the signal estimate Y.
Matrix project(const PcaBasis& basis, const Matrix& data);

// projected * V_r^T + mean; the zero-error inverse on the fitted subspace.
Matrix inverse_transform(const PcaBasis& basis, const Matrix& projected);

// Full descending eigenvalue sequence as (1-based component index, eigenvalue)
// pairs, ready for plot emission. No elbow detection is performed.
std::vector<std::pair<Index, double>> scree(const PcaBasis& basis);

} // namespace dimcal

#endif
