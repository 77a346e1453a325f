#include "dimcal/pca.hpp"

#include <sstream>

#include "dimcal/errors.hpp"

namespace dimcal {

PcaBasis fit_pca(const Matrix& data, Index r) {
    const Index n = data.rows();
    const Index p = data.cols();
    if (n < 2) {
        throw ParameterError("fit_pca: need at least 2 rows");
    }
    const Index max_r = std::min(n - 1, p);
    if (r < 1 || r > max_r) {
        std::ostringstream msg;
        msg << "fit_pca: r = " << r << " outside [1, " << max_r << "]";
        throw ParameterError(msg.str());
    }
    if (!all_finite(data)) {
        throw DataError("fit_pca: matrix has non-finite entries");
    }

    PcaBasis basis;
    basis.mean = data.colwise().mean();
    Matrix centered = data.rowwise() - basis.mean.transpose();

    Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
    const Vector& singular = svd.singularValues();

    basis.eigenvalues = (singular.array().square() / static_cast<double>(n - 1))
                            .max(0.0)
                            .matrix();
    basis.eigenvectors = svd.matrixV().leftCols(r);

    // Sign canonicalization: largest-magnitude entry of each column positive,
    // ties resolved by the first index attaining the maximum.
    for (Index c = 0; c < r; ++c) {
        Index argmax = 0;
        double best = -1.0;
        for (Index i = 0; i < p; ++i) {
            const double mag = std::abs(basis.eigenvectors(i, c));
            if (mag > best) {
                best = mag;
                argmax = i;
            }
        }
        if (basis.eigenvectors(argmax, c) < 0.0) {
            basis.eigenvectors.col(c) = -basis.eigenvectors.col(c);
        }
    }

    const double total = basis.eigenvalues.sum();
    basis.variance_retained =
        total > 0.0 ? basis.eigenvalues.head(r).sum() / total : 1.0;
    return basis;
}

Matrix project(const PcaBasis& basis, const Matrix& data) {
    if (data.cols() != basis.input_dim()) {
        std::ostringstream msg;
        msg << "project: data has " << data.cols() << " columns, basis expects "
            << basis.input_dim();
        throw ParameterError(msg.str());
    }
    return (data.rowwise() - basis.mean.transpose()) * basis.eigenvectors;
}

Matrix inverse_transform(const PcaBasis& basis, const Matrix& projected) {
    if (projected.cols() != basis.rank()) {
        std::ostringstream msg;
        msg << "inverse_transform: input has " << projected.cols()
            << " columns, basis rank is " << basis.rank();
        throw ParameterError(msg.str());
    }
    return (projected * basis.eigenvectors.transpose()).rowwise() +
           basis.mean.transpose();
}

std::vector<std::pair<Index, double>> scree(const PcaBasis& basis) {
    std::vector<std::pair<Index, double>> out;
    out.reserve(static_cast<std::size_t>(basis.eigenvalues.size()));
    for (Index i = 0; i < basis.eigenvalues.size(); ++i) {
        out.emplace_back(i + 1, basis.eigenvalues(i));
    }
    return out;
}

} // namespace dimcal
