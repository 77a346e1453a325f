#ifndef DIMCAL_MATRIX_HPP
#define DIMCAL_MATRIX_HPP

#include <Eigen/Dense>
#include <vector>

namespace dimcal {

// Rows are observations, columns are coordinates. Everything in the library
// moves through this one dense type.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Integer class assignment per row (cluster/link membership).
using Labels = std::vector<int>;

inline bool all_finite(const Matrix& m) {
    return m.allFinite();
}

} // namespace dimcal

#endif
