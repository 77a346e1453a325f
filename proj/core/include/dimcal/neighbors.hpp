#ifndef DIMCAL_NEIGHBORS_HPP
#define DIMCAL_NEIGHBORS_HPP

#include <vector>

#include "dimcal/matrix.hpp"

namespace dimcal {

/**
 * @file neighbors.hpp
 * @brief Exact pairwise distances, neighbor orderings, and rank queries.
 *
 * Distances are exact O(n^2) Euclidean, computed once per unordered pair.
 * Neighbor order ties are broken by ascending index; that convention is fixed
 * because trustworthiness depends on ranks and must agree between reference
 * frames.
 */

struct DistanceMatrix {
    Matrix values; ///< n x n, symmetric, zero diagonal

    Index size() const { return values.rows(); }
    double operator()(Index i, Index j) const { return values(i, j); }
};

/**
 * For every point i, the other n - 1 indices sorted by ascending distance
 * from i, plus an O(1) inverse lookup rank(i, j) in {1, ..., n - 1}.
 */
class RankTable {
public:
    explicit RankTable(const DistanceMatrix& dist);

    Index size() const { return order_.rows(); }

    // j-th closest point to i (1-based nearness position `pos` in [1, n-1]).
    int neighbor(Index i, Index pos) const { return order_(i, pos - 1); }

    // Rank of j among i's neighbors, 1 = nearest. Requires i != j.
    int rank(Index i, Index j) const { return rank_(i, j); }

    const Eigen::MatrixXi& order() const { return order_; }

private:
    Eigen::MatrixXi order_; ///< n x (n-1)
    Eigen::MatrixXi rank_;  ///< n x n, diagonal unused (0)
};

// Throws DataError on non-finite input; requires n >= 2.
DistanceMatrix pairwise_distances(const Matrix& data);

RankTable rank_table(const DistanceMatrix& dist);

// First k neighbors of every point, in nearness order. 1 <= k <= n - 1.
std::vector<std::vector<int>> knn_sets(const RankTable& table, int k);

} // namespace dimcal

#endif
