#include "dimcal/neighbors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dimcal/errors.hpp"

namespace dimcal {

DistanceMatrix pairwise_distances(const Matrix& data) {
    const Index n = data.rows();
    if (n < 2) {
        throw ParameterError("pairwise_distances: need at least 2 rows");
    }
    if (!all_finite(data)) {
        throw DataError("pairwise_distances: non-finite entries");
    }
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double dist = (data.row(i) - data.row(j)).norm();
            d(i, j) = dist;
            d(j, i) = dist;
        }
    }
    return DistanceMatrix{std::move(d)};
}

RankTable::RankTable(const DistanceMatrix& dist) {
    const Index n = dist.size();
    order_.resize(n, n - 1);
    rank_.setZero(n, n);

    std::vector<int> idx(static_cast<std::size_t>(n - 1));
    for (Index i = 0; i < n; ++i) {
        int fill = 0;
        for (Index j = 0; j < n; ++j) {
            if (j != i) idx[static_cast<std::size_t>(fill++)] = static_cast<int>(j);
        }
        const Matrix& d = dist.values;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const double da = d(i, a);
            const double db = d(i, b);
            if (da != db) return da < db;
            return a < b; // tie-break by ascending index
        });
        for (Index pos = 0; pos < n - 1; ++pos) {
            const int j = idx[static_cast<std::size_t>(pos)];
            order_(i, pos) = j;
            rank_(i, j) = static_cast<int>(pos) + 1;
        }
    }
}

RankTable rank_table(const DistanceMatrix& dist) {
    return RankTable(dist);
}

std::vector<std::vector<int>> knn_sets(const RankTable& table, int k) {
    const Index n = table.size();
    if (k < 1 || k > n - 1) {
        std::ostringstream msg;
        msg << "knn_sets: k = " << k << " outside [1, " << (n - 1) << "]";
        throw ParameterError(msg.str());
    }
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        auto& set = sets[static_cast<std::size_t>(i)];
        set.resize(static_cast<std::size_t>(k));
        for (int pos = 1; pos <= k; ++pos) {
            set[static_cast<std::size_t>(pos - 1)] = table.neighbor(i, pos);
        }
    }
    return sets;
}

} // namespace dimcal
