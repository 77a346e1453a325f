#ifndef DIMCAL_METRICS_HPP
#define DIMCAL_METRICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dimcal/matrix.hpp"
#include "dimcal/neighbors.hpp"

namespace dimcal {

enum class MetricName { trustworthiness, shepard_goodness, silhouette };

/// Which high-dimensional reference an embedding was scored against: the
/// observed (noisy) data or the clean signal it was extracted from.
enum class ReferenceFrame { raw_data, signal };

struct MetricReport {
    MetricName metric{};
    double value = 0.0;
    /// True when the metric is undefined for this input (for rank correlation:
    /// a distance vector with zero variance). `value` is NaN in that case.
    bool degenerate = false;
    ReferenceFrame frame = ReferenceFrame::raw_data;
    std::optional<int> k;
    std::optional<int> subsample_size;
    std::optional<std::uint64_t> subsample_seed;
};

/**
 * Rank-based neighborhood preservation in [1 - 3/2 * (n/k - 1), 1]:
 *   1 - 2 / (n k (2n - 3k - 1)) * sum_i sum_{j in U_k(i)} (r(i, j) - k)
 * where U_k(i) are the k nearest embedding neighbors of i that are not among
 * its k nearest reference neighbors, and r(i, j) is j's reference rank.
 * Requires n >= 4 and k < (2n - 1) / 3 so the normalizer stays positive.
 */
MetricReport trustworthiness(const Matrix& reference, const Matrix& embedding,
                             int k);

/// Same quantity with the outer sum over a seeded subsample of m rows and the
/// leading factor 2 / (m k (2n - 3k - 1)); ranks stay relative to all n rows.
MetricReport trustworthiness_subsampled(const Matrix& reference,
                                        const Matrix& embedding, int k, int m,
                                        std::uint64_t seed);

struct PairSubsample {
    int m = 0; ///< number of rows whose within-subset pairs are scored
    std::uint64_t seed = 0;
};

/**
 * Spearman rank correlation (average ranks for ties) between reference and
 * embedding distances over all unordered pairs, optionally restricted to the
 * pairs within a seeded row subsample. A zero-variance distance vector on
 * either side makes the report degenerate rather than zero.
 */
MetricReport shepard_goodness(const Matrix& reference, const Matrix& embedding,
                              std::optional<PairSubsample> subsample = {});

/// Mean silhouette width over all points; singleton clusters score 0, as does
/// any point whose within and between dissimilarities are both zero.
/// Requires at least two distinct labels.
MetricReport silhouette(const Matrix& points, const Labels& labels);

/**
 * Building blocks shared with the sweep harness, which scores many embeddings
 * against the same reference and precomputes the reference side once.
 */

/// Trustworthiness from precomputed rank tables. `sample_rows` empty means all
/// rows; otherwise the outer sum runs over those rows with the subsampled
/// normalizer. Rows must be valid indices without duplicates.
double trustworthiness_from_tables(const RankTable& reference,
                                   const RankTable& embedding, int k,
                                   const std::vector<Index>& sample_rows = {});

/// Distances over unordered pairs in a fixed order: (0,1), (0,2), ..., or the
/// same pattern over `rows` when given. Both frames must use the same order.
std::vector<double> pair_distances(const Matrix& points,
                                   const std::vector<Index>& rows = {});

/// Fractional ranks, 1-based, ties averaged.
std::vector<double> average_ranks(const std::vector<double>& values);

struct SpearmanResult {
    double rho = 0.0;
    bool degenerate = false;
};

SpearmanResult spearman(const std::vector<double>& a,
                        const std::vector<double>& b);

/// Spearman where one side's fractional ranks are already computed.
SpearmanResult spearman_against_ranks(const std::vector<double>& ranks_a,
                                      const std::vector<double>& b_values);

} // namespace dimcal

#endif
