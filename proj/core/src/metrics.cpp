#include "dimcal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "dimcal/errors.hpp"
#include "dimcal/rng.hpp"

namespace dimcal {

namespace {

void check_frames(const Matrix& reference, const Matrix& embedding) {
    if (reference.rows() != embedding.rows())
        throw ParameterError("reference has " + std::to_string(reference.rows()) +
                             " rows, embedding has " +
                             std::to_string(embedding.rows()));
}

void check_trust_params(Index n, int k) {
    if (n < 4) throw ParameterError("trustworthiness needs at least 4 points");
    if (k < 1) throw ParameterError("neighborhood size k must be at least 1");
    if (3 * static_cast<Index>(k) + 1 >= 2 * n)
        throw ParameterError("k = " + std::to_string(k) +
                             " too large for n = " + std::to_string(n) +
                             "; need k < (2n - 1) / 3");
}

} // namespace

double trustworthiness_from_tables(const RankTable& reference,
                                   const RankTable& embedding, int k,
                                   const std::vector<Index>& sample_rows) {
    const Index n = reference.size();
    if (embedding.size() != n)
        throw ParameterError("rank tables cover different point counts");
    check_trust_params(n, k);

    double penalty = 0.0;
    const auto accumulate_row = [&](Index i) {
        for (int pos = 1; pos <= k; ++pos) {
            const Index j = embedding.neighbor(i, pos);
            const int r = reference.rank(i, j);
            if (r > k) penalty += static_cast<double>(r - k);
        }
    };

    double outer_count;
    if (sample_rows.empty()) {
        for (Index i = 0; i < n; ++i) accumulate_row(i);
        outer_count = static_cast<double>(n);
    } else {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (const Index i : sample_rows) {
            if (i < 0 || i >= n)
                throw ParameterError("subsample row index out of range");
            if (seen[static_cast<std::size_t>(i)])
                throw ParameterError("subsample rows must be distinct");
            seen[static_cast<std::size_t>(i)] = true;
            accumulate_row(i);
        }
        outer_count = static_cast<double>(sample_rows.size());
    }

    const double norm = outer_count * static_cast<double>(k) *
                        static_cast<double>(2 * n - 3 * static_cast<Index>(k) - 1);
    return 1.0 - 2.0 / norm * penalty;
}

MetricReport trustworthiness(const Matrix& reference, const Matrix& embedding,
                             int k) {
    check_frames(reference, embedding);
    const RankTable ref_table(pairwise_distances(reference));
    const RankTable emb_table(pairwise_distances(embedding));
    MetricReport report;
    report.metric = MetricName::trustworthiness;
    report.k = k;
    report.value = trustworthiness_from_tables(ref_table, emb_table, k);
    return report;
}

MetricReport trustworthiness_subsampled(const Matrix& reference,
                                        const Matrix& embedding, int k, int m,
                                        std::uint64_t seed) {
    check_frames(reference, embedding);
    const Index n = reference.rows();
    if (m < 1 || static_cast<Index>(m) > n)
        throw ParameterError("subsample size must lie in [1, n]");
    Rng rng(seed);
    const std::vector<Index> rows =
        sample_without_replacement(n, static_cast<Index>(m), rng);
    const RankTable ref_table(pairwise_distances(reference));
    const RankTable emb_table(pairwise_distances(embedding));
    MetricReport report;
    report.metric = MetricName::trustworthiness;
    report.k = k;
    report.subsample_size = m;
    report.subsample_seed = seed;
    report.value = trustworthiness_from_tables(ref_table, emb_table, k, rows);
    return report;
}

std::vector<double> pair_distances(const Matrix& points,
                                   const std::vector<Index>& rows) {
    std::vector<double> out;
    if (rows.empty()) {
        const Index n = points.rows();
        out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
                out.push_back((points.row(i) - points.row(j)).norm());
    } else {
        const std::size_t m = rows.size();
        out.reserve(m * (m - 1) / 2);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                out.push_back(
                    (points.row(rows[a]) - points.row(rows[b])).norm());
    }
    return out;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t m = values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    std::vector<double> ranks(m);
    std::size_t start = 0;
    while (start < m) {
        std::size_t stop = start + 1;
        while (stop < m && values[order[stop]] == values[order[start]]) ++stop;
        // 1-based positions start+1 .. stop averaged over the tie run.
        const double rank = 0.5 * static_cast<double>(start + 1 + stop);
        for (std::size_t t = start; t < stop; ++t) ranks[order[t]] = rank;
        start = stop;
    }
    return ranks;
}

SpearmanResult spearman_against_ranks(const std::vector<double>& ranks_a,
                                      const std::vector<double>& b_values) {
    if (ranks_a.size() != b_values.size())
        throw ParameterError("rank correlation needs equally long vectors");
    const std::size_t m = ranks_a.size();
    if (m < 2)
        throw ParameterError("rank correlation needs at least 2 values");
    const std::vector<double> ranks_b = average_ranks(b_values);

    const double count = static_cast<double>(m);
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        mean_a += ranks_a[t];
        mean_b += ranks_b[t];
    }
    mean_a /= count;
    mean_b /= count;

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double da = ranks_a[t] - mean_a;
        const double db = ranks_b[t] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }

    SpearmanResult result;
    if (saa == 0.0 || sbb == 0.0) {
        result.degenerate = true;
        result.rho = std::numeric_limits<double>::quiet_NaN();
        return result;
    }
    result.rho = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
    return result;
}

SpearmanResult spearman(const std::vector<double>& a,
                        const std::vector<double>& b) {
    return spearman_against_ranks(average_ranks(a), b);
}

MetricReport shepard_goodness(const Matrix& reference, const Matrix& embedding,
                              std::optional<PairSubsample> subsample) {
    check_frames(reference, embedding);
    const Index n = reference.rows();
    if (n < 3) throw ParameterError("distance correlation needs at least 3 points");
    if (!all_finite(reference) || !all_finite(embedding))
        throw DataError("metric inputs must be finite");

    std::vector<Index> rows;
    MetricReport report;
    report.metric = MetricName::shepard_goodness;
    if (subsample) {
        if (subsample->m < 3 || static_cast<Index>(subsample->m) > n)
            throw ParameterError("pair subsample size must lie in [3, n]");
        Rng rng(subsample->seed);
        rows = sample_without_replacement(n, static_cast<Index>(subsample->m), rng);
        report.subsample_size = subsample->m;
        report.subsample_seed = subsample->seed;
    }

    const SpearmanResult rho = spearman(pair_distances(reference, rows),
                                        pair_distances(embedding, rows));
    report.value = rho.rho;
    report.degenerate = rho.degenerate;
    return report;
}

MetricReport silhouette(const Matrix& points, const Labels& labels) {
    const Index n = points.rows();
    if (static_cast<Index>(labels.size()) != n)
        throw ParameterError("label count does not match the point count");
    if (n < 2) throw ParameterError("silhouette needs at least 2 points");

    std::unordered_map<int, std::vector<Index>> members;
    for (Index i = 0; i < n; ++i) members[labels[static_cast<std::size_t>(i)]].push_back(i);
    if (members.size() < 2)
        throw ParameterError("silhouette needs at least 2 distinct labels");

    const DistanceMatrix dist = pairwise_distances(points);

    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
        const int own = labels[static_cast<std::size_t>(i)];
        const std::size_t own_size = members[own].size();
        if (own_size == 1) continue; // singleton scores 0

        double within = 0.0;
        for (const Index j : members[own])
            if (j != i) within += dist(i, j);
        const double a = within / static_cast<double>(own_size - 1);

        double b = std::numeric_limits<double>::infinity();
        for (const auto& [label, rows] : members) {
            if (label == own) continue;
            double sum = 0.0;
            for (const Index j : rows) sum += dist(i, j);
            b = std::min(b, sum / static_cast<double>(rows.size()));
        }

        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }

    MetricReport report;
    report.metric = MetricName::silhouette;
    report.value = total / static_cast<double>(n);
    return report;
}

} // namespace dimcal
