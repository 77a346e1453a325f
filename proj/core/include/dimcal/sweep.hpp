#ifndef DIMCAL_SWEEP_HPP
#define DIMCAL_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimcal/matrix.hpp"
#include "dimcal/metrics.hpp"
#include "dimcal/pca.hpp"
#include "dimcal/tsne.hpp"

namespace dimcal {

/**
 * @file sweep.hpp
 * @brief Perplexity sweep: many embeddings per grid point, each scored
 * against both the observed data and its extracted (or provided) signal.
 */

struct SubsampleSpec {
    int m = 0;
    std::uint64_t seed = 0;
};

enum class Aggregation { mean, max };

struct SweepConfig {
    std::vector<double> grid; ///< strictly increasing, each in (1, n)
    int repeats = 10;
    int k = 10; ///< trustworthiness neighborhood size

    /// Signal dimension for PCA extraction; required unless a signal matrix
    /// is passed to run_sweep directly.
    std::optional<Index> signal_dim;

    /// When set, trustworthiness sums over this row subsample and the rank
    /// correlation scores only pairs within it. The same subsample is used
    /// for every cell and both reference frames.
    std::optional<SubsampleSpec> metric_subsample;

    TsneOptions tsne; ///< perplexity and seed are overwritten per cell

    std::uint64_t base_seed = 0;
    Aggregation aggregation = Aggregation::mean;
    int workers = 0; ///< 0 = one per hardware thread
    bool keep_embeddings = false;
};

struct SweepRecord {
    double perplexity = 0.0;
    int repeat = 0;
    std::uint64_t seed = 0;
    double trust_raw = 0.0;
    double trust_signal = 0.0;
    double shep_raw = 0.0;
    double shep_signal = 0.0;
    double final_kl = 0.0;
    std::optional<Matrix> embedding; ///< kept only when requested
};

struct SweepFailure {
    double perplexity = 0.0;
    int repeat = 0;
    std::uint64_t seed = 0;
    std::string message;
};

struct PerplexitySummary {
    double perplexity = 0.0;
    int successes = 0;
    int failures = 0;
    double mean_trust_raw = 0.0;
    double mean_trust_signal = 0.0;
    double max_trust_raw = 0.0;
    double max_trust_signal = 0.0;
    double mean_shep_raw = 0.0;
    double mean_shep_signal = 0.0;
    double mean_final_kl = 0.0;
};

struct SweepSummary {
    std::vector<PerplexitySummary> per_perplexity;
    double optimal_vs_raw = 0.0;
    double optimal_vs_signal = 0.0;
    Aggregation aggregation = Aggregation::mean;
    /// False when any grid point produced zero successful runs, in which case
    /// the optima are meaningless and must not be consumed.
    bool valid = false;
};

struct SweepResult {
    std::vector<SweepRecord> records; ///< grid-major, then repeat order
    std::vector<SweepFailure> failures;
    SweepSummary summary;
};

/// PCA signal extraction: scores on the first r components. Per-cell seeds
/// come from cell_seed() in rng.hpp.
std::pair<Matrix, PcaBasis> extract_signal(const Matrix& observed, Index r);

/**
 * Run the full grid. The observed-data distance matrix, per-grid-point
 * affinities, and the shared PCA initial layout are computed once; cells then
 * run independently (in parallel when workers allow) and results are
 * identical regardless of scheduling. A cell that throws becomes a
 * SweepFailure; remaining cells still run.
 */
SweepResult run_sweep(const Matrix& observed, const SweepConfig& config,
                      const std::optional<Matrix>& signal = std::nullopt);

/// Aggregation over records; exposed so stored records can be re-summarized.
SweepSummary summarize(const std::vector<SweepRecord>& records,
                       const std::vector<SweepFailure>& failures,
                       const std::vector<double>& grid, Aggregation aggregation);

struct ExternalEvaluation {
    MetricReport trust_raw;
    MetricReport trust_signal;
    MetricReport shep_raw;
    MetricReport shep_signal;
    std::optional<MetricReport> silhouette_report;
};

/// Score an embedding produced elsewhere against observed data and signal.
/// The signal is extracted at dimension r unless given explicitly.
ExternalEvaluation evaluate_external(const Matrix& observed,
                                     const Matrix& embedding, int k,
                                     const std::optional<Matrix>& signal,
                                     std::optional<Index> signal_dim,
                                     std::optional<SubsampleSpec> subsample = {},
                                     const std::optional<Labels>& labels = {});

/// Maps a perplexity tuned on a fraction rho of the data to the equivalent
/// full-data value: perp_prime / rho. Requires rho in (0, 1], perp_prime > 1.
double scale_perplexity_for_subsample(double perp_prime, double rho);

} // namespace dimcal

#endif
