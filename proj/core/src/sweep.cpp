#include "dimcal/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "dimcal/errors.hpp"
#include "dimcal/rng.hpp"

namespace dimcal {

namespace {

void validate_config(const SweepConfig& config, Index n) {
    if (config.grid.empty()) throw ParameterError("perplexity grid is empty");
    double prev = 1.0;
    for (const double p : config.grid) {
        if (!(p > prev))
            throw ParameterError("perplexity grid must be strictly ascending "
                                 "with every value > 1");
        if (!(p < static_cast<double>(n)))
            throw ParameterError("grid perplexity " + std::to_string(p) +
                                 " must be below n = " + std::to_string(n));
        prev = p;
    }
    if (config.repeats < 1) throw ParameterError("repeats must be at least 1");
    if (config.k < 1) throw ParameterError("k must be at least 1");
    if (3 * static_cast<Index>(config.k) + 1 >= 2 * n)
        throw ParameterError("k = " + std::to_string(config.k) +
                             " too large for n = " + std::to_string(n));
    if (config.metric_subsample) {
        const int m = config.metric_subsample->m;
        if (m < 3 || static_cast<Index>(m) > n)
            throw ParameterError("metric subsample size must lie in [3, n]");
    }
    if (config.workers < 0)
        throw ParameterError("workers must be non-negative (0 = auto)");
}

// Runs body(0..jobs-1) on `workers` threads pulling from a shared counter.
// body must not throw; result ordering is the caller's responsibility.
void run_jobs(int workers, std::size_t jobs,
              const std::function<void(std::size_t)>& body) {
    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : static_cast<int>(hw);
    }
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), jobs));
    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) body(j);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t j = next.fetch_add(1);
                if (j >= jobs) return;
                body(j);
            }
        });
    }
    for (auto& t : pool) t.join();
}

double aggregate_trust(const PerplexitySummary& s, Aggregation agg,
                       ReferenceFrame frame) {
    if (agg == Aggregation::mean)
        return frame == ReferenceFrame::raw_data ? s.mean_trust_raw
                                                 : s.mean_trust_signal;
    return frame == ReferenceFrame::raw_data ? s.max_trust_raw
                                             : s.max_trust_signal;
}

} // namespace

std::pair<Matrix, PcaBasis> extract_signal(const Matrix& observed, Index r) {
    PcaBasis basis = fit_pca(observed, r);
    Matrix scores = project(basis, observed);
    return {std::move(scores), std::move(basis)};
}

SweepResult run_sweep(const Matrix& observed, const SweepConfig& config,
                      const std::optional<Matrix>& signal) {
    const Index n = observed.rows();
    if (n < 4) throw ParameterError("sweep needs at least 4 rows");
    if (!all_finite(observed)) throw DataError("observed data is not finite");
    validate_config(config, n);

    Matrix signal_matrix;
    if (signal) {
        if (signal->rows() != n)
            throw ParameterError("signal row count does not match observed data");
        if (!all_finite(*signal)) throw DataError("signal matrix is not finite");
        signal_matrix = *signal;
    } else {
        if (!config.signal_dim)
            throw ParameterError(
                "signal_dim is required when no signal matrix is given");
        signal_matrix = extract_signal(observed, *config.signal_dim).first;
    }

    // Reference-frame work shared by every cell.
    const DistanceMatrix observed_dist = pairwise_distances(observed);
    const RankTable raw_table(observed_dist);
    const RankTable signal_table(pairwise_distances(signal_matrix));

    std::vector<Index> sample_rows;
    if (config.metric_subsample) {
        Rng rng(config.metric_subsample->seed);
        sample_rows = sample_without_replacement(
            n, static_cast<Index>(config.metric_subsample->m), rng);
    }
    const std::vector<double> raw_pair_ranks =
        average_ranks(pair_distances(observed, sample_rows));
    const std::vector<double> signal_pair_ranks =
        average_ranks(pair_distances(signal_matrix, sample_rows));

    std::vector<AffinityModel> models;
    models.reserve(config.grid.size());
    for (const double perplexity : config.grid)
        models.push_back(compute_affinities(observed_dist, perplexity,
                                            config.tsne.affinity_tol,
                                            config.tsne.affinity_max_iter));

    const Matrix init_base = tsne_pca_init(observed, config.tsne.output_dim,
                                           config.tsne.init_scale);

    const std::size_t repeats = static_cast<std::size_t>(config.repeats);
    const std::size_t jobs = config.grid.size() * repeats;
    std::vector<SweepRecord> slots(jobs);
    std::vector<std::string> errors(jobs);
    std::vector<char> succeeded(jobs, 0);

    const auto body = [&](std::size_t job) {
        const std::size_t gi = job / repeats;
        const int rep = static_cast<int>(job % repeats);
        const std::uint64_t seed = cell_seed(config.base_seed, gi,
                                             static_cast<std::uint64_t>(
                                                 job % repeats));
        SweepRecord& record = slots[job];
        record.perplexity = config.grid[gi];
        record.repeat = rep;
        record.seed = seed;
        try {
            TsneOptions opts = config.tsne;
            opts.perplexity = config.grid[gi];
            opts.seed = seed;
            EmbeddingRun run = optimize_embedding(
                models[gi], add_init_jitter(init_base, seed, opts.init_jitter_sd),
                opts);

            const RankTable emb_table(pairwise_distances(run.embedding));
            record.trust_raw = trustworthiness_from_tables(
                raw_table, emb_table, config.k, sample_rows);
            record.trust_signal = trustworthiness_from_tables(
                signal_table, emb_table, config.k, sample_rows);

            const std::vector<double> emb_pairs =
                pair_distances(run.embedding, sample_rows);
            const SpearmanResult shep_raw =
                spearman_against_ranks(raw_pair_ranks, emb_pairs);
            const SpearmanResult shep_signal =
                spearman_against_ranks(signal_pair_ranks, emb_pairs);
            record.shep_raw = shep_raw.rho;
            record.shep_signal = shep_signal.rho;
            record.final_kl = run.final_kl;
            if (config.keep_embeddings) record.embedding = std::move(run.embedding);
            succeeded[job] = 1;
        } catch (const std::exception& e) {
            errors[job] = e.what();
        } catch (...) {
            errors[job] = "unknown error";
        }
    };

    run_jobs(config.workers, jobs, body);

    SweepResult result;
    result.records.reserve(jobs);
    for (std::size_t job = 0; job < jobs; ++job) {
        if (succeeded[job]) {
            result.records.push_back(std::move(slots[job]));
        } else {
            SweepFailure failure;
            failure.perplexity = slots[job].perplexity;
            failure.repeat = slots[job].repeat;
            failure.seed = slots[job].seed;
            failure.message = errors[job];
            result.failures.push_back(std::move(failure));
        }
    }
    result.summary = summarize(result.records, result.failures, config.grid,
                               config.aggregation);
    return result;
}

SweepSummary summarize(const std::vector<SweepRecord>& records,
                       const std::vector<SweepFailure>& failures,
                       const std::vector<double>& grid,
                       Aggregation aggregation) {
    if (grid.empty()) throw ParameterError("cannot summarize an empty grid");

    SweepSummary summary;
    summary.aggregation = aggregation;
    summary.per_perplexity.reserve(grid.size());
    bool valid = true;
    for (const double perplexity : grid) {
        PerplexitySummary s;
        s.perplexity = perplexity;
        s.max_trust_raw = -std::numeric_limits<double>::infinity();
        s.max_trust_signal = -std::numeric_limits<double>::infinity();
        for (const SweepRecord& r : records) {
            if (r.perplexity != perplexity) continue;
            ++s.successes;
            s.mean_trust_raw += r.trust_raw;
            s.mean_trust_signal += r.trust_signal;
            s.mean_shep_raw += r.shep_raw;
            s.mean_shep_signal += r.shep_signal;
            s.mean_final_kl += r.final_kl;
            s.max_trust_raw = std::max(s.max_trust_raw, r.trust_raw);
            s.max_trust_signal = std::max(s.max_trust_signal, r.trust_signal);
        }
        for (const SweepFailure& f : failures)
            if (f.perplexity == perplexity) ++s.failures;
        if (s.successes == 0) {
            valid = false;
            s.max_trust_raw = std::numeric_limits<double>::quiet_NaN();
            s.max_trust_signal = std::numeric_limits<double>::quiet_NaN();
            s.mean_trust_raw = s.mean_trust_signal = s.mean_shep_raw =
                s.mean_shep_signal = s.mean_final_kl =
                    std::numeric_limits<double>::quiet_NaN();
        } else {
            const double count = static_cast<double>(s.successes);
            s.mean_trust_raw /= count;
            s.mean_trust_signal /= count;
            s.mean_shep_raw /= count;
            s.mean_shep_signal /= count;
            s.mean_final_kl /= count;
        }
        summary.per_perplexity.push_back(s);
    }

    summary.valid = valid;
    if (!valid) {
        summary.optimal_vs_raw = std::numeric_limits<double>::quiet_NaN();
        summary.optimal_vs_signal = std::numeric_limits<double>::quiet_NaN();
        return summary;
    }

    for (const ReferenceFrame frame :
         {ReferenceFrame::raw_data, ReferenceFrame::signal}) {
        double best = -std::numeric_limits<double>::infinity();
        double argmax = grid.front();
        for (const PerplexitySummary& s : summary.per_perplexity) {
            const double value = aggregate_trust(s, aggregation, frame);
            if (value > best) { // strict: ties keep the smaller perplexity
                best = value;
                argmax = s.perplexity;
            }
        }
        if (frame == ReferenceFrame::raw_data)
            summary.optimal_vs_raw = argmax;
        else
            summary.optimal_vs_signal = argmax;
    }
    return summary;
}

ExternalEvaluation evaluate_external(const Matrix& observed,
                                     const Matrix& embedding, int k,
                                     const std::optional<Matrix>& signal,
                                     std::optional<Index> signal_dim,
                                     std::optional<SubsampleSpec> subsample,
                                     const std::optional<Labels>& labels) {
    if (observed.rows() != embedding.rows())
        throw IngestionError("embedding has " + std::to_string(embedding.rows()) +
                             " rows, observed data has " +
                             std::to_string(observed.rows()));

    Matrix signal_matrix;
    if (signal) {
        if (signal->rows() != observed.rows())
            throw IngestionError("signal row count does not match observed data");
        signal_matrix = *signal;
    } else {
        if (!signal_dim)
            throw ParameterError(
                "either a signal matrix or a signal dimension is required");
        signal_matrix = extract_signal(observed, *signal_dim).first;
    }

    ExternalEvaluation out;
    if (subsample) {
        out.trust_raw = trustworthiness_subsampled(observed, embedding, k,
                                                   subsample->m, subsample->seed);
        out.trust_signal = trustworthiness_subsampled(
            signal_matrix, embedding, k, subsample->m, subsample->seed);
        const PairSubsample pairs{subsample->m, subsample->seed};
        out.shep_raw = shepard_goodness(observed, embedding, pairs);
        out.shep_signal = shepard_goodness(signal_matrix, embedding, pairs);
    } else {
        out.trust_raw = trustworthiness(observed, embedding, k);
        out.trust_signal = trustworthiness(signal_matrix, embedding, k);
        out.shep_raw = shepard_goodness(observed, embedding);
        out.shep_signal = shepard_goodness(signal_matrix, embedding);
    }
    out.trust_signal.frame = ReferenceFrame::signal;
    out.shep_signal.frame = ReferenceFrame::signal;
    if (labels) out.silhouette_report = silhouette(embedding, *labels);
    return out;
}

double scale_perplexity_for_subsample(double perp_prime, double rho) {
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw ParameterError("subsample fraction must lie in (0, 1]");
    if (!(perp_prime > 1.0))
        throw ParameterError("perplexity must exceed 1");
    return perp_prime / rho;
}

} // namespace dimcal
