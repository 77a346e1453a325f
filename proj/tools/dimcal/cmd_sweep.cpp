#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "commands.hpp"
#include "dimcal/errors.hpp"
#include "dimcal/matrix_io.hpp"
#include "dimcal/sweep.hpp"
#include "run_config.hpp"
#include "svg_plot.hpp"

namespace dimcal::cli {

namespace {

using nlohmann::json;

void ensure_parent_directory(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

int workers_from_env() {
    const char* raw = std::getenv("DIMCAL_WORKERS");
    if (!raw) return 0;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1)
        throw ParameterError("DIMCAL_WORKERS must be a positive integer, got \"" +
                             std::string(raw) + "\"");
    return static_cast<int>(value);
}

// JSON has no NaN; degenerate and failed aggregates serialize as null.
json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

void write_records_csv(const std::string& path,
                       const std::vector<SweepRecord>& records) {
    ensure_parent_directory(path);
    std::ofstream out(path);
    if (!out) throw IngestionError(path + ": cannot open file for writing");
    out << "perplexity,repeat,seed,trust_raw,trust_signal,shep_raw,"
           "shep_signal,final_kl\n";
    for (const SweepRecord& r : records) {
        out << format_value(r.perplexity) << ',' << r.repeat << ',' << r.seed
            << ',' << format_value(r.trust_raw) << ','
            << format_value(r.trust_signal) << ',' << format_value(r.shep_raw)
            << ',' << format_value(r.shep_signal) << ','
            << format_value(r.final_kl) << '\n';
    }
    if (!out) throw IngestionError(path + ": write failed");
}

json summary_to_json(const RunConfig& config, const SweepResult& result) {
    const SweepConfig& sweep = config.sweep;
    json doc;
    doc["schema_version"] = 1;
    doc["inputs"]["observed"] = config.observed_path;
    if (config.signal_path) doc["inputs"]["signal"] = *config.signal_path;
    if (config.signal_dim)
        doc["inputs"]["signal_dim"] = static_cast<std::int64_t>(*config.signal_dim);
    if (config.labels_path) doc["inputs"]["labels"] = *config.labels_path;

    doc["grid"] = sweep.grid;
    doc["repeats"] = sweep.repeats;
    doc["k"] = sweep.k;
    doc["base_seed"] = sweep.base_seed;
    doc["aggregation"] =
        sweep.aggregation == Aggregation::mean ? "mean" : "max";
    if (sweep.metric_subsample) {
        doc["metric_subsample"]["size"] = sweep.metric_subsample->m;
        doc["metric_subsample"]["seed"] = sweep.metric_subsample->seed;
    }
    const TsneOptions& tsne = sweep.tsne;
    doc["tsne"] = {{"output_dim", tsne.output_dim},
                   {"max_iter", tsne.max_iter},
                   {"learning_rate", tsne.learning_rate},
                   {"initial_momentum", tsne.initial_momentum},
                   {"final_momentum", tsne.final_momentum},
                   {"momentum_switch_iter", tsne.momentum_switch_iter},
                   {"exaggeration", tsne.exaggeration},
                   {"exaggeration_iter", tsne.exaggeration_iter},
                   {"affinity_tol", tsne.affinity_tol},
                   {"affinity_max_iter", tsne.affinity_max_iter},
                   {"kl_eval_interval", tsne.kl_eval_interval},
                   {"init_scale", tsne.init_scale},
                   {"init_jitter_sd", tsne.init_jitter_sd}};

    json per = json::array();
    for (const PerplexitySummary& s : result.summary.per_perplexity) {
        per.push_back({{"perplexity", s.perplexity},
                       {"successes", s.successes},
                       {"failures", s.failures},
                       {"mean_trust_raw", number_or_null(s.mean_trust_raw)},
                       {"mean_trust_signal", number_or_null(s.mean_trust_signal)},
                       {"max_trust_raw", number_or_null(s.max_trust_raw)},
                       {"max_trust_signal", number_or_null(s.max_trust_signal)},
                       {"mean_shep_raw", number_or_null(s.mean_shep_raw)},
                       {"mean_shep_signal", number_or_null(s.mean_shep_signal)},
                       {"mean_final_kl", number_or_null(s.mean_final_kl)}});
    }
    doc["per_perplexity"] = per;
    doc["optimal_vs_raw"] = number_or_null(result.summary.optimal_vs_raw);
    doc["optimal_vs_signal"] = number_or_null(result.summary.optimal_vs_signal);
    doc["valid"] = result.summary.valid;

    json failures = json::array();
    for (const SweepFailure& f : result.failures) {
        failures.push_back({{"perplexity", f.perplexity},
                            {"repeat", f.repeat},
                            {"seed", f.seed},
                            {"message", f.message}});
    }
    doc["cell_failures"] = failures;
    return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
    ensure_parent_directory(path);
    std::ofstream out(path);
    if (!out) throw IngestionError(path + ": cannot open file for writing");
    out << content;
    if (!out) throw IngestionError(path + ": write failed");
}

void write_trust_plot(const std::string& path, const SweepSummary& summary) {
    PlotSeries raw{"trust vs raw data", "#ee6677", {}, {}};
    PlotSeries signal{"trust vs signal", "#4477aa", {}, {}};
    for (const PerplexitySummary& s : summary.per_perplexity) {
        if (std::isfinite(s.mean_trust_raw)) {
            raw.x.push_back(s.perplexity);
            raw.y.push_back(s.mean_trust_raw);
        }
        if (std::isfinite(s.mean_trust_signal)) {
            signal.x.push_back(s.perplexity);
            signal.y.push_back(s.mean_trust_signal);
        }
    }
    write_text_file(path, line_chart({raw, signal}, "perplexity",
                                     "mean trustworthiness",
                                     "trustworthiness by reference frame"));
}

// Representative run for an optimum: the record at that perplexity with the
// highest trust in the chosen frame; repeat order breaks ties.
const SweepRecord* pick_representative(const std::vector<SweepRecord>& records,
                                       double perplexity, bool signal_frame) {
    const SweepRecord* best = nullptr;
    for (const SweepRecord& r : records) {
        if (r.perplexity != perplexity || !r.embedding) continue;
        const double value = signal_frame ? r.trust_signal : r.trust_raw;
        if (!best ||
            value > (signal_frame ? best->trust_signal : best->trust_raw))
            best = &r;
    }
    return best;
}

} // namespace

void run_sweep_command(const SweepArgs& args) {
    RunConfig config = load_run_config(args.config_path);
    if (args.repeats) config.sweep.repeats = *args.repeats;
    if (args.k) config.sweep.k = *args.k;
    if (args.base_seed) config.sweep.base_seed = *args.base_seed;
    if (args.records_csv) config.records_csv = *args.records_csv;
    if (args.summary_json) config.summary_json = *args.summary_json;

    const int env_workers = workers_from_env();
    if (env_workers > 0) {
        if (config.workers_in_config)
            throw ParameterError(
                "worker count set both in the config (\"workers\") and via "
                "DIMCAL_WORKERS; remove one");
        config.sweep.workers = env_workers;
    }

    const Matrix observed = read_matrix(config.observed_path).values;
    std::optional<Matrix> signal;
    if (config.signal_path) signal = read_matrix(*config.signal_path).values;
    std::optional<Labels> labels;
    if (config.labels_path) labels = read_labels(*config.labels_path);

    config.sweep.keep_embeddings =
        config.scatter_raw_svg.has_value() || config.scatter_signal_svg.has_value();

    const SweepResult result = run_sweep(observed, config.sweep, signal);

    for (const SweepFailure& f : result.failures)
        std::cerr << "warning: cell failed (perplexity " << f.perplexity
                  << ", repeat " << f.repeat << "): " << f.message << "\n";

    write_records_csv(config.records_csv, result.records);
    ensure_parent_directory(config.summary_json);
    write_text_file(config.summary_json,
                    summary_to_json(config, result).dump(2) + "\n");

    if (config.trust_plot_svg)
        write_trust_plot(*config.trust_plot_svg, result.summary);

    if (result.summary.valid) {
        if (config.scatter_raw_svg) {
            const SweepRecord* rep = pick_representative(
                result.records, result.summary.optimal_vs_raw, false);
            if (rep)
                write_text_file(
                    *config.scatter_raw_svg,
                    scatter_plot(*rep->embedding, labels,
                                 "best embedding at the raw-frame optimum, "
                                 "perplexity " +
                                     format_value(rep->perplexity)));
        }
        if (config.scatter_signal_svg) {
            const SweepRecord* rep = pick_representative(
                result.records, result.summary.optimal_vs_signal, true);
            if (rep)
                write_text_file(
                    *config.scatter_signal_svg,
                    scatter_plot(*rep->embedding, labels,
                                 "best embedding at the signal-frame optimum, "
                                 "perplexity " +
                                     format_value(rep->perplexity)));
        }
    } else if (config.scatter_raw_svg || config.scatter_signal_svg) {
        std::cerr << "warning: skipping scatter plots, summary is invalid\n";
    }

    std::cout << result.records.size() << " runs recorded, "
              << result.failures.size() << " failed\n";
    if (result.summary.valid) {
        std::cout << "optimal perplexity vs raw data: "
                  << result.summary.optimal_vs_raw << "\n";
        std::cout << "optimal perplexity vs signal:   "
                  << result.summary.optimal_vs_signal << "\n";
    }

    if (!result.summary.valid)
        throw RunError(
            "at least one grid point had zero successful runs; outputs were "
            "written but the summary optima are invalid");
}

} // namespace dimcal::cli
