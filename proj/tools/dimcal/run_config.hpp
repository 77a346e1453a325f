#ifndef DIMCAL_CLI_RUN_CONFIG_HPP
#define DIMCAL_CLI_RUN_CONFIG_HPP

#include <optional>
#include <string>

#include "dimcal/sweep.hpp"

namespace dimcal::cli {

/// Sweep configuration document. Schema (all unknown keys rejected):
///
/// {
///   "schema_version": 1,
///   "observed": "observed.csv",          // required
///   "signal": "signal.csv",              // exactly one of signal /
///   "signal_dim": 3,                     //   signal_dim is required
///   "labels": "labels.csv",              // optional, scatter coloring only
///   "grid": [10, 20, 30],                // required
///   "repeats": 10,
///   "k": 10,
///   "base_seed": 0,
///   "aggregation": "mean",               // or "max"
///   "workers": 2,                        // exclusive with DIMCAL_WORKERS
///   "metric_subsample": {"size": 100, "seed": 0},
///   "tsne": {"max_iter": 1000, ...},     // see kTsneKeys in run_config.cpp
///   "output": {
///     "records_csv": "records.csv",      // required
///     "summary_json": "summary.json",    // required
///     "trust_plot_svg": "trust.svg",
///     "scatter_raw_svg": "raw.svg",
///     "scatter_signal_svg": "signal.svg"
///   }
/// }
struct RunConfig {
    std::string observed_path;
    std::optional<std::string> signal_path;
    std::optional<Index> signal_dim;
    std::optional<std::string> labels_path;

    SweepConfig sweep;
    bool workers_in_config = false;

    std::string records_csv;
    std::string summary_json;
    std::optional<std::string> trust_plot_svg;
    std::optional<std::string> scatter_raw_svg;
    std::optional<std::string> scatter_signal_svg;
};

/// Parses and schema-validates; throws ParameterError on any violation and
/// IngestionError when the file cannot be read.
RunConfig load_run_config(const std::string& path);

} // namespace dimcal::cli

#endif
