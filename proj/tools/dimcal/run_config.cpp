#include "run_config.hpp"

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "dimcal/errors.hpp"

namespace dimcal::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ParameterError("config: unknown key \"" + key + "\" in " +
                                 where);
    }
}

template <typename T>
T require(const json& object, const std::string& where, const std::string& key) {
    if (!object.contains(key))
        throw ParameterError("config: missing required key \"" + key + "\" in " +
                             where);
    try {
        return object.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParameterError("config: key \"" + key + "\" in " + where +
                             " has the wrong type");
    }
}

template <typename T>
void assign_if_present(const json& object, const std::string& where,
                       const std::string& key, T& target) {
    if (!object.contains(key)) return;
    try {
        target = object.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParameterError("config: key \"" + key + "\" in " + where +
                             " has the wrong type");
    }
}

const std::set<std::string> kTopKeys = {
    "schema_version", "observed", "signal",           "signal_dim",
    "labels",         "grid",     "repeats",          "k",
    "base_seed",      "aggregation", "workers",       "metric_subsample",
    "tsne",           "output"};

const std::set<std::string> kTsneKeys = {
    "output_dim",       "max_iter",          "learning_rate",
    "initial_momentum", "final_momentum",    "momentum_switch_iter",
    "exaggeration",     "exaggeration_iter", "affinity_tol",
    "affinity_max_iter", "kl_eval_interval", "init_scale",
    "init_jitter_sd"};

const std::set<std::string> kSubsampleKeys = {"size", "seed"};

const std::set<std::string> kOutputKeys = {"records_csv", "summary_json",
                                           "trust_plot_svg", "scatter_raw_svg",
                                           "scatter_signal_svg"};

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IngestionError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParameterError("config: " + path + " is not valid JSON: " +
                             e.what());
    }
    if (!doc.is_object())
        throw ParameterError("config: top level must be a JSON object");
    reject_unknown_keys(doc, "the top level", kTopKeys);

    if (doc.contains("schema_version")) {
        const auto version = require<int>(doc, "the top level", "schema_version");
        if (version != 1)
            throw ParameterError("config: unsupported schema_version " +
                                 std::to_string(version));
    }

    RunConfig config;
    config.observed_path = require<std::string>(doc, "the top level", "observed");

    std::optional<std::string> signal;
    std::optional<std::int64_t> signal_dim;
    if (doc.contains("signal"))
        signal = require<std::string>(doc, "the top level", "signal");
    if (doc.contains("signal_dim"))
        signal_dim = require<std::int64_t>(doc, "the top level", "signal_dim");
    if (signal && signal_dim)
        throw ParameterError(
            "config: give either \"signal\" or \"signal_dim\", not both");
    if (!signal && !signal_dim)
        throw ParameterError(
            "config: one of \"signal\" or \"signal_dim\" is required");
    config.signal_path = signal;
    if (signal_dim) {
        if (*signal_dim < 1)
            throw ParameterError("config: signal_dim must be positive");
        config.signal_dim = static_cast<Index>(*signal_dim);
        config.sweep.signal_dim = config.signal_dim;
    }
    if (doc.contains("labels"))
        config.labels_path = require<std::string>(doc, "the top level", "labels");

    config.sweep.grid =
        require<std::vector<double>>(doc, "the top level", "grid");
    assign_if_present(doc, "the top level", "repeats", config.sweep.repeats);
    assign_if_present(doc, "the top level", "k", config.sweep.k);
    assign_if_present(doc, "the top level", "base_seed", config.sweep.base_seed);

    if (doc.contains("aggregation")) {
        const auto name =
            require<std::string>(doc, "the top level", "aggregation");
        if (name == "mean")
            config.sweep.aggregation = Aggregation::mean;
        else if (name == "max")
            config.sweep.aggregation = Aggregation::max;
        else
            throw ParameterError(
                "config: aggregation must be \"mean\" or \"max\", got \"" +
                name + "\"");
    }

    if (doc.contains("workers")) {
        config.sweep.workers = require<int>(doc, "the top level", "workers");
        if (config.sweep.workers < 1)
            throw ParameterError("config: workers must be at least 1");
        config.workers_in_config = true;
    }

    if (doc.contains("metric_subsample")) {
        const json& sub = doc.at("metric_subsample");
        if (!sub.is_object())
            throw ParameterError("config: metric_subsample must be an object");
        reject_unknown_keys(sub, "metric_subsample", kSubsampleKeys);
        SubsampleSpec spec;
        spec.m = require<int>(sub, "metric_subsample", "size");
        assign_if_present(sub, "metric_subsample", "seed", spec.seed);
        config.sweep.metric_subsample = spec;
    }

    if (doc.contains("tsne")) {
        const json& tsne = doc.at("tsne");
        if (!tsne.is_object())
            throw ParameterError("config: tsne must be an object");
        reject_unknown_keys(tsne, "tsne", kTsneKeys);
        TsneOptions& opts = config.sweep.tsne;
        assign_if_present(tsne, "tsne", "output_dim", opts.output_dim);
        assign_if_present(tsne, "tsne", "max_iter", opts.max_iter);
        assign_if_present(tsne, "tsne", "learning_rate", opts.learning_rate);
        assign_if_present(tsne, "tsne", "initial_momentum", opts.initial_momentum);
        assign_if_present(tsne, "tsne", "final_momentum", opts.final_momentum);
        assign_if_present(tsne, "tsne", "momentum_switch_iter",
                          opts.momentum_switch_iter);
        assign_if_present(tsne, "tsne", "exaggeration", opts.exaggeration);
        assign_if_present(tsne, "tsne", "exaggeration_iter",
                          opts.exaggeration_iter);
        assign_if_present(tsne, "tsne", "affinity_tol", opts.affinity_tol);
        assign_if_present(tsne, "tsne", "affinity_max_iter",
                          opts.affinity_max_iter);
        assign_if_present(tsne, "tsne", "kl_eval_interval", opts.kl_eval_interval);
        assign_if_present(tsne, "tsne", "init_scale", opts.init_scale);
        assign_if_present(tsne, "tsne", "init_jitter_sd", opts.init_jitter_sd);
    }

    if (!doc.contains("output"))
        throw ParameterError("config: missing required key \"output\"");
    const json& output = doc.at("output");
    if (!output.is_object())
        throw ParameterError("config: output must be an object");
    reject_unknown_keys(output, "output", kOutputKeys);
    config.records_csv = require<std::string>(output, "output", "records_csv");
    config.summary_json = require<std::string>(output, "output", "summary_json");
    if (output.contains("trust_plot_svg"))
        config.trust_plot_svg =
            require<std::string>(output, "output", "trust_plot_svg");
    if (output.contains("scatter_raw_svg"))
        config.scatter_raw_svg =
            require<std::string>(output, "output", "scatter_raw_svg");
    if (output.contains("scatter_signal_svg"))
        config.scatter_signal_svg =
            require<std::string>(output, "output", "scatter_signal_svg");

    return config;
}

} // namespace dimcal::cli
