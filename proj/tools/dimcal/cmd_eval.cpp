#include <fstream>
#include <iostream>

#include <json.hpp>

#include "commands.hpp"
#include "dimcal/errors.hpp"
#include "dimcal/matrix_io.hpp"
#include "dimcal/sweep.hpp"

namespace dimcal::cli {

namespace {

using nlohmann::json;

json report_to_json(const MetricReport& report) {
    json out;
    out["value"] = report.degenerate ? json(nullptr) : json(report.value);
    out["degenerate"] = report.degenerate;
    if (report.k) out["k"] = *report.k;
    if (report.subsample_size) out["subsample_size"] = *report.subsample_size;
    if (report.subsample_seed) out["subsample_seed"] = *report.subsample_seed;
    return out;
}

} // namespace

void run_eval(const EvalArgs& args) {
    if (args.signal_path && args.signal_dim)
        throw ParameterError("give either --signal or --signal-dim, not both");
    if (!args.signal_path && !args.signal_dim)
        throw ParameterError("one of --signal or --signal-dim is required");

    const Matrix observed = read_matrix(args.observed_path).values;
    const Matrix embedding = read_matrix(args.embedding_path).values;
    std::optional<Matrix> signal;
    if (args.signal_path) signal = read_matrix(*args.signal_path).values;
    std::optional<Labels> labels;
    if (args.labels_path) labels = read_labels(*args.labels_path);

    std::optional<SubsampleSpec> subsample;
    if (args.subsample_size)
        subsample = SubsampleSpec{*args.subsample_size, args.subsample_seed};

    std::optional<Index> signal_dim;
    if (args.signal_dim) signal_dim = static_cast<Index>(*args.signal_dim);

    const ExternalEvaluation eval = evaluate_external(
        observed, embedding, args.k, signal, signal_dim, subsample, labels);

    json doc;
    doc["schema_version"] = 1;
    doc["inputs"]["observed"] = args.observed_path;
    doc["inputs"]["embedding"] = args.embedding_path;
    if (args.signal_path) doc["inputs"]["signal"] = *args.signal_path;
    if (args.signal_dim) doc["inputs"]["signal_dim"] = *args.signal_dim;
    if (args.labels_path) doc["inputs"]["labels"] = *args.labels_path;
    doc["k"] = args.k;
    doc["trust_raw"] = report_to_json(eval.trust_raw);
    doc["trust_signal"] = report_to_json(eval.trust_signal);
    doc["shep_raw"] = report_to_json(eval.shep_raw);
    doc["shep_signal"] = report_to_json(eval.shep_signal);
    if (eval.silhouette_report)
        doc["silhouette"] = report_to_json(*eval.silhouette_report);

    const std::string text = doc.dump(2) + "\n";
    if (args.out_path) {
        std::ofstream out(*args.out_path);
        if (!out)
            throw IngestionError(*args.out_path + ": cannot open file for writing");
        out << text;
        if (!out) throw IngestionError(*args.out_path + ": write failed");
    } else {
        std::cout << text;
    }
}

} // namespace dimcal::cli
