#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "commands.hpp"
#include "dimcal/datagen.hpp"
#include "dimcal/errors.hpp"
#include "dimcal/matrix_io.hpp"
#include "dimcal/rng.hpp"

namespace dimcal::cli {

namespace {

using nlohmann::json;

void ensure_parent_directory(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IngestionError(path + ": cannot open file for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IngestionError(path + ": write failed");
}

} // namespace

void run_generate(const GenerateArgs& args) {
    if (args.out_prefix.empty())
        throw ParameterError("--out-prefix is required");
    if (args.noise_sd < 0.0)
        throw ParameterError("--noise-sd must be non-negative");

    GeneratedData data;
    json params;
    if (args.kind == "links") {
        data = generate_links(args.n_per_circle, args.seed);
        params["n_per_circle"] = args.n_per_circle;
    } else if (args.kind == "trefoil") {
        data.points = generate_trefoil(args.n_points, args.seed);
        params["n_points"] = args.n_points;
    } else if (args.kind == "mammoth") {
        if (args.mammoth_input.empty())
            throw ParameterError("mammoth: --input point cloud file is required");
        // The subsample draws from a stream derived from the user seed so it
        // stays independent of the noise stream below.
        data.points = load_mammoth(args.mammoth_input, args.n_points,
                                   splitmix64(args.seed));
        params["n_points"] = args.n_points;
        params["input"] = args.mammoth_input;
    } else if (args.kind == "clusters") {
        data = generate_gaussian_clusters(args.clusters, args.points_per_cluster,
                                          args.cluster_dim, args.mean_scale,
                                          args.cov_low, args.cov_high,
                                          splitmix64(args.seed));
        params["clusters"] = args.clusters;
        params["points_per_cluster"] = args.points_per_cluster;
        params["dim"] = args.cluster_dim;
        params["mean_scale"] = args.mean_scale;
        params["cov_low"] = args.cov_low;
        params["cov_high"] = args.cov_high;
    } else {
        throw ParameterError("unknown generator: " + args.kind);
    }

    Index target_dim = static_cast<Index>(args.target_dim);
    if (target_dim == 0) target_dim = args.kind == "clusters" ? 60 : 10;

    // Noise gets its own derived stream: splitmix64(seed + 1) never collides
    // with the generator's splitmix64(seed) for the same user seed.
    const DatasetBundle bundle =
        embed_and_noise(data.points, target_dim, args.noise_sd,
                        splitmix64(args.seed + 1), data.labels);

    ensure_parent_directory(args.out_prefix + "_manifest.json");
    const std::string signal_path = args.out_prefix + "_signal.csv";
    const std::string observed_path = args.out_prefix + "_observed.csv";
    const std::string labels_path = args.out_prefix + "_labels.csv";
    const std::string manifest_path = args.out_prefix + "_manifest.json";

    write_matrix(signal_path, bundle.signal);
    write_matrix(observed_path, bundle.observed);
    if (bundle.labels) write_labels(labels_path, *bundle.labels);

    json manifest;
    manifest["schema_version"] = 1;
    manifest["generator"] = args.kind;
    manifest["seed"] = args.seed;
    manifest["noise_sd"] = args.noise_sd;
    manifest["n"] = bundle.observed.rows();
    manifest["signal_dim"] = bundle.signal.cols();
    manifest["target_dim"] = target_dim;
    manifest["params"] = params;
    manifest["files"]["signal"] = signal_path;
    manifest["files"]["observed"] = observed_path;
    if (bundle.labels) manifest["files"]["labels"] = labels_path;
    write_json(manifest_path, manifest);

    std::cout << "generated " << bundle.observed.rows() << " points: signal "
              << bundle.signal.cols() << "-d, observed " << target_dim
              << "-d, noise sd " << args.noise_sd << "\n";
    std::cout << "wrote " << signal_path << ", " << observed_path;
    if (bundle.labels) std::cout << ", " << labels_path;
    std::cout << ", " << manifest_path << "\n";
}

} // namespace dimcal::cli
