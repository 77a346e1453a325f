#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dimcal/errors.hpp"

namespace {

using namespace dimcal::cli;

void add_generate(CLI::App& app, GenerateArgs& args) {
    CLI::App* gen = app.add_subcommand(
        "generate", "Write a synthetic signal + observed dataset bundle");
    gen->require_subcommand(1);

    const auto add_common = [&args](CLI::App* cmd, std::int64_t default_dim) {
        cmd->add_option("--out-prefix", args.out_prefix,
                        "Output path prefix for _signal.csv, _observed.csv, "
                        "_labels.csv, _manifest.json")
            ->required();
        cmd->add_option("--target-dim", args.target_dim,
                        "Observed dimension p (zero padding above the signal "
                        "dimension), default " +
                            std::to_string(default_dim))
            ->check(CLI::PositiveNumber);
        cmd->add_option("--noise-sd", args.noise_sd,
                        "Isotropic Gaussian noise standard deviation");
        cmd->add_option("--seed", args.seed, "Seed for all random draws");
    };

    CLI::App* links = gen->add_subcommand(
        "links", "Two interlocked circles in 3-D (labeled by circle)");
    links->add_option("--n-per-circle", args.n_per_circle, "Points per circle");
    add_common(links, 10);
    links->callback([&args] { args.kind = "links"; });

    CLI::App* trefoil =
        gen->add_subcommand("trefoil", "Trefoil knot curve in 3-D");
    trefoil->add_option("--n", args.n_points, "Number of points");
    add_common(trefoil, 10);
    trefoil->callback([&args] { args.kind = "trefoil"; });

    CLI::App* mammoth = gen->add_subcommand(
        "mammoth", "Seeded subsample of a 3-D point cloud file");
    mammoth->add_option("--input", args.mammoth_input,
                        "Source point cloud (3 numeric columns)")
        ->required();
    mammoth->add_option("--n", args.n_points, "Subsample size");
    add_common(mammoth, 10);
    mammoth->callback([&args] { args.kind = "mammoth"; });

    CLI::App* clusters = gen->add_subcommand(
        "clusters", "Gaussian clusters with axis-aligned means (labeled)");
    clusters->add_option("--clusters", args.clusters, "Number of clusters");
    clusters->add_option("--per-cluster", args.points_per_cluster,
                         "Points per cluster");
    clusters->add_option("--dim", args.cluster_dim, "Signal dimension");
    clusters->add_option("--mean-scale", args.mean_scale,
                         "Cluster i mean is mean-scale times basis vector i");
    clusters->add_option("--cov-low", args.cov_low,
                         "Lower bound of the uniform covariance diagonal");
    clusters->add_option("--cov-high", args.cov_high,
                         "Upper bound of the uniform covariance diagonal");
    add_common(clusters, 60);
    clusters->callback([&args] { args.kind = "clusters"; });
}

void add_sweep(CLI::App& app, SweepArgs& args) {
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run a perplexity sweep from a JSON config");
    sweep->add_option("--config", args.config_path, "JSON sweep configuration")
        ->required();
    sweep->add_option("--repeats", args.repeats,
                      "Override the config's repeats per grid point");
    sweep->add_option("--k", args.k,
                      "Override the config's trustworthiness k");
    sweep->add_option("--base-seed", args.base_seed,
                      "Override the config's base seed");
    sweep->add_option("--records", args.records_csv,
                      "Override the records CSV output path");
    sweep->add_option("--summary", args.summary_json,
                      "Override the summary JSON output path");
}

void add_eval(CLI::App& app, EvalArgs& args) {
    CLI::App* eval = app.add_subcommand(
        "eval", "Score an externally produced embedding in both frames");
    eval->add_option("--observed", args.observed_path, "Observed data matrix")
        ->required();
    eval->add_option("--embedding", args.embedding_path, "Embedding matrix")
        ->required();
    eval->add_option("--k", args.k, "Trustworthiness neighborhood size");
    eval->add_option("--signal", args.signal_path,
                     "Signal matrix (exclusive with --signal-dim)");
    eval->add_option("--signal-dim", args.signal_dim,
                     "Extract the signal at this dimension instead");
    eval->add_option("--labels", args.labels_path,
                     "Integer labels; adds a silhouette report");
    eval->add_option("--subsample-size", args.subsample_size,
                     "Metric subsample row count");
    eval->add_option("--subsample-seed", args.subsample_seed,
                     "Metric subsample seed");
    eval->add_option("--out", args.out_path,
                     "Report JSON path (default: stdout)");
}

void add_scree(CLI::App& app, ScreeArgs& args) {
    CLI::App* scree = app.add_subcommand(
        "scree", "Descending PCA eigenvalue table for choosing a signal "
                 "dimension");
    scree->add_option("--input", args.input_path, "Data matrix")->required();
    scree->add_option("--max-components", args.max_components,
                      "Keep at most this many components (0 = all)");
    scree->add_option("--out", args.out_path, "CSV path (default: stdout)");
    scree->add_option("--svg", args.svg_path, "Optional SVG line chart path");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perplexity calibration toolkit: synthetic data, exact "
                 "t-SNE sweeps, and dual-frame embedding quality metrics"};
    app.require_subcommand(1);

    GenerateArgs generate_args;
    SweepArgs sweep_args;
    EvalArgs eval_args;
    ScreeArgs scree_args;
    add_generate(app, generate_args);
    add_sweep(app, sweep_args);
    add_eval(app, eval_args);
    add_scree(app, scree_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("generate"))
            run_generate(generate_args);
        else if (app.got_subcommand("sweep"))
            run_sweep_command(sweep_args);
        else if (app.got_subcommand("eval"))
            run_eval(eval_args);
        else if (app.got_subcommand("scree"))
            run_scree(scree_args);
        return kExitOk;
    } catch (const dimcal::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dimcal::IngestionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIngestion;
    } catch (const dimcal::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIngestion;
    } catch (const dimcal::RunError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRun;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
