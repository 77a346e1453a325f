#ifndef DIMCAL_CLI_COMMANDS_HPP
#define DIMCAL_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace dimcal::cli {

// Exit codes; main() maps exception classes onto these.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIngestion = 3;
constexpr int kExitRun = 4;

struct GenerateArgs {
    std::string kind; // links | trefoil | mammoth | clusters
    std::string out_prefix;
    std::int64_t target_dim = 0; // 0 = per-generator default
    double noise_sd = 1.0;
    std::uint64_t seed = 0;

    int n_per_circle = 250;      // links
    int n_points = 500;          // trefoil, mammoth
    std::string mammoth_input;   // mammoth source point cloud

    int clusters = 7;            // clusters
    int points_per_cluster = 50;
    int cluster_dim = 7;
    double mean_scale = 10.0;
    double cov_low = 0.5;
    double cov_high = 2.0;
};
void run_generate(const GenerateArgs& args);

struct SweepArgs {
    std::string config_path;
    // Flag overrides; unset means "use the config value".
    std::optional<int> repeats;
    std::optional<int> k;
    std::optional<std::uint64_t> base_seed;
    std::optional<std::string> records_csv;
    std::optional<std::string> summary_json;
};
void run_sweep_command(const SweepArgs& args);

struct EvalArgs {
    std::string observed_path;
    std::string embedding_path;
    int k = 10;
    std::optional<std::int64_t> signal_dim;
    std::optional<std::string> signal_path;
    std::optional<std::string> labels_path;
    std::optional<int> subsample_size;
    std::uint64_t subsample_seed = 0;
    std::optional<std::string> out_path; // default: stdout
};
void run_eval(const EvalArgs& args);

struct ScreeArgs {
    std::string input_path;
    int max_components = 0; // 0 = all min(n-1, p)
    std::optional<std::string> out_path; // default: stdout
    std::optional<std::string> svg_path;
};
void run_scree(const ScreeArgs& args);

} // namespace dimcal::cli

#endif
