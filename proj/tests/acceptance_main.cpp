// Acceptance gate: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL] line. Exit status 0 only when every
// selected criterion passes. Criterion numbers given as arguments restrict
// the run (e.g. "acceptance_tests 5 7").

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dimcal/datagen.hpp"
#include "dimcal/metrics.hpp"
#include "dimcal/neighbors.hpp"
#include "dimcal/pca.hpp"
#include "dimcal/rng.hpp"
#include "dimcal/sweep.hpp"
#include "dimcal/tsne.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using dimcal::Index;
using dimcal::Matrix;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& reason) {
        if (!condition) {
            if (!pass) detail << "; ";
            pass = false;
            detail << reason;
        }
    }
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// ---------------------------------------------------------------- criterion 1

void metric_oracle_equivalence(Outcome& out) {
    double worst_trust = 0.0, worst_shep = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(t);
        const Index n = 10 + (t % 21); // 10..30
        const Index d = 1 + (t % 5);   // 1..5
        const int k = (t % 2 == 0) ? 1 : 5;
        const Matrix ref = oracle::random_matrix(n, d, seed);
        const Matrix emb = oracle::random_matrix(n, 2, seed + 7919);

        const double trust = dimcal::trustworthiness(ref, emb, k).value;
        worst_trust = std::max(worst_trust,
                               std::abs(trust - oracle::trustworthiness(ref, emb, k)));

        const auto shep = dimcal::shepard_goodness(ref, emb);
        const auto shep_ref = oracle::spearman_pair_distances(ref, emb);
        worst_shep = std::max(worst_shep, std::abs(shep.value - shep_ref.rho));
    }
    out.require(worst_trust <= 1e-12,
                "trustworthiness deviates from oracle by " + fmt(worst_trust));
    out.require(worst_shep <= 1e-12,
                "shepard goodness deviates from oracle by " + fmt(worst_shep));
    out.detail << "max |impl - oracle|: trust " << fmt(worst_trust) << ", shepard "
               << fmt(worst_shep);
}

// ---------------------------------------------------------------- criterion 2

void perplexity_calibration(Outcome& out) {
    const Matrix data = oracle::random_matrix(200, 8, 2024);
    const dimcal::DistanceMatrix dist = dimcal::pairwise_distances(data);
    double worst = 0.0;
    for (double target : {5.0, 30.0, 50.0, 100.0}) {
        const auto cond = dimcal::conditional_affinities(dist, target);
        for (Index i = 0; i < 200; ++i) {
            const double achieved = oracle::row_perplexity(cond.conditional.row(i), i);
            worst = std::max(worst, std::abs(achieved - target));
        }
    }
    out.require(worst <= 1e-4, "worst |2^H - target| = " + fmt(worst));
    out.detail << "worst |2^H - target| = " << fmt(worst)
               << " over targets {5,30,50,100}";
}

// ---------------------------------------------------------------- criterion 3

void gradient_correctness(Outcome& out) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t seed = 3000 + static_cast<std::uint64_t>(t);
        const Matrix data = oracle::random_matrix(8, 4, seed);
        const auto model =
            dimcal::compute_affinities(dimcal::pairwise_distances(data), 3.0);
        const Matrix x = oracle::random_matrix(8, 2, seed + 101);
        const Matrix analytic = dimcal::kl_gradient(model.joint, x);
        const Matrix fd = oracle::fd_kl_gradient(model.joint, x, 1e-5);
        const double scale = fd.cwiseAbs().maxCoeff();
        for (Index i = 0; i < 8; ++i)
            for (Index c = 0; c < 2; ++c) {
                const double denom = std::max(std::abs(fd(i, c)), 1e-3 * scale);
                worst = std::max(worst, std::abs(analytic(i, c) - fd(i, c)) / denom);
            }
    }
    out.require(worst < 1e-4, "max relative gradient error = " + fmt(worst));
    out.detail << "max relative error vs central differences = " << fmt(worst);
}

// ---------------------------------------------------------------- criterion 4

void normalization_conservation(Outcome& out) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t seed = 4000 + static_cast<std::uint64_t>(t);
        const Matrix data = oracle::random_matrix(40, 4, seed);
        dimcal::TsneOptions opt;
        opt.perplexity = 8.0;
        opt.seed = seed;
        opt.max_iter = 120;

        const auto model =
            dimcal::compute_affinities(dimcal::pairwise_distances(data), opt.perplexity);
        worst = std::max(worst, std::abs(model.joint.sum() - 1.0));

        const Matrix init = dimcal::add_init_jitter(
            dimcal::tsne_pca_init(data, opt.output_dim, opt.init_scale), opt.seed,
            opt.init_jitter_sd);
        worst = std::max(
            worst, std::abs(dimcal::low_dim_similarities(init).sum() - 1.0));

        const auto run = dimcal::run_tsne(data, opt);
        worst = std::max(
            worst,
            std::abs(dimcal::low_dim_similarities(run.embedding).sum() - 1.0));
    }
    out.require(worst <= 1e-10, "worst |mass - 1| = " + fmt(worst));
    out.detail << "worst |sum - 1| over P and Q at init and completion = "
               << fmt(worst);
}

// ------------------------------------------------------- criteria 5, 6, and 7

std::vector<double> smoke_grid() {
    std::vector<double> grid;
    for (double p = 10.0; p <= 150.0; p += 20.0) grid.push_back(p);
    return grid;
}

dimcal::SweepResult smoke_sweep(const Matrix& observed, const Matrix& signal,
                                std::uint64_t base_seed) {
    dimcal::SweepConfig config;
    config.grid = smoke_grid();
    config.repeats = 5;
    config.k = 10;
    config.base_seed = base_seed;
    config.workers = 0;
    return dimcal::run_sweep(observed, config, signal);
}

void links_ordering(Outcome& out) {
    const auto links = dimcal::generate_links(250, 0);
    int signal_higher = 0;
    std::ostringstream optima;
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
        const auto bundle =
            dimcal::embed_and_noise(links.points, 10, 1.0, 1000 + rep, links.labels);
        const auto result = smoke_sweep(bundle.observed, bundle.signal, 2000 + rep);
        out.require(result.summary.valid,
                    "replication " + std::to_string(rep) + " had failed cells");
        if (!result.summary.valid) continue;
        if (result.summary.optimal_vs_signal > result.summary.optimal_vs_raw)
            ++signal_higher;
        optima << (rep ? " " : "") << result.summary.optimal_vs_raw << ">"
               << result.summary.optimal_vs_signal;
    }
    out.require(signal_higher >= 4,
                "signal frame preferred a larger perplexity in only " +
                    std::to_string(signal_higher) + "/5 replications");
    out.detail << signal_higher
               << "/5 replications ordered optimal_vs_signal above raw"
               << " (raw>signal optima per replication: " << optima.str() << ")";
}

void trefoil_and_cluster_ordering(Outcome& out) {
    const Matrix trefoil = dimcal::generate_trefoil(500, 0);
    const auto tre_bundle = dimcal::embed_and_noise(trefoil, 10, 10.0, 61);
    const auto tre = smoke_sweep(tre_bundle.observed, tre_bundle.signal, 62);
    out.require(tre.summary.valid, "trefoil sweep had failed cells");
    if (tre.summary.valid) {
        out.require(tre.summary.optimal_vs_signal > tre.summary.optimal_vs_raw,
                    "trefoil: optimal_vs_signal " +
                        fmt(tre.summary.optimal_vs_signal) + " not above raw " +
                        fmt(tre.summary.optimal_vs_raw));
    }

    const auto clusters =
        dimcal::generate_gaussian_clusters(7, 50, 7, 10.0, 0.5, 2.0, 63);
    const auto clu_bundle =
        dimcal::embed_and_noise(clusters.points, 60, 3.0, 64, clusters.labels);
    const auto clu = smoke_sweep(clu_bundle.observed, clu_bundle.signal, 65);
    out.require(clu.summary.valid, "clusters sweep had failed cells");
    if (clu.summary.valid) {
        out.require(clu.summary.optimal_vs_signal >= clu.summary.optimal_vs_raw,
                    "clusters: optimal_vs_signal " +
                        fmt(clu.summary.optimal_vs_signal) + " below raw " +
                        fmt(clu.summary.optimal_vs_raw));
    }
    if (tre.summary.valid && clu.summary.valid)
        out.detail << "trefoil raw " << tre.summary.optimal_vs_raw << " vs signal "
                   << tre.summary.optimal_vs_signal << "; clusters raw "
                   << clu.summary.optimal_vs_raw << " vs signal "
                   << clu.summary.optimal_vs_signal;
}

void zero_noise_consistency(Outcome& out) {
    const auto links = dimcal::generate_links(250, 0);
    const auto bundle = dimcal::embed_and_noise(links.points, 10, 0.0, 71, links.labels);
    dimcal::SweepConfig config;
    config.grid = smoke_grid();
    config.repeats = 5;
    config.k = 10;
    config.base_seed = 72;
    const auto result = dimcal::run_sweep(bundle.observed, config, bundle.signal);
    out.require(result.summary.valid, "sweep had failed cells");
    if (!result.summary.valid) return;

    // Pointwise |mean_raw - mean_signal| against the across-repeat standard
    // deviation (the larger of the two frames, with a floor for the exactly
    // coincident case).
    double worst_gap = 0.0;
    for (std::size_t g = 0; g < config.grid.size(); ++g) {
        const auto& s = result.summary.per_perplexity[g];
        double var_raw = 0.0, var_signal = 0.0;
        int count = 0;
        for (const auto& rec : result.records) {
            if (rec.perplexity != config.grid[g]) continue;
            var_raw += (rec.trust_raw - s.mean_trust_raw) *
                       (rec.trust_raw - s.mean_trust_raw);
            var_signal += (rec.trust_signal - s.mean_trust_signal) *
                          (rec.trust_signal - s.mean_trust_signal);
            ++count;
        }
        const double sd = std::sqrt(std::max(var_raw, var_signal) /
                                    std::max(count - 1, 1));
        const double gap = std::abs(s.mean_trust_raw - s.mean_trust_signal);
        worst_gap = std::max(worst_gap, gap);
        out.require(gap <= sd + 1e-9,
                    "perplexity " + fmt(config.grid[g]) + ": |mean gap| " +
                        fmt(gap) + " exceeds across-repeat sd " + fmt(sd));
    }
    out.detail << "worst pointwise |trust_raw - trust_signal| mean gap = "
               << fmt(worst_gap);
}

// ---------------------------------------------------------------- criterion 8

void pca_identities(Outcome& out) {
    double worst_round = 0.0, worst_idem = 0.0, worst_energy = 0.0;
    for (std::uint64_t seed = 8000; seed < 8010; ++seed) {
        const Matrix data = oracle::random_matrix(20, 6, seed);

        const auto full = dimcal::fit_pca(data, 6);
        const Matrix round =
            dimcal::inverse_transform(full, dimcal::project(full, data));
        worst_round = std::max(worst_round, (round - data).cwiseAbs().maxCoeff());

        const auto partial = dimcal::fit_pca(data, 2);
        const Matrix once =
            dimcal::inverse_transform(partial, dimcal::project(partial, data));
        const Matrix twice =
            dimcal::inverse_transform(partial, dimcal::project(partial, once));
        worst_idem = std::max(worst_idem, (twice - once).cwiseAbs().maxCoeff());

        double discarded = 0.0;
        for (Index i = 2; i < partial.eigenvalues.size(); ++i)
            discarded += partial.eigenvalues(i);
        const double residual = (data - once).squaredNorm();
        worst_energy = std::max(
            worst_energy,
            std::abs(residual - discarded * static_cast<double>(data.rows() - 1)));
    }
    out.require(worst_round <= 1e-8, "full-rank round trip error " + fmt(worst_round));
    out.require(worst_idem <= 1e-10, "projector idempotence error " + fmt(worst_idem));
    out.require(worst_energy <= 1e-6, "residual energy mismatch " + fmt(worst_energy));
    out.detail << "round trip " << fmt(worst_round) << ", idempotence "
               << fmt(worst_idem) << ", residual energy " << fmt(worst_energy);
}

// ---------------------------------------------------------------- criterion 9

void sweep_determinism(Outcome& out) {
    testutil::TempDir dir;
    const std::string prefix = dir.file("tiny");
    const int gen = testutil::run_cli(
        "generate links --n-per-circle 12 --target-dim 5 --noise-sd 0.3 "
        "--seed 4 --out-prefix " + prefix, dir);
    out.require(gen == 0, "dataset generation exited with " + std::to_string(gen));
    if (gen != 0) return;

    const std::string config = "{\n"
        "  \"observed\": \"" + prefix + "_observed.csv\",\n"
        "  \"signal_dim\": 3,\n"
        "  \"grid\": [4, 7, 10],\n"
        "  \"repeats\": 3,\n"
        "  \"k\": 4,\n"
        "  \"base_seed\": 11,\n"
        "  \"tsne\": {\"max_iter\": 60},\n"
        "  \"output\": {\n"
        "    \"records_csv\": \"" + dir.file("records.csv") + "\",\n"
        "    \"summary_json\": \"" + dir.file("summary.json") + "\"\n"
        "  }\n"
        "}\n";
    testutil::write_file(dir.file("config.json"), config);

    const int first = testutil::run_cli("sweep --config " + dir.file("config.json"), dir);
    const std::string records_a = testutil::read_file(dir.file("records.csv"));
    const int second = testutil::run_cli("sweep --config " + dir.file("config.json"), dir);
    const std::string records_b = testutil::read_file(dir.file("records.csv"));

    out.require(first == 0 && second == 0,
                "sweep exits: " + std::to_string(first) + ", " + std::to_string(second));
    out.require(!records_a.empty(), "first run wrote no records");
    out.require(records_a == records_b, "records CSV differs between runs");
    out.detail << "two runs, " << records_a.size() << " bytes each, byte-identical: "
               << (records_a == records_b ? "yes" : "no");
}

// --------------------------------------------------------------- criterion 10

void rigid_motion_invariance(Outcome& out) {
    double worst_trust = 0.0, worst_shep = 0.0;
    for (std::uint64_t seed = 9000; seed < 9005; ++seed) {
        const Matrix pts = oracle::random_matrix(25, 4, seed);
        Matrix moved = pts * oracle::random_rotation(4, seed + 13);
        for (Index c = 0; c < 4; ++c)
            moved.col(c).array() += 1.5 * static_cast<double>(c) - 2.0;
        for (int k : {1, 5, 8})
            worst_trust = std::max(
                worst_trust,
                std::abs(dimcal::trustworthiness(pts, moved, k).value - 1.0));

        for (double c : {0.25, 3.0, 1234.5}) {
            const Matrix scaled = c * pts;
            worst_shep = std::max(
                worst_shep,
                std::abs(dimcal::shepard_goodness(pts, scaled).value - 1.0));
        }
    }
    out.require(worst_trust <= 1e-12, "trust deviation " + fmt(worst_trust));
    out.require(worst_shep <= 1e-12, "shepard deviation " + fmt(worst_shep));
    out.detail << "max |value - 1|: trust " << fmt(worst_trust) << ", shepard "
               << fmt(worst_shep);
}

// ------------------------------------------------------------------- harness

struct Criterion {
    int id;
    std::string name;
    double time_budget_s; // 0 = untimed
    std::function<void(Outcome&)> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "metric oracle equivalence", 10.0, metric_oracle_equivalence},
        {2, "perplexity calibration", 5.0, perplexity_calibration},
        {3, "gradient vs finite differences", 5.0, gradient_correctness},
        {4, "affinity normalization conservation", 0.0, normalization_conservation},
        {5, "links ordering (smoke protocol)", 900.0, links_ordering},
        {6, "trefoil and clusters ordering", 0.0, trefoil_and_cluster_ordering},
        {7, "zero-noise frame consistency", 0.0, zero_noise_consistency},
        {8, "pca identities", 0.0, pca_identities},
        {9, "sweep determinism (CLI)", 0.0, sweep_determinism},
        {10, "rigid motion invariance", 0.0, rigid_motion_invariance},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    bool all_pass = true;
    for (const auto& criterion : criteria) {
        if (!selected.empty() && !selected.count(criterion.id)) continue;

        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(outcome);
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (criterion.time_budget_s > 0.0 && elapsed > criterion.time_budget_s) {
            outcome.require(false, "took " + fmt(elapsed) + " s, budget " +
                                       fmt(criterion.time_budget_s) + " s");
        }

        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " C" << criterion.id
                  << " " << criterion.name << " (" << fmt(elapsed) << " s)";
        const std::string detail = outcome.detail.str();
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n" << std::flush;
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
