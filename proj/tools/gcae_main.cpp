// gcae: fit / eval / synth / benchmark for multi-view binary clustering.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcae/gcae.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void print_metrics_block(const gcae::ClusteringMetrics& m) {
    std::printf("ACC=%.6f\n", m.acc);
    std::printf("NMI=%.6f\n", m.nmi);
    std::printf("Purity=%.6f\n", m.purity);
    std::printf("Fscore=%.6f\n", m.fscore);
    std::printf("Precision=%.6f\n", m.precision);
    std::printf("ARI=%.6f\n", m.ari);
}

gcae::RunReport build_report(const gcae::GcaeResult& result, const gcae::RunConfig& cfg,
                             const gcae::MultiViewDataset& ds, double runtime) {
    gcae::RunReport report;
    if (ds.labels) report.metrics = gcae::evaluate_all(*ds.labels, result.model.labels());
    report.trajectory = result.trajectory.entries;
    report.view_weights.assign(result.state.p.data(), result.state.p.data() + result.state.p.size());
    report.runtime_seconds = runtime;
    report.config_echo = cfg.config_echo;
    report.decorrelation_residual = gcae::decorrelation_residual(result.state.B);
    report.bits = cfg.hyper.bits;
    report.seed = cfg.hyper.seed;
    report.label_values = ds.label_values;
    return report;
}

void write_fit_outputs(const gcae::GcaeResult& result, const gcae::RunConfig& cfg,
                       const gcae::MultiViewDataset& ds, double runtime) {
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    gcae::save_matrix_csv(result.state.B, (out / "codes.csv").string());
    gcae::save_labels_csv(result.model.labels(), (out / "labels.csv").string());
    gcae::save_trajectory_csv(result.trajectory.entries, (out / "trajectory.csv").string());
    gcae::save_matrix_csv(result.model.Q, (out / "model_Q.csv").string());
    gcae::save_matrix_csv(result.model.H, (out / "model_H.csv").string());
    for (int v = 0; v < result.state.n_views(); ++v)
        gcae::save_matrix_csv(result.state.W[v],
                              (out / ("model_W_" + std::to_string(v) + ".csv")).string());
    gcae::save_matrix_csv(result.state.p.transpose(), (out / "model_p.csv").string());
    build_report(result, cfg, ds, runtime).save((out / "report.json").string());
}

int cmd_fit(const std::string& config_path) {
    const auto cfg = gcae::RunConfig::from_file(config_path);
    const auto ds = gcae::load_manifest(cfg.manifest);
    const auto start = Clock::now();
    const auto result = gcae::run_gcae(ds, cfg.hyper, cfg.n_clusters);
    const double runtime = seconds_since(start);
    write_fit_outputs(result, cfg, ds, runtime);
    if (ds.labels) print_metrics_block(gcae::evaluate_all(*ds.labels, result.model.labels()));
    std::printf("runtime_seconds=%.3f\n", runtime);
    std::printf("output_dir=%s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path,
             const std::string& report_path) {
    std::vector<long long> dummy;
    const auto pred_raw = gcae::load_labels_csv(pred_path);
    const auto truth_raw = gcae::load_labels_csv(truth_path);
    gcae::require(pred_raw.size() == truth_raw.size(),
                  "eval: prediction and truth files differ in length");
    const auto pred = gcae::remap_labels(pred_raw, dummy);
    std::vector<long long> truth_values;
    const auto truth = gcae::remap_labels(truth_raw, truth_values);

    const auto metrics = gcae::evaluate_all(truth, pred);
    print_metrics_block(metrics);
    if (metrics.degenerate)
        std::printf("warning=degenerate_pair_counts\n");

    gcae::RunReport report;
    report.metrics = metrics;
    report.label_values = truth_values;
    report.save(report_path);
    return 0;
}

int cmd_synth(const std::string& config_path) {
    const auto cfg = gcae::SynthConfig::from_file(config_path);
    const auto ds = gcae::synth_multiview(cfg.n_samples, cfg.n_clusters, cfg.dims,
                                          cfg.separation, cfg.noise, cfg.seed);
    const std::string manifest = gcae::save_dataset(ds, cfg.out_dir);
    std::printf("manifest=%s\n", manifest.c_str());
    return 0;
}

int cmd_benchmark(const std::string& config_path) {
    const auto cfg = gcae::RunConfig::from_file(config_path);
    const auto ds = gcae::load_manifest(cfg.manifest);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    const gcae::RhoSchedule schedule{cfg.hyper.rho, 2.0, 1e3};

    nlohmann::json summary;
    summary["config_echo"] = cfg.config_echo;

    auto bench_start = Clock::now();
    const auto baseline = gcae::run_baseline(ds, cfg.hyper.bits, cfg.n_clusters, schedule,
                                             cfg.hyper.mu, 50, cfg.hyper.seed);
    const double baseline_runtime = seconds_since(bench_start);
    gcae::save_labels_csv(baseline.model.labels(), (out / "baseline_labels.csv").string());

    std::optional<gcae::ClusteringMetrics> baseline_metrics;
    if (ds.labels) baseline_metrics = gcae::evaluate_all(*ds.labels, baseline.model.labels());

    summary["baseline"] = {{"runtime_seconds", baseline_runtime}};
    if (baseline_metrics)
        summary["baseline"]["acc"] = baseline_metrics->acc;

    std::printf("%-12s %8s %8s %8s %10s\n", "method", "ACC", "NMI", "Purity", "seconds");
    if (baseline_metrics)
        std::printf("%-12s %8.4f %8.4f %8.4f %10.3f\n", "baseline", baseline_metrics->acc,
                    baseline_metrics->nmi, baseline_metrics->purity, baseline_runtime);
    else
        std::printf("%-12s %8s %8s %8s %10.3f\n", "baseline", "-", "-", "-", baseline_runtime);

    if (!cfg.baseline_only) {
        bench_start = Clock::now();
        const auto result = gcae::run_gcae(ds, cfg.hyper, cfg.n_clusters);
        const double gcae_runtime = seconds_since(bench_start);
        write_fit_outputs(result, cfg, ds, gcae_runtime);
        std::optional<gcae::ClusteringMetrics> metrics;
        if (ds.labels) metrics = gcae::evaluate_all(*ds.labels, result.model.labels());
        summary["gcae"] = {{"runtime_seconds", gcae_runtime}};
        if (metrics) {
            summary["gcae"]["acc"] = metrics->acc;
            std::printf("%-12s %8.4f %8.4f %8.4f %10.3f\n", "gcae", metrics->acc, metrics->nmi,
                        metrics->purity, gcae_runtime);
        } else {
            std::printf("%-12s %8s %8s %8s %10.3f\n", "gcae", "-", "-", "-", gcae_runtime);
        }
    }

    std::ofstream sum_out(out / "benchmark.json");
    if (!sum_out) throw gcae::IoError("cannot write benchmark summary");
    sum_out << summary.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-view binary clustering via graph-collaborated auto-encoder hashing"};
    app.require_subcommand(1);

    std::string config_path, pred_path, truth_path;
    std::string eval_report_path = "eval_report.json";

    auto* fit = app.add_subcommand("fit", "Fit codes and clusters from a config file");
    fit->add_option("--config", config_path, "key=value config file")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate predicted labels against ground truth");
    eval->add_option("--pred", pred_path, "predicted labels CSV")->required();
    eval->add_option("--truth", truth_path, "ground-truth labels CSV")->required();
    eval->add_option("--out", eval_report_path, "where to write the metrics report");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic multi-view dataset");
    synth->add_option("--config", config_path, "key=value config file")->required();

    auto* bench = app.add_subcommand("benchmark", "Run GCAE against the random-projection baseline");
    bench->add_option("--config", config_path, "key=value config file")->required();

    try {
        app.parse(argc, argv);
        if (fit->parsed()) return cmd_fit(config_path);
        if (eval->parsed()) return cmd_eval(pred_path, truth_path, eval_report_path);
        if (synth->parsed()) return cmd_synth(config_path);
        if (bench->parsed()) return cmd_benchmark(config_path);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::fprintf(stderr, "error category=validation message=\"%s\"\n", e.what());
        return 1;
    } catch (const gcae::ValidationError& e) {
        std::fprintf(stderr, "error category=validation message=\"%s\"\n", e.what());
        return 1;
    } catch (const gcae::IoError& e) {
        std::fprintf(stderr, "error category=io message=\"%s\"\n", e.what());
        return 2;
    } catch (const gcae::NumericalError& e) {
        std::fprintf(stderr, "error category=numerical message=\"%s\"\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error category=internal message=\"%s\"\n", e.what());
        return 3;
    }
}
