#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcae/common.hpp"
#include "gcae/encoder.hpp"
#include "gcae/metrics.hpp"

namespace gcae {

/// Everything a finished run reports: the six metrics (when ground truth is
/// available), the loss trajectory, final view weights, wall-clock time, a
/// verbatim config echo, the code decorrelation diagnostic ||B B^T / N - I||_F,
/// code length and seed. Round-trips losslessly through JSON.
struct RunReport {
    std::optional<ClusteringMetrics> metrics;
    std::vector<LossBreakdown> trajectory;
    std::vector<double> view_weights;
    double runtime_seconds = 0.0;
    std::string config_echo;
    double decorrelation_residual = 0.0;
    int bits = 0;
    std::uint64_t seed = 0;
    std::vector<long long> label_values;

    nlohmann::json to_json() const {
        nlohmann::json j;
        if (metrics) {
            j["metrics"] = {{"acc", metrics->acc},           {"nmi", metrics->nmi},
                            {"purity", metrics->purity},     {"fscore", metrics->fscore},
                            {"precision", metrics->precision}, {"ari", metrics->ari},
                            {"degenerate", metrics->degenerate}};
        } else {
            j["metrics"] = nullptr;
        }
        j["trajectory"] = nlohmann::json::array();
        for (const LossBreakdown& e : trajectory)
            j["trajectory"].push_back({{"graph", e.graph},
                                       {"encode", e.encode},
                                       {"decode", e.decode},
                                       {"cluster", e.cluster},
                                       {"total", e.total()}});
        j["view_weights"] = view_weights;
        j["runtime_seconds"] = runtime_seconds;
        j["config_echo"] = config_echo;
        j["decorrelation_residual"] = decorrelation_residual;
        j["bits"] = bits;
        j["seed"] = seed;
        j["label_values"] = label_values;
        return j;
    }

    static RunReport from_json(const nlohmann::json& j) {
        RunReport r;
        if (!j.at("metrics").is_null()) {
            const auto& m = j.at("metrics");
            ClusteringMetrics cm;
            cm.acc = m.at("acc").get<double>();
            cm.nmi = m.at("nmi").get<double>();
            cm.purity = m.at("purity").get<double>();
            cm.fscore = m.at("fscore").get<double>();
            cm.precision = m.at("precision").get<double>();
            cm.ari = m.at("ari").get<double>();
            cm.degenerate = m.at("degenerate").get<bool>();
            r.metrics = cm;
        }
        for (const auto& e : j.at("trajectory")) {
            LossBreakdown b;
            b.graph = e.at("graph").get<double>();
            b.encode = e.at("encode").get<double>();
            b.decode = e.at("decode").get<double>();
            b.cluster = e.at("cluster").get<double>();
            r.trajectory.push_back(b);
        }
        r.view_weights = j.at("view_weights").get<std::vector<double>>();
        r.runtime_seconds = j.at("runtime_seconds").get<double>();
        r.config_echo = j.at("config_echo").get<std::string>();
        r.decorrelation_residual = j.at("decorrelation_residual").get<double>();
        r.bits = j.at("bits").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.label_values = j.at("label_values").get<std::vector<long long>>();
        return r;
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw IoError("cannot write report: " + path);
        out << to_json().dump(2) << '\n';
        if (!out) throw IoError("report write failed: " + path);
    }

    static RunReport load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open report: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("malformed report JSON: ") + e.what());
        }
        return from_json(j);
    }
};

/// ||B B^T / N - I||_F: how far the codes are from the (unenforced)
/// decorrelation constraint. Reported, never asserted.
inline double decorrelation_residual(const Matrix& B) {
    const Eigen::Index n = B.cols();
    Matrix gram = (B * B.transpose()) / static_cast<double>(n);
    gram.diagonal().array() -= 1.0;
    return gram.norm();
}

/// Trajectory CSV: iteration, total, then the per-term breakdown.
inline void save_trajectory_csv(const std::vector<LossBreakdown>& entries,
                                const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trajectory: " + path);
    out << "iteration,total,graph,encode,decode,cluster\n";
    char buf[64];
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const LossBreakdown& e = entries[i];
        out << i;
        for (double v : {e.total(), e.graph, e.encode, e.decode, e.cluster}) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("trajectory write failed: " + path);
}

}  // namespace gcae
