#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcae/common.hpp"
#include "gcae/rng.hpp"

namespace gcae {

/// Per-view feature matrices over a common sample set, optional ground truth.
/// Labels are remapped to contiguous 0-based ids at load time; label_values
/// keeps the original values (label_values[new_id] = original) for reporting.
struct MultiViewDataset {
    std::vector<Matrix> views;
    std::optional<std::vector<int>> labels;
    std::vector<long long> label_values;

    int n_samples() const { return views.empty() ? 0 : static_cast<int>(views[0].rows()); }
    int n_views() const { return static_cast<int>(views.size()); }
    int n_classes() const { return static_cast<int>(label_values.size()); }

    void validate() const {
        require(!views.empty(), "dataset: at least one view required");
        const int n = n_samples();
        require(n >= 1, "dataset: views must be non-empty");
        for (std::size_t v = 0; v < views.size(); ++v) {
            require(views[v].rows() == n,
                    "dataset: view " + std::to_string(v) + " row count mismatch");
            require(views[v].cols() >= 1, "dataset: view " + std::to_string(v) + " has no columns");
            if (!views[v].allFinite())
                throw ValidationError("dataset: view " + std::to_string(v) + " has non-finite entries");
        }
        if (labels) {
            require(static_cast<int>(labels->size()) == n, "dataset: label count != sample count");
            const int c = n_classes();
            for (int l : *labels)
                require(l >= 0 && l < c, "dataset: label id out of range after remap");
        }
    }
};

/// Anchor rows shared across views: the same t sample indices index every
/// view, so the t-dimensional kernel spaces stay aligned.
struct AnchorSet {
    std::vector<Matrix> per_view;  // each t x d^v
    std::vector<int> indices;      // length t, distinct

    int t() const { return static_cast<int>(indices.size()); }
};

// ---------------------------------------------------------------------------
// CSV persistence. Header-free numeric rows, one sample per row, 17
// significant digits so doubles round-trip exactly.
// ---------------------------------------------------------------------------

inline void save_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

namespace detail {

inline double parse_cell(const std::string& cell, const std::string& path) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0'))
        throw IoError("malformed CSV cell '" + cell + "' in " + path);
    return v;
}

inline std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_cell(cell, path));
        if (line.back() == ',') throw IoError("malformed CSV row (trailing comma) in " + path);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline Matrix load_matrix_csv(const std::string& path) {
    auto rows = detail::read_csv_rows(path);
    if (rows.empty()) throw ValidationError("empty matrix file: " + path);
    const std::size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw IoError("ragged CSV rows in " + path);
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

inline std::vector<long long> load_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<long long> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        // tolerate one value per line or a single comma-separated line
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(cell, &used);
                while (used < cell.size() && cell[used] == ' ') ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                labels.push_back(v);
            } catch (const std::exception&) {
                throw IoError("malformed label '" + cell + "' in " + path);
            }
        }
    }
    if (labels.empty()) throw ValidationError("empty labels file: " + path);
    return labels;
}

inline void save_labels_csv(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (int l : labels) out << l << '\n';
    if (!out) throw IoError("write failed: " + path);
}

/// Remap arbitrary integer labels to contiguous 0-based ids (sorted original
/// order). Returns the remapped labels; `values` receives the originals.
inline std::vector<int> remap_labels(const std::vector<long long>& raw,
                                     std::vector<long long>& values) {
    values.assign(raw.begin(), raw.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::map<long long, int> id;
    for (std::size_t i = 0; i < values.size(); ++i) id[values[i]] = static_cast<int>(i);
    std::vector<int> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = id[raw[i]];
    return out;
}

// ---------------------------------------------------------------------------
// Manifest: plain text, one `view=<relative csv path>` per view, optional
// `labels=<path>`. Paths resolve against the manifest's directory.
// ---------------------------------------------------------------------------

inline MultiViewDataset load_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open manifest: " + manifest_path);
    const auto base = std::filesystem::path(manifest_path).parent_path();

    MultiViewDataset ds;
    std::string labels_path;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("manifest line without '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "view") {
            ds.views.push_back(load_matrix_csv((base / value).string()));
        } else if (key == "labels") {
            labels_path = (base / value).string();
        } else {
            throw IoError("unknown manifest key: " + key);
        }
    }
    require(!ds.views.empty(), "manifest lists no views: " + manifest_path);
    if (!labels_path.empty()) {
        const auto raw = load_labels_csv(labels_path);
        ds.labels = remap_labels(raw, ds.label_values);
    }
    ds.validate();
    return ds;
}

/// Write views, labels and a manifest under `dir`; returns the manifest path.
inline std::string save_dataset(const MultiViewDataset& ds, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream man(fs::path(dir) / "manifest.txt");
    if (!man) throw IoError("cannot write manifest in " + dir);
    for (int v = 0; v < ds.n_views(); ++v) {
        const std::string name = "view_" + std::to_string(v) + ".csv";
        save_matrix_csv(ds.views[v], (fs::path(dir) / name).string());
        man << "view=" << name << '\n';
    }
    if (ds.labels) {
        save_labels_csv(*ds.labels, (fs::path(dir) / "labels.csv").string());
        man << "labels=labels.csv\n";
    }
    if (!man) throw IoError("manifest write failed in " + dir);
    return (fs::path(dir) / "manifest.txt").string();
}

// ---------------------------------------------------------------------------
// Synthetic multi-view blobs: one shared cluster assignment, per-view
// gaussian clouds. Desk-scale stand-in for the public benchmark sets.
// ---------------------------------------------------------------------------

inline MultiViewDataset synth_multiview(int n_samples, int n_clusters,
                                        const std::vector<int>& dims,
                                        double separation, double noise,
                                        std::uint64_t seed) {
    require(n_samples >= 1, "synth: n_samples must be >= 1");
    require(n_clusters >= 1 && n_clusters <= n_samples, "synth: need 1 <= n_clusters <= n_samples");
    require(!dims.empty(), "synth: dims must be non-empty");
    for (int d : dims) require(d >= 1, "synth: every view dimension must be >= 1");
    require(separation > 0.0, "synth: separation must be positive");
    require(noise >= 0.0, "synth: noise must be non-negative");

    Rng rng(seed);
    MultiViewDataset ds;

    // round-robin assignment: balanced and deterministic
    std::vector<int> labels(n_samples);
    for (int i = 0; i < n_samples; ++i) labels[i] = i % n_clusters;

    const double min_gap = separation * noise;
    for (int d : dims) {
        Matrix centers = rng.gaussian_matrix(n_clusters, d);
        if (n_clusters > 1 && min_gap > 0.0) {
            double closest = std::numeric_limits<double>::infinity();
            for (int a = 0; a < n_clusters; ++a)
                for (int b = a + 1; b < n_clusters; ++b)
                    closest = std::min(closest, (centers.row(a) - centers.row(b)).norm());
            if (closest < min_gap) centers *= (min_gap / closest) * (1.0 + 1e-9);
        }
        Matrix view(n_samples, d);
        for (int i = 0; i < n_samples; ++i)
            for (int j = 0; j < d; ++j)
                view(i, j) = centers(labels[i], j) + noise * rng.gaussian();
        ds.views.push_back(std::move(view));
    }

    ds.labels = labels;
    ds.label_values.resize(n_clusters);
    for (int k = 0; k < n_clusters; ++k) ds.label_values[k] = k;
    ds.validate();
    return ds;
}

/// Sample t anchor rows; the SAME indices are used in every view.
inline AnchorSet sample_anchors(const MultiViewDataset& ds, int t, Rng& rng) {
    ds.validate();
    const int n = ds.n_samples();
    require(t >= 1 && t <= n, "sample_anchors: need 1 <= t <= n_samples");
    AnchorSet set;
    set.indices = rng.sample_without_replacement(n, t);
    for (const Matrix& view : ds.views) {
        Matrix a(t, view.cols());
        for (int i = 0; i < t; ++i) a.row(i) = view.row(set.indices[i]);
        set.per_view.push_back(std::move(a));
    }
    return set;
}

inline AnchorSet sample_anchors(const MultiViewDataset& ds, int t, std::uint64_t seed) {
    Rng rng(seed);
    return sample_anchors(ds, t, rng);
}

}  // namespace gcae
