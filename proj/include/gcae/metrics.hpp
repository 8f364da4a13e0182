#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gcae/common.hpp"

namespace gcae {

namespace detail {

inline void check_label_pair(const std::vector<int>& truth, const std::vector<int>& pred) {
    require(!truth.empty(), "metrics: empty label vectors");
    require(truth.size() == pred.size(), "metrics: label vectors differ in length");
    for (int l : truth) require(l >= 0, "metrics: negative label");
    for (int l : pred) require(l >= 0, "metrics: negative label");
}

/// counts[i][j] = #samples with pred cluster i and truth class j
inline std::vector<std::vector<long long>> contingency(const std::vector<int>& pred,
                                                       const std::vector<int>& truth) {
    const int cp = 1 + *std::max_element(pred.begin(), pred.end());
    const int ct = 1 + *std::max_element(truth.begin(), truth.end());
    std::vector<std::vector<long long>> counts(cp, std::vector<long long>(ct, 0));
    for (std::size_t i = 0; i < pred.size(); ++i) ++counts[pred[i]][truth[i]];
    return counts;
}

/// Minimum-cost perfect matching on a square cost matrix (shortest
/// augmenting path / Jonker-Volgenant). Returns the optimal total cost.
inline double hungarian_min_cost(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0);  // match[col] = row (1-based)
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, false);
        std::vector<int> way(n + 1, 0);
        do {
            used[j0] = true;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j)
        if (match[j] > 0) total += cost[match[j] - 1][j - 1];
    return total;
}

/// Canonical relabeling by first occurrence; two vectors describe the same
/// partition iff their canonical forms are equal.
inline std::vector<int> canonical_partition(const std::vector<int>& labels) {
    std::vector<int> mapping(1 + *std::max_element(labels.begin(), labels.end()), -1);
    std::vector<int> out(labels.size());
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (mapping[labels[i]] < 0) mapping[labels[i]] = next++;
        out[i] = mapping[labels[i]];
    }
    return out;
}

inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    return canonical_partition(a) == canonical_partition(b);
}

inline double entropy(const std::vector<long long>& sizes, long long n) {
    double h = 0.0;
    for (long long s : sizes)
        if (s > 0) {
            const double q = static_cast<double>(s) / static_cast<double>(n);
            h -= q * std::log(q);
        }
    return h;
}

inline long long pairs_of(long long s) { return s * (s - 1) / 2; }

}  // namespace detail

/// Clustering accuracy: best cluster-to-class matching over the contingency
/// table (optimal assignment, rectangular table padded square), divided by N.
inline double accuracy(const std::vector<int>& truth, const std::vector<int>& pred) {
    detail::check_label_pair(truth, pred);
    const auto counts = detail::contingency(pred, truth);
    const int cp = static_cast<int>(counts.size());
    const int ct = static_cast<int>(counts[0].size());
    const int n = std::max(cp, ct);
    long long max_count = 0;
    for (const auto& row : counts)
        for (long long c : row) max_count = std::max(max_count, c);
    // maximize matches == minimize (max_count - count), zero-padded to square
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, static_cast<double>(max_count)));
    for (int i = 0; i < cp; ++i)
        for (int j = 0; j < ct; ++j)
            cost[i][j] = static_cast<double>(max_count - counts[i][j]);
    const double min_cost = detail::hungarian_min_cost(cost);
    const double matched = static_cast<double>(max_count) * n - min_cost;
    return matched / static_cast<double>(truth.size());
}

/// NMI with geometric-mean normalization I / sqrt(H_t * H_p). If either
/// entropy is zero: 1 when the partitions are identical, else 0.
inline double nmi(const std::vector<int>& truth, const std::vector<int>& pred) {
    detail::check_label_pair(truth, pred);
    const auto counts = detail::contingency(pred, truth);
    const long long n = static_cast<long long>(truth.size());
    std::vector<long long> pred_sizes(counts.size(), 0);
    std::vector<long long> truth_sizes(counts[0].size(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts[0].size(); ++j) {
            pred_sizes[i] += counts[i][j];
            truth_sizes[j] += counts[i][j];
        }
    const double hp = detail::entropy(pred_sizes, n);
    const double ht = detail::entropy(truth_sizes, n);
    if (hp == 0.0 || ht == 0.0) return detail::same_partition(truth, pred) ? 1.0 : 0.0;

    double mi = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts[0].size(); ++j) {
            const long long nij = counts[i][j];
            if (nij == 0) continue;
            const double pij = static_cast<double>(nij) / dn;
            mi += pij * std::log(dn * static_cast<double>(nij) /
                                 (static_cast<double>(pred_sizes[i]) *
                                  static_cast<double>(truth_sizes[j])));
        }
    const double value = mi / std::sqrt(ht * hp);
    return std::clamp(value, 0.0, 1.0);
}

/// Fraction of samples covered by each predicted cluster's majority class.
inline double purity(const std::vector<int>& truth, const std::vector<int>& pred) {
    detail::check_label_pair(truth, pred);
    const auto counts = detail::contingency(pred, truth);
    long long matched = 0;
    for (const auto& row : counts) matched += *std::max_element(row.begin(), row.end());
    return static_cast<double>(matched) / static_cast<double>(truth.size());
}

/// Unordered sample-pair counts: together in both / pred only / truth only /
/// neither. Sums to N(N-1)/2. Shared basis for F-score, Precision and ARI.
struct PairCounts {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;

    long long total() const { return tp + fp + fn + tn; }
};

inline PairCounts pair_counts(const std::vector<int>& truth, const std::vector<int>& pred) {
    detail::check_label_pair(truth, pred);
    const auto counts = detail::contingency(pred, truth);
    const long long n = static_cast<long long>(truth.size());
    long long same_both = 0, same_pred = 0, same_truth = 0;
    std::vector<long long> truth_sizes(counts[0].size(), 0);
    for (const auto& row : counts) {
        long long row_sum = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            same_both += detail::pairs_of(row[j]);
            truth_sizes[j] += row[j];
            row_sum += row[j];
        }
        same_pred += detail::pairs_of(row_sum);
    }
    for (long long s : truth_sizes) same_truth += detail::pairs_of(s);

    PairCounts pc;
    pc.tp = same_both;
    pc.fp = same_pred - same_both;
    pc.fn = same_truth - same_both;
    pc.tn = detail::pairs_of(n) - pc.tp - pc.fp - pc.fn;
    return pc;
}

struct PairMetrics {
    double fscore = 0.0;
    double precision = 0.0;
    double ari = 0.0;
    bool degenerate = false;  // a 0/0 was resolved to 0 in precision/F
};

/// Precision = TP/(TP+FP), Recall = TP/(TP+FN), F = 2PR/(P+R); 0/0 -> 0 with
/// the degenerate flag raised. ARI via the adjusted pair-counting formula;
/// a zero adjusted denominator resolves to 1 for identical partitions, 0
/// otherwise.
inline PairMetrics fscore_precision_ari(const std::vector<int>& truth,
                                        const std::vector<int>& pred) {
    const PairCounts pc = pair_counts(truth, pred);
    PairMetrics out;

    const long long pred_pairs = pc.tp + pc.fp;
    const long long truth_pairs = pc.tp + pc.fn;
    double recall = 0.0;
    if (pred_pairs == 0) {
        out.degenerate = true;
    } else {
        out.precision = static_cast<double>(pc.tp) / static_cast<double>(pred_pairs);
    }
    if (truth_pairs == 0) {
        out.degenerate = true;
    } else {
        recall = static_cast<double>(pc.tp) / static_cast<double>(truth_pairs);
    }
    if (out.precision + recall > 0.0)
        out.fscore = 2.0 * out.precision * recall / (out.precision + recall);
    else
        out.degenerate = true;

    const double all_pairs = static_cast<double>(pc.total());
    const double expected =
        static_cast<double>(pred_pairs) * static_cast<double>(truth_pairs) / all_pairs;
    const double max_index = 0.5 * static_cast<double>(pred_pairs + truth_pairs);
    if (max_index == expected)
        out.ari = detail::same_partition(truth, pred) ? 1.0 : 0.0;
    else
        out.ari = (static_cast<double>(pc.tp) - expected) / (max_index - expected);
    return out;
}

/// All six measures in one bundle, for reports.
struct ClusteringMetrics {
    double acc = 0.0;
    double nmi = 0.0;
    double purity = 0.0;
    double fscore = 0.0;
    double precision = 0.0;
    double ari = 0.0;
    bool degenerate = false;
};

inline ClusteringMetrics evaluate_all(const std::vector<int>& truth,
                                      const std::vector<int>& pred) {
    ClusteringMetrics m;
    m.acc = accuracy(truth, pred);
    m.nmi = nmi(truth, pred);
    m.purity = purity(truth, pred);
    const PairMetrics pm = fscore_precision_ari(truth, pred);
    m.fscore = pm.fscore;
    m.precision = pm.precision;
    m.ari = pm.ari;
    m.degenerate = pm.degenerate;
    return m;
}

}  // namespace gcae
