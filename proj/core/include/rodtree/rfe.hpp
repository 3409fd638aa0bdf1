#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rodtree/metrics.hpp"
#include "rodtree/sampling.hpp"
#include "rodtree/tree.hpp"

namespace rodtree {

// Score a trained tree on a labeled dataset: AUC from leaf probabilities,
// hard predictions from leaf majority labels.
MetricsReport evaluate_tree(const Tree& tree, const Dataset& test);

struct RfeResultEntry {
    Tree tree;
    std::vector<int> features_used; // schema indices, ascending
    TreeSize tree_size;
    double auc = 0.0;
    double f_measure = 0.0;
};

// The feature in `features` with minimal mean-decrease-in-impurity
// importance in the tree. Ties - including the all-zero tie among features
// the tree never split on - go to the largest schema index, so elimination
// is deterministic.
int least_important(const Tree& tree, std::span<const int> features);

// Iterative feature elimination: optionally class-balance the training set,
// then repeatedly train a tree on the surviving features, score it on the
// test set, and drop the least important feature until one feature is left.
// Returns exactly schema-size entries with strictly nested feature sets.
//
// Pass nullopt for `balance` when the training set is already balanced (or
// deliberately unbalanced); the method's seed drives all sampling.
std::vector<RfeResultEntry> run_rfe(const Dataset& train, const Dataset& test,
                                    std::optional<BalanceMethod> balance,
                                    const TreeParams& params);

// Removal order implied by a ledger: the feature dropped after each entry,
// with the final survivor appended last. Length equals the schema size.
std::vector<int> elimination_order(const std::vector<RfeResultEntry>& entries);

// Per-run ledger CSV: n_features,feature_codes,total_nodes,leaf_count,auc,f_measure
// (feature codes are space separated within the field).
std::string rfe_ledger_csv(const FeatureSchema& schema,
                           const std::vector<RfeResultEntry>& entries);

struct RfeRun {
    FeatureSchema schema;
    std::string method;                 // "under" or "over"
    std::vector<int> elimination_order; // as returned by elimination_order()
};

struct RankingRow {
    std::string method;
    std::vector<int> ranked_features; // best (survived longest) first
    std::vector<double> mean_ranks;   // aligned with ranked_features
};

// Aggregates elimination orders across runs into one ranking per balance
// method: a feature's rank in a run is m - (elimination step index), ranks
// are averaged across the method's runs, ties fall back to schema order.
// Rows appear in first-seen method order.
std::vector<RankingRow> aggregate_rankings(const std::vector<RfeRun>& runs);

std::string rankings_csv(const std::vector<RankingRow>& rows, const FeatureSchema& schema);
std::string rankings_text(const std::vector<RankingRow>& rows, const FeatureSchema& schema);

} // namespace rodtree
