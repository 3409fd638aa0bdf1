#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rodtree/dataset.hpp"

namespace rodtree {

struct TreeParams {
    int max_leaf_nodes = 0; // 0 = unbounded; when bounded must be >= 2
    int min_samples_split = 2;
    int min_samples_leaf = 1;
    // Split criterion is Gini impurity; there is no alternative.

    bool bounded() const { return max_leaf_nodes > 0; }
    friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

// Gini impurity of a two-class count pair; in [0, 0.5]. Throws when both
// counts are zero.
double gini(std::int64_t c0, std::int64_t c1);

// Threshold test on one feature; records with value <= threshold go left.
// Thresholds sit at midpoints of consecutive distinct observed values.
struct SplitRule {
    int feature = -1;
    double threshold = 0.0;

    friend bool operator==(const SplitRule&, const SplitRule&) = default;
};

struct Node {
    std::array<std::int64_t, 2> counts{0, 0}; // training records per class
    double impurity = 0.0;
    SplitRule split{};        // meaningful only for internal nodes
    int left = -1, right = -1; // child node ids; -1 on leaves

    bool is_leaf() const { return left < 0; }
    std::int64_t samples() const { return counts[0] + counts[1]; }
    // Majority label; a tie goes to class 0.
    int majority_label() const { return counts[1] > counts[0] ? 1 : 0; }
    double prob_positive() const {
        return static_cast<double>(counts[1]) / static_cast<double>(samples());
    }
};

struct TreeSize {
    std::int64_t total_nodes = 0;
    std::int64_t leaf_count = 0;

    friend bool operator==(const TreeSize&, const TreeSize&) = default;
};

struct FeatureImportances {
    std::vector<double> values; // one entry per schema feature, sums to 1
    bool has_splits = false;    // false => all-zero vector (single-leaf tree)
};

// A trained binary classification tree. Immutable; nodes are stored in a
// flat vector with node 0 as the root.
class Tree {
public:
    // Validates structure: child counts sum to parent counts, split features
    // lie in active_features, leaf budget respected.
    Tree(FeatureSchema schema, std::vector<int> active_features, TreeParams params,
         std::vector<Node> nodes);

    const FeatureSchema& schema() const { return schema_; }
    const std::vector<int>& active_features() const { return active_features_; }
    const TreeParams& params() const { return params_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& root() const { return nodes_.front(); }

    // Node id of the leaf a record is routed to.
    int leaf_for(const Record& record) const;
    double predict_proba(const Record& record) const;
    int predict_label(const Record& record) const;

    TreeSize size_info() const;

    // Normalized mean decrease in impurity: per internal node the weighted
    // gain (n_node / n_root) * gain accrues to its split feature. Features
    // that never split get 0. A single-leaf tree yields an all-zero vector
    // with has_splits = false.
    FeatureImportances feature_importances() const;

    // Structural equality (schema, params, active features, node layout).
    friend bool operator==(const Tree& a, const Tree& b);

private:
    FeatureSchema schema_;
    std::vector<int> active_features_;
    TreeParams params_;
    std::vector<Node> nodes_;
};

} // namespace rodtree
