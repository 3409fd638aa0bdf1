#include "rodtree/tree.hpp"

#include <algorithm>
#include <cmath>

#include "rodtree/error.hpp"

namespace rodtree {

double gini(std::int64_t c0, std::int64_t c1) {
    const std::int64_t n = c0 + c1;
    if (n <= 0) throw InvalidArgument("gini: empty count pair");
    const double p0 = static_cast<double>(c0) / static_cast<double>(n);
    const double p1 = static_cast<double>(c1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

namespace {

// Rewrites an arbitrary node layout (root at index 0) into pre-order, left
// subtree before right. Node ids are then stable across serialization and
// match the "n<k>" ids in DOT output.
std::vector<Node> preorder_layout(const std::vector<Node>& nodes) {
    std::vector<Node> ordered;
    ordered.reserve(nodes.size());
    std::vector<char> visited(nodes.size(), 0);

    // Explicit stack of (old id, slot in parent) pairs; the parent slot is
    // patched once the child's new id is known.
    struct Frame {
        int old_id;
        int parent_new_id; // -1 for the root
        bool is_left = false;
    };
    std::vector<Frame> stack{{0, -1, false}};
    while (!stack.empty()) {
        const Frame frame = stack.back();
        stack.pop_back();
        if (frame.old_id < 0 || static_cast<std::size_t>(frame.old_id) >= nodes.size())
            throw InvalidArgument("Tree: child id out of range");
        if (visited[static_cast<std::size_t>(frame.old_id)])
            throw InvalidArgument("Tree: node graph is not a tree");
        visited[static_cast<std::size_t>(frame.old_id)] = 1;

        const int new_id = static_cast<int>(ordered.size());
        ordered.push_back(nodes[static_cast<std::size_t>(frame.old_id)]);
        if (frame.parent_new_id >= 0) {
            Node& parent = ordered[static_cast<std::size_t>(frame.parent_new_id)];
            (frame.is_left ? parent.left : parent.right) = new_id;
        }
        const Node& node = ordered.back();
        if (!node.is_leaf()) {
            // Right pushed first so the left subtree is laid out first.
            stack.push_back({node.right, new_id, false});
            stack.push_back({node.left, new_id, true});
        }
    }
    if (ordered.size() != nodes.size())
        throw InvalidArgument("Tree: unreachable nodes in layout");
    return ordered;
}

} // namespace

Tree::Tree(FeatureSchema schema, std::vector<int> active_features, TreeParams params,
           std::vector<Node> nodes)
    : schema_(std::move(schema)),
      active_features_(std::move(active_features)),
      params_(params) {
    if (nodes.empty()) throw InvalidArgument("Tree: no nodes");
    nodes_ = preorder_layout(nodes);

    std::int64_t leaves = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& node = nodes_[i];
        if (node.samples() <= 0)
            throw InvalidArgument("Tree: node " + std::to_string(i) + " has no samples");
        if (node.is_leaf()) {
            ++leaves;
            continue;
        }
        if (node.left < 0 || node.right < 0 ||
            static_cast<std::size_t>(node.left) >= nodes_.size() ||
            static_cast<std::size_t>(node.right) >= nodes_.size())
            throw InvalidArgument("Tree: node " + std::to_string(i) + " has bad child ids");
        const Node& l = nodes_[node.left];
        const Node& r = nodes_[node.right];
        if (l.counts[0] + r.counts[0] != node.counts[0] ||
            l.counts[1] + r.counts[1] != node.counts[1])
            throw InvalidArgument("Tree: node " + std::to_string(i) +
                                  ": child counts do not sum to parent counts");
        if (std::find(active_features_.begin(), active_features_.end(), node.split.feature) ==
            active_features_.end())
            throw InvalidArgument("Tree: node " + std::to_string(i) +
                                  " splits on a feature outside active_features");
        if (node.split.feature < 0 ||
            static_cast<std::size_t>(node.split.feature) >= schema_.size())
            throw InvalidArgument("Tree: node " + std::to_string(i) +
                                  " splits on a feature outside the schema");
    }
    if (params_.bounded() && leaves > params_.max_leaf_nodes)
        throw InvalidArgument("Tree: leaf count exceeds max_leaf_nodes");
}

int Tree::leaf_for(const Record& record) const {
    if (record.values.size() != schema_.size())
        throw SchemaError("predict: record has " + std::to_string(record.values.size()) +
                          " values, schema has " + std::to_string(schema_.size()));
    int id = 0;
    while (!nodes_[id].is_leaf()) {
        const Node& node = nodes_[id];
        const double v = static_cast<double>(record.values[node.split.feature]);
        id = v <= node.split.threshold ? node.left : node.right;
    }
    return id;
}

double Tree::predict_proba(const Record& record) const {
    return nodes_[leaf_for(record)].prob_positive();
}

int Tree::predict_label(const Record& record) const {
    return nodes_[leaf_for(record)].majority_label();
}

TreeSize Tree::size_info() const {
    TreeSize size;
    size.total_nodes = static_cast<std::int64_t>(nodes_.size());
    for (const Node& node : nodes_)
        if (node.is_leaf()) ++size.leaf_count;
    return size;
}

FeatureImportances Tree::feature_importances() const {
    FeatureImportances result;
    result.values.assign(schema_.size(), 0.0);

    const double n_root = static_cast<double>(root().samples());
    double total = 0.0;
    for (const Node& node : nodes_) {
        if (node.is_leaf()) continue;
        const Node& l = nodes_[node.left];
        const Node& r = nodes_[node.right];
        const double n = static_cast<double>(node.samples());
        const double gain = node.impurity -
                            (static_cast<double>(l.samples()) / n) * l.impurity -
                            (static_cast<double>(r.samples()) / n) * r.impurity;
        const double contribution = (n / n_root) * gain;
        result.values[static_cast<std::size_t>(node.split.feature)] += contribution;
        total += contribution;
    }

    if (total > 0.0) {
        for (double& v : result.values) v /= total;
        result.has_splits = true;
    }
    return result;
}

bool operator==(const Tree& a, const Tree& b) {
    if (a.schema_ != b.schema_ || a.active_features_ != b.active_features_ ||
        a.params_ != b.params_ || a.nodes_.size() != b.nodes_.size())
        return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        const Node& x = a.nodes_[i];
        const Node& y = b.nodes_[i];
        if (x.counts != y.counts || x.left != y.left || x.right != y.right) return false;
        if (!x.is_leaf() && x.split != y.split) return false;
    }
    return true;
}

} // namespace rodtree
