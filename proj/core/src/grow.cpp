#include "rodtree/grow.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "rodtree/error.hpp"

namespace rodtree {

namespace {

using Int128 = __int128;

constexpr std::size_t kMaxTrainRecords = 250'000;

// Weighted child impurity of a split, kept as the exact fraction
//   T = a0*a1/nL + b0*b1/nR = (a0*a1*nR + b0*b1*nL) / (nL*nR),
// which relates to the gain by gain = (2/n) * (c0*c1/n - T). Smaller T means
// larger gain for a fixed parent.
struct ChildImpurity {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct ExactSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    ChildImpurity t;
};

struct Matrix {
    std::vector<std::vector<std::int64_t>> columns; // [feature][row]
    std::vector<std::int8_t> labels;                // [row]
};

Matrix build_matrix(const Dataset& data, const char* op) {
    Matrix m;
    const std::size_t n = data.size();
    const std::size_t width = data.schema().size();
    m.columns.assign(width, std::vector<std::int64_t>(n));
    m.labels.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const Record& rec = data.records()[r];
        if (!rec.label)
            throw InvalidArgument(std::string(op) + ": record " + std::to_string(r) +
                                  " is unlabeled");
        m.labels[r] = static_cast<std::int8_t>(*rec.label);
        for (std::size_t f = 0; f < width; ++f) m.columns[f][r] = rec.values[f];
    }
    return m;
}

std::vector<int> checked_feature_set(std::vector<int> features, std::size_t width,
                                     const char* op) {
    if (features.empty())
        throw InvalidArgument(std::string(op) + ": active feature set is empty");
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());
    for (const int f : features)
        if (f < 0 || static_cast<std::size_t>(f) >= width)
            throw InvalidArgument(std::string(op) + ": feature index " + std::to_string(f) +
                                  " outside the schema");
    return features;
}

ExactSplit find_best_split(const Matrix& m, std::span<const std::int32_t> rows,
                           std::span<const int> features, int min_samples_leaf,
                           std::vector<std::pair<std::int64_t, std::int8_t>>& scratch) {
    ExactSplit best;
    const std::int64_t n = static_cast<std::int64_t>(rows.size());
    if (n < 2) return best;

    std::int64_t c0 = 0, c1 = 0;
    for (const std::int32_t r : rows) (m.labels[r] ? c1 : c0)++;
    if (c0 == 0 || c1 == 0) return best; // pure node, nothing to gain
    const Int128 parent_pairs = static_cast<Int128>(c0) * c1;

    for (const int f : features) {
        const auto& column = m.columns[static_cast<std::size_t>(f)];
        scratch.clear();
        for (const std::int32_t r : rows) scratch.emplace_back(column[r], m.labels[r]);
        std::sort(scratch.begin(), scratch.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::int64_t a0 = 0, a1 = 0;
        for (std::int64_t i = 0; i < n - 1; ++i) {
            (scratch[static_cast<std::size_t>(i)].second ? a1 : a0)++;
            const std::int64_t v = scratch[static_cast<std::size_t>(i)].first;
            const std::int64_t next = scratch[static_cast<std::size_t>(i + 1)].first;
            if (v == next) continue;

            const std::int64_t n_left = i + 1;
            const std::int64_t n_right = n - n_left;
            if (n_left < min_samples_leaf || n_right < min_samples_leaf) continue;

            const std::int64_t b0 = c0 - a0;
            const std::int64_t b1 = c1 - a1;
            const std::int64_t num = a0 * a1 * n_right + b0 * b1 * n_left;
            const std::int64_t den = n_left * n_right;

            // Positive gain: T < c0*c1/n.
            if (static_cast<Int128>(num) * n >= parent_pairs * den) continue;
            // Strictly smaller T wins; scanning features and thresholds in
            // ascending order keeps the lowest feature index, then the
            // lowest threshold, on exact ties.
            if (best.found &&
                static_cast<Int128>(num) * best.t.den >=
                    static_cast<Int128>(best.t.num) * den)
                continue;

            best.found = true;
            best.feature = f;
            best.threshold = (static_cast<double>(v) + static_cast<double>(next)) / 2.0;
            best.t = {num, den};
        }
    }
    return best;
}

double gain_from_fraction(std::int64_t c0, std::int64_t c1, std::int64_t n,
                          const ChildImpurity& t) {
    const double parent = static_cast<double>(c0) * static_cast<double>(c1) /
                          static_cast<double>(n);
    const double child = static_cast<double>(t.num) / static_cast<double>(t.den);
    return 2.0 * (parent - child) / static_cast<double>(n);
}

// Frontier entry: a leaf with a known admissible split, prioritized by the
// exact fraction n * gain = 2 * (c0*c1*den - num*n) / (n*den).
struct Pending {
    int node_id = -1;
    ExactSplit split;
    Int128 priority_num = 0;
    std::int64_t priority_den = 1;
    std::vector<std::int32_t> rows;
};

// Up to n^7/64 in the cross products; fits __int128 for n <= 250k.
bool lower_priority(const Pending& a, const Pending& b) {
    const Int128 lhs = a.priority_num * b.priority_den;
    const Int128 rhs = b.priority_num * a.priority_den;
    if (lhs != rhs) return lhs < rhs;
    return a.node_id > b.node_id; // earlier-created node first
}

} // namespace

std::optional<SplitCandidate> best_split(const Dataset& data,
                                         std::span<const std::int32_t> rows,
                                         std::span<const int> active_features,
                                         int min_samples_leaf) {
    if (min_samples_leaf < 1)
        throw InvalidArgument("best_split: min_samples_leaf must be >= 1");
    const std::vector<int> features = checked_feature_set(
        std::vector<int>(active_features.begin(), active_features.end()), data.schema().size(),
        "best_split");
    const Matrix m = build_matrix(data, "best_split");
    for (const std::int32_t r : rows)
        if (r < 0 || static_cast<std::size_t>(r) >= data.size())
            throw InvalidArgument("best_split: row index out of range");

    std::vector<std::pair<std::int64_t, std::int8_t>> scratch;
    const ExactSplit found = find_best_split(m, rows, features, min_samples_leaf, scratch);
    if (!found.found) return std::nullopt;

    std::int64_t c0 = 0, c1 = 0;
    for (const std::int32_t r : rows) (m.labels[r] ? c1 : c0)++;
    return SplitCandidate{
        SplitRule{found.feature, found.threshold},
        gain_from_fraction(c0, c1, static_cast<std::int64_t>(rows.size()), found.t),
    };
}

std::optional<SplitCandidate> best_split(const Dataset& data,
                                         std::span<const int> active_features,
                                         int min_samples_leaf) {
    std::vector<std::int32_t> rows(data.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<std::int32_t>(i);
    return best_split(data, rows, active_features, min_samples_leaf);
}

Tree grow(const Dataset& train, std::vector<int> active_features, const TreeParams& params) {
    if (train.empty()) throw InvalidArgument("grow: training set is empty");
    if (train.size() > kMaxTrainRecords)
        throw InvalidArgument("grow: training sets beyond 250,000 records are not supported");
    if (params.bounded() && params.max_leaf_nodes < 2)
        throw InvalidArgument("grow: max_leaf_nodes must be >= 2 when bounded");
    if (params.min_samples_split < 1)
        throw InvalidArgument("grow: min_samples_split must be >= 1");
    if (params.min_samples_leaf < 1)
        throw InvalidArgument("grow: min_samples_leaf must be >= 1");

    const std::vector<int> features =
        checked_feature_set(std::move(active_features), train.schema().size(), "grow");
    const Matrix m = build_matrix(train, "grow");

    std::vector<Node> nodes;
    std::vector<std::pair<std::int64_t, std::int8_t>> scratch;

    const auto make_node = [&](std::span<const std::int32_t> rows) {
        Node node;
        for (const std::int32_t r : rows) node.counts[m.labels[r] ? 1 : 0]++;
        node.impurity = gini(node.counts[0], node.counts[1]);
        nodes.push_back(node);
        return static_cast<int>(nodes.size()) - 1;
    };

    const auto try_enqueue = [&](std::vector<Pending>& heap, int node_id,
                                 std::vector<std::int32_t> rows) {
        const Node& node = nodes[static_cast<std::size_t>(node_id)];
        if (node.samples() < params.min_samples_split) return;
        if (node.counts[0] == 0 || node.counts[1] == 0) return;
        ExactSplit split =
            find_best_split(m, rows, features, params.min_samples_leaf, scratch);
        if (!split.found) return;

        Pending p;
        p.node_id = node_id;
        p.split = split;
        const std::int64_t n = node.samples();
        p.priority_num = 2 * (static_cast<Int128>(node.counts[0]) * node.counts[1] * split.t.den -
                              static_cast<Int128>(split.t.num) * n);
        p.priority_den = n * split.t.den;
        p.rows = std::move(rows);
        heap.push_back(std::move(p));
        std::push_heap(heap.begin(), heap.end(), lower_priority);
    };

    std::vector<std::int32_t> all_rows(train.size());
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = static_cast<std::int32_t>(i);

    std::vector<Pending> frontier;
    make_node(all_rows);
    try_enqueue(frontier, 0, std::move(all_rows));

    int leaf_count = 1;
    while (!frontier.empty() && (!params.bounded() || leaf_count < params.max_leaf_nodes)) {
        std::pop_heap(frontier.begin(), frontier.end(), lower_priority);
        Pending p = std::move(frontier.back());
        frontier.pop_back();

        const auto& column = m.columns[static_cast<std::size_t>(p.split.feature)];
        std::vector<std::int32_t> left_rows, right_rows;
        for (const std::int32_t r : p.rows) {
            (static_cast<double>(column[r]) <= p.split.threshold ? left_rows : right_rows)
                .push_back(r);
        }

        const int left_id = make_node(left_rows);
        const int right_id = make_node(right_rows);
        Node& parent = nodes[static_cast<std::size_t>(p.node_id)];
        parent.split = SplitRule{p.split.feature, p.split.threshold};
        parent.left = left_id;
        parent.right = right_id;
        ++leaf_count;

        try_enqueue(frontier, left_id, std::move(left_rows));
        try_enqueue(frontier, right_id, std::move(right_rows));
    }

    return Tree(train.schema(), features, params, std::move(nodes));
}

Tree grow(const Dataset& train, const TreeParams& params) {
    std::vector<int> all(train.schema().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return grow(train, std::move(all), params);
}

} // namespace rodtree
