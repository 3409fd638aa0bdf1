#pragma once

#include <optional>
#include <span>

#include "rodtree/tree.hpp"

namespace rodtree {

struct SplitCandidate {
    SplitRule rule;
    double gain = 0.0; // weighted impurity decrease of the split
};

// Best admissible threshold split over the given features, or nullopt when
// no candidate has positive gain (pure node, constant features, or leaf-size
// constraints). Candidates are midpoints between consecutive distinct sorted
// values per feature; the winner maximizes
//   gain = G(parent) - (nL/n) G(left) - (nR/n) G(right)
// subject to both sides holding >= min_samples_leaf records. Comparisons and
// the positivity test use exact integer arithmetic, so ties are broken
// deterministically by lowest feature index, then lowest threshold, with no
// floating-point noise.
std::optional<SplitCandidate> best_split(const Dataset& data,
                                         std::span<const std::int32_t> rows,
                                         std::span<const int> active_features,
                                         int min_samples_leaf = 1);

// Whole-dataset convenience overload.
std::optional<SplitCandidate> best_split(const Dataset& data,
                                         std::span<const int> active_features,
                                         int min_samples_leaf = 1);

// Best-first CART growth: expandable leaves wait in a frontier ordered by
// n * gain of their best split (ties by node creation order) and the best
// one is expanded until no leaf has a positive-gain admissible split or the
// leaf count reaches params.max_leaf_nodes. Deterministic for fixed inputs.
//
// Training sets beyond 250,000 records are rejected; the exact frontier
// comparisons are sized for that bound.
Tree grow(const Dataset& train, std::vector<int> active_features, const TreeParams& params);

// Grow on every schema feature.
Tree grow(const Dataset& train, const TreeParams& params);

} // namespace rodtree
