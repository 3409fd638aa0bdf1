#pragma once

// Independent reference implementations used to check the library. These are
// deliberately written the slow, obvious way and share no code with the
// implementations under test.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rodtree/dataset.hpp"

namespace oracle {

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Exhaustive enumeration of every (feature, midpoint) candidate using plain
// double arithmetic: gain = G(parent) - (nL/n) G(L) - (nR/n) G(R), both
// children >= min_samples_leaf, gain > 0 required; ties keep the lowest
// feature index, then the lowest threshold.
std::optional<SplitChoice> exhaustive_best_split(const rodtree::Dataset& data,
                                                 const std::vector<int>& features,
                                                 int min_samples_leaf);

// Tie-corrected pair counting: mean over all (positive, negative) pairs of
// 1 / 0.5 / 0 for win / tie / loss.
double mann_whitney_auc(const std::vector<int>& labels, const std::vector<double>& scores);

// Minimal DOT digraph validator: digraph keyword, balanced braces, node
// statements before use in edges, quoted labels closed. Returns an error
// description or empty string when the text parses.
std::string check_dot(const std::string& text);

} // namespace oracle
