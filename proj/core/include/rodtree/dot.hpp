#pragma once

#include <string>

#include "rodtree/tree.hpp"

namespace rodtree {

// Graphviz DOT digraph of a trained tree: box per node with the split rule
// (internal nodes), gini, sample count, class counts and majority class;
// edges labeled true/false. Node ids are "n<k>" in pre-order. Deterministic.
std::string export_dot(const Tree& tree);

void save_dot(const Tree& tree, const std::string& path);

} // namespace rodtree
