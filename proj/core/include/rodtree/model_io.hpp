#pragma once

#include <string>

#include "rodtree/tree.hpp"

namespace rodtree {

// Versioned JSON model document. Nodes use exactly the fields kind, feature,
// threshold, counts, children; leaves carry kind and counts only. Thresholds
// are written with the shortest decimal representation that round-trips.
std::string serialize_model(const Tree& tree);

// Throws ParseError with the path to the offending node on malformed input.
Tree deserialize_model(const std::string& text);

void save_model(const Tree& tree, const std::string& path);
Tree load_model(const std::string& path);

} // namespace rodtree
