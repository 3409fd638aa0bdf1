#pragma once

#include <iosfwd>
#include <string>

#include "rodtree/dataset.hpp"

namespace rodtree {

// CSV layout: UTF-8, comma separated, header row of feature codes plus a
// final "label" column, integer cells only, no quoting. Integer round-trip:
// load_csv(save_csv(d)) == d for fully labeled datasets.

Dataset load_csv(const std::string& path, const FeatureSchema& schema);
Dataset load_csv(std::istream& in, const FeatureSchema& schema,
                 const std::string& source_name = "<stream>");

void save_csv(const Dataset& data, const std::string& path);
void save_csv(const Dataset& data, std::ostream& out);

} // namespace rodtree
