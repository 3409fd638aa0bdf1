#include "rodtree/dot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rodtree/error.hpp"

namespace rodtree {

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Midpoint thresholds of integer features are exact at one decimal.
std::string threshold_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

} // namespace

std::string export_dot(const Tree& tree) {
    std::ostringstream out;
    out << "digraph tree {\n";
    out << "  node [shape=box, fontname=\"helvetica\"];\n";
    out << "  edge [fontname=\"helvetica\"];\n";

    // Nodes are already stored in pre-order, so ids are just indices.
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
        const Node& node = tree.nodes()[i];
        out << "  n" << i << " [label=\"";
        if (!node.is_leaf()) {
            const FeatureSpec& spec =
                tree.schema().at(static_cast<std::size_t>(node.split.feature));
            out << spec.code << " <= " << threshold_text(node.split.threshold) << "\\n";
        }
        out << "gini = " << fixed4(node.impurity) << "\\n"
            << "samples = " << node.samples() << "\\n"
            << "counts = [" << node.counts[0] << ", " << node.counts[1] << "]\\n"
            << "class = " << node.majority_label() << "\"];\n";
    }
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
        const Node& node = tree.nodes()[i];
        if (node.is_leaf()) continue;
        out << "  n" << i << " -> n" << node.left << " [label=\"true\"];\n";
        out << "  n" << i << " -> n" << node.right << " [label=\"false\"];\n";
    }
    out << "}\n";
    return out.str();
}

void save_dot(const Tree& tree, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << export_dot(tree);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

} // namespace rodtree
