#include "rodtree/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rodtree/error.hpp"

namespace rodtree {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "rodtree-model";

json node_to_json(const std::vector<Node>& nodes, int id) {
    const Node& node = nodes[static_cast<std::size_t>(id)];
    json j;
    if (node.is_leaf()) {
        j["kind"] = "leaf";
        j["counts"] = {node.counts[0], node.counts[1]};
    } else {
        j["kind"] = "internal";
        j["feature"] = node.split.feature;
        j["threshold"] = node.split.threshold;
        j["counts"] = {node.counts[0], node.counts[1]};
        j["children"] = {node_to_json(nodes, node.left), node_to_json(nodes, node.right)};
    }
    return j;
}

std::string kind_to_string(FeatureKind kind) {
    return std::string(to_string(kind));
}

FeatureKind kind_from_string(const std::string& s, const std::string& path) {
    if (s == "binary") return FeatureKind::binary;
    if (s == "ordinal_category") return FeatureKind::ordinal_category;
    if (s == "count") return FeatureKind::count;
    throw ParseError("model document " + path + ": unknown feature kind '" + s + "'");
}

const json& require(const json& j, const char* field, const std::string& path) {
    const auto it = j.find(field);
    if (it == j.end())
        throw ParseError("model document " + path + ": missing field '" + field + "'");
    return *it;
}

int parse_nodes(const json& j, const std::string& path, std::vector<Node>& nodes) {
    if (!j.is_object())
        throw ParseError("model document " + path + ": node must be an object");
    const std::string kind = require(j, "kind", path).get<std::string>();
    const json& counts = require(j, "counts", path);
    if (!counts.is_array() || counts.size() != 2 || !counts[0].is_number_integer() ||
        !counts[1].is_number_integer())
        throw ParseError("model document " + path +
                         ": 'counts' must be a pair of integers");

    Node node;
    node.counts = {counts[0].get<std::int64_t>(), counts[1].get<std::int64_t>()};
    if (node.counts[0] < 0 || node.counts[1] < 0 || node.samples() <= 0)
        throw ParseError("model document " + path + ": bad class counts");
    node.impurity = gini(node.counts[0], node.counts[1]);

    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);

    if (kind == "leaf") {
        if (j.contains("children"))
            throw ParseError("model document " + path + ": leaf must not have children");
        return id;
    }
    if (kind != "internal")
        throw ParseError("model document " + path + ": unknown node kind '" + kind + "'");

    const json& feature = require(j, "feature", path);
    const json& threshold = require(j, "threshold", path);
    const json& children = require(j, "children", path);
    if (!feature.is_number_integer())
        throw ParseError("model document " + path + ": 'feature' must be an integer");
    if (!threshold.is_number())
        throw ParseError("model document " + path + ": 'threshold' must be a number");
    if (!children.is_array() || children.size() != 2)
        throw ParseError("model document " + path + ": 'children' must hold two nodes");

    const int left = parse_nodes(children[0], path + "/children/0", nodes);
    const int right = parse_nodes(children[1], path + "/children/1", nodes);
    Node& parent = nodes[static_cast<std::size_t>(id)];
    parent.split = SplitRule{feature.get<int>(), threshold.get<double>()};
    parent.left = left;
    parent.right = right;
    return id;
}

} // namespace

std::string serialize_model(const Tree& tree) {
    json doc;
    doc["format"] = kFormatName;
    doc["version"] = kFormatVersion;

    json schema = json::array();
    for (const FeatureSpec& f : tree.schema().features()) {
        schema.push_back({{"code", f.code},
                          {"name", f.name},
                          {"kind", kind_to_string(f.kind)},
                          {"min", f.range.min},
                          {"max", f.range.max}});
    }
    doc["schema"] = std::move(schema);
    doc["active_features"] = tree.active_features();
    doc["params"] = {{"max_leaf_nodes", tree.params().max_leaf_nodes},
                     {"min_samples_split", tree.params().min_samples_split},
                     {"min_samples_leaf", tree.params().min_samples_leaf}};
    doc["root"] = node_to_json(tree.nodes(), 0);
    return doc.dump(2) + "\n";
}

Tree deserialize_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model document: invalid JSON: ") + e.what());
    }

    if (!doc.is_object() || require(doc, "format", "/").get<std::string>() != kFormatName)
        throw ParseError("model document /: not a rodtree-model document");
    if (require(doc, "version", "/").get<int>() != kFormatVersion)
        throw ParseError("model document /: unsupported version");

    const json& schema_json = require(doc, "schema", "/");
    if (!schema_json.is_array())
        throw ParseError("model document /schema: must be an array");
    std::vector<FeatureSpec> specs;
    for (std::size_t i = 0; i < schema_json.size(); ++i) {
        const json& f = schema_json[i];
        const std::string path = "/schema/" + std::to_string(i);
        FeatureSpec spec;
        spec.code = require(f, "code", path).get<std::string>();
        spec.name = require(f, "name", path).get<std::string>();
        spec.kind = kind_from_string(require(f, "kind", path).get<std::string>(), path);
        spec.range = {require(f, "min", path).get<std::int64_t>(),
                      require(f, "max", path).get<std::int64_t>()};
        specs.push_back(std::move(spec));
    }

    const json& active_json = require(doc, "active_features", "/");
    if (!active_json.is_array())
        throw ParseError("model document /active_features: must be an array");
    std::vector<int> active;
    for (const auto& v : active_json) active.push_back(v.get<int>());

    const json& params_json = require(doc, "params", "/");
    TreeParams params;
    params.max_leaf_nodes = require(params_json, "max_leaf_nodes", "/params").get<int>();
    params.min_samples_split = require(params_json, "min_samples_split", "/params").get<int>();
    params.min_samples_leaf = require(params_json, "min_samples_leaf", "/params").get<int>();

    std::vector<Node> nodes;
    parse_nodes(require(doc, "root", "/"), "/root", nodes);

    try {
        return Tree(FeatureSchema(std::move(specs)), std::move(active), params,
                    std::move(nodes));
    } catch (const Error& e) {
        throw ParseError(std::string("model document: inconsistent tree: ") + e.what());
    }
}

void save_model(const Tree& tree, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << serialize_model(tree);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

Tree load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return deserialize_model(buffer.str());
}

} // namespace rodtree
