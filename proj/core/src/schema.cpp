#include "rodtree/schema.hpp"

#include <unordered_set>

#include "rodtree/error.hpp"

namespace rodtree {

std::string_view to_string(FeatureKind kind) {
    switch (kind) {
    case FeatureKind::binary: return "binary";
    case FeatureKind::ordinal_category: return "ordinal_category";
    case FeatureKind::count: return "count";
    }
    return "?";
}

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> features)
    : features_(std::move(features)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& f : features_) {
        if (f.code.empty())
            throw SchemaError("feature code must not be empty");
        if (!seen.insert(f.code).second)
            throw SchemaError("duplicate feature code: " + f.code);
        if (f.range.min > f.range.max)
            throw SchemaError("feature " + f.code + ": empty value range");
        if (f.kind == FeatureKind::binary && (f.range.min != 0 || f.range.max != 1))
            throw SchemaError("feature " + f.code + ": binary features must use range [0, 1]");
    }
}

const FeatureSpec& FeatureSchema::at(std::size_t index) const {
    if (index >= features_.size())
        throw InvalidArgument("feature index out of range");
    return features_[index];
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view code) const {
    if (code == "AV") code = "AB"; // common alias for the AVO breach count
    for (std::size_t i = 0; i < features_.size(); ++i)
        if (features_[i].code == code) return i;
    return std::nullopt;
}

std::vector<std::string> FeatureSchema::codes() const {
    std::vector<std::string> out;
    out.reserve(features_.size());
    for (const auto& f : features_) out.push_back(f.code);
    return out;
}

const FeatureSchema& rod_schema() {
    static const FeatureSchema schema{std::vector<FeatureSpec>{
        {"G", "gender", FeatureKind::binary, {0, 1}},
        {"A", "age band at index court finalisation", FeatureKind::ordinal_category, {0, 4}},
        {"IS", "indigenous status", FeatureKind::binary, {0, 1}},
        {"DA", "residential disadvantage quartile", FeatureKind::ordinal_category, {0, 3}},
        {"CO", "concurrent proven offences at index appearance", FeatureKind::count, {0, kCountMax}},
        {"AB", "proven AVO breaches at index appearance", FeatureKind::count, {0, kCountMax}},
        {"PC", "prior proven convictions", FeatureKind::count, {0, kCountMax}},
        {"P5", "prior serious violent convictions, past 5 years", FeatureKind::count, {0, kCountMax}},
        {"P2", "prior DV property damage convictions, past 2 years", FeatureKind::count, {0, kCountMax}},
        {"PO", "prior bonds, past 5 years", FeatureKind::count, {0, kCountMax}},
        {"PP", "prior prison or custodial orders", FeatureKind::count, {0, kCountMax}},
    }};
    return schema;
}

} // namespace rodtree
