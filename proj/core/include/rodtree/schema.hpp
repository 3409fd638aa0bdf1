#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rodtree {

enum class FeatureKind {
    binary,           // 0/1 flag
    ordinal_category, // small ordered code set
    count,            // nonnegative event count
};

std::string_view to_string(FeatureKind kind);

struct ValueRange {
    std::int64_t min = 0;
    std::int64_t max = 0;

    bool contains(std::int64_t v) const { return v >= min && v <= max; }
    friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

struct FeatureSpec {
    std::string code; // short unique code used in CSV headers, e.g. "PP"
    std::string name;
    FeatureKind kind = FeatureKind::count;
    ValueRange range;

    friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

// Ordered feature list. Construction validates that codes are unique, ranges
// are non-empty, and binary features use exactly [0, 1].
class FeatureSchema {
public:
    FeatureSchema() = default;
    explicit FeatureSchema(std::vector<FeatureSpec> features);

    std::size_t size() const { return features_.size(); }
    const FeatureSpec& at(std::size_t index) const;
    const std::vector<FeatureSpec>& features() const { return features_; }

    // Index of a feature by code. "AV" is accepted as an alias for the AVO
    // breach count "AB", which also circulates under that abbreviation.
    std::optional<std::size_t> index_of(std::string_view code) const;

    std::vector<std::string> codes() const;

    friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;

private:
    std::vector<FeatureSpec> features_;
};

// The canonical 11-feature re-offence schema, in column order:
// G, A, IS, DA, CO, AB, PC, P5, P2, PO, PP.
//
// Encodings: binary flags are 0/1; the age band A uses 5 ordinal codes 0-4;
// the disadvantage quartile DA uses codes 0-3; count features are uncapped
// nonnegative integers.
const FeatureSchema& rod_schema();

// Upper bound used for count features ([0, 2^31 - 1]).
inline constexpr std::int64_t kCountMax = 2147483647;

} // namespace rodtree
