#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rodtree/schema.hpp"

namespace rodtree {

struct Record {
    std::vector<std::int64_t> values;
    std::optional<int> label; // 1 = re-offended within the follow-up window

    friend bool operator==(const Record&, const Record&) = default;
};

// Immutable after construction; safe to share read-only across threads.
class Dataset {
public:
    Dataset() = default;
    // Validates every record against the schema (vector length, value
    // ranges, label in {0, 1}).
    Dataset(FeatureSchema schema, std::vector<Record> records, std::string provenance = "");

    const FeatureSchema& schema() const { return schema_; }
    const std::vector<Record>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const std::string& provenance() const { return provenance_; }

    bool fully_labeled() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    FeatureSchema schema_;
    std::vector<Record> records_;
    std::string provenance_;
};

struct ClassCounts {
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;

    std::int64_t total() const { return n0 + n1; }
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Counts records per class; throws if any record is unlabeled.
ClassCounts class_counts(const Dataset& data);

struct TrainTestSplit {
    Dataset train;
    Dataset test;
};

// Seeded random partition. |train| = round-half-up(train_fraction * n); the
// permutation comes from the toolkit Rng, so equal (data, fraction, seed)
// give equal splits.
TrainTestSplit train_test_split(const Dataset& data, double train_fraction, std::uint64_t seed);

} // namespace rodtree
