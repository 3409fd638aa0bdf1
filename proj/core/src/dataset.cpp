#include "rodtree/dataset.hpp"

#include <cmath>
#include <utility>

#include "rodtree/error.hpp"
#include "rodtree/rng.hpp"

namespace rodtree {

Dataset::Dataset(FeatureSchema schema, std::vector<Record> records, std::string provenance)
    : schema_(std::move(schema)), records_(std::move(records)), provenance_(std::move(provenance)) {
    for (std::size_t r = 0; r < records_.size(); ++r) {
        const Record& rec = records_[r];
        if (rec.values.size() != schema_.size())
            throw SchemaError("record " + std::to_string(r) + ": expected " +
                              std::to_string(schema_.size()) + " values, got " +
                              std::to_string(rec.values.size()));
        for (std::size_t f = 0; f < rec.values.size(); ++f) {
            const FeatureSpec& spec = schema_.at(f);
            if (!spec.range.contains(rec.values[f]))
                throw SchemaError("record " + std::to_string(r) + ": value " +
                                  std::to_string(rec.values[f]) + " out of range for feature " +
                                  spec.code);
        }
        if (rec.label && *rec.label != 0 && *rec.label != 1)
            throw SchemaError("record " + std::to_string(r) + ": label must be 0 or 1");
    }
}

bool Dataset::fully_labeled() const {
    for (const auto& r : records_)
        if (!r.label) return false;
    return true;
}

ClassCounts class_counts(const Dataset& data) {
    ClassCounts counts;
    for (std::size_t i = 0; i < data.records().size(); ++i) {
        const auto& label = data.records()[i].label;
        if (!label)
            throw InvalidArgument("class_counts: record " + std::to_string(i) + " is unlabeled");
        (*label == 1 ? counts.n1 : counts.n0)++;
    }
    return counts;
}

TrainTestSplit train_test_split(const Dataset& data, double train_fraction, std::uint64_t seed) {
    if (data.empty())
        throw InvalidArgument("train_test_split: dataset is empty");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw InvalidArgument("train_test_split: train_fraction must be in (0, 1)");

    const std::size_t n = data.size();
    // Round half up.
    const auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(n) + 0.5));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<Record> train_records, test_records;
    train_records.reserve(n_train);
    test_records.reserve(n - n_train);
    for (std::size_t i = 0; i < n; ++i) {
        const Record& rec = data.records()[order[i]];
        (i < n_train ? train_records : test_records).push_back(rec);
    }

    return {
        Dataset(data.schema(), std::move(train_records), data.provenance() + " [train]"),
        Dataset(data.schema(), std::move(test_records), data.provenance() + " [test]"),
    };
}

} // namespace rodtree
