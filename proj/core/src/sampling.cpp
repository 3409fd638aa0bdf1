#include "rodtree/sampling.hpp"

#include <utility>

#include "rodtree/error.hpp"
#include "rodtree/rng.hpp"

namespace rodtree {

std::string_view to_string(BalanceMethod::Variant v) {
    return v == BalanceMethod::Variant::under ? "under" : "over";
}

BalanceMethod::Variant parse_balance_variant(std::string_view text) {
    if (text == "under") return BalanceMethod::Variant::under;
    if (text == "over") return BalanceMethod::Variant::over;
    throw InvalidArgument("unknown balance method: '" + std::string(text) +
                          "' (expected 'under' or 'over')");
}

namespace {

struct ClassSplit {
    std::vector<std::size_t> minority; // indices of the smaller class
    std::vector<std::size_t> majority;
};

ClassSplit split_by_class(const Dataset& data, const char* op) {
    std::vector<std::size_t> zeros, ones;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& label = data.records()[i].label;
        if (!label)
            throw InvalidArgument(std::string(op) + ": record " + std::to_string(i) +
                                  " is unlabeled");
        (*label == 1 ? ones : zeros).push_back(i);
    }
    if (zeros.empty() || ones.empty())
        throw InvalidArgument(std::string(op) + ": both classes must be present");
    // Class 1 is the expected minority; swap when it is not.
    if (ones.size() <= zeros.size()) return {std::move(ones), std::move(zeros)};
    return {std::move(zeros), std::move(ones)};
}

Dataset assemble(const Dataset& data, std::vector<std::size_t> picked, Rng& rng,
                 const char* tag) {
    rng.shuffle(picked);
    std::vector<Record> records;
    records.reserve(picked.size());
    for (const std::size_t i : picked) records.push_back(data.records()[i]);
    return Dataset(data.schema(), std::move(records), data.provenance() + tag);
}

} // namespace

Dataset under_sample(const Dataset& data, std::uint64_t seed) {
    const ClassSplit classes = split_by_class(data, "under_sample");
    const std::size_t n_min = classes.minority.size();

    Rng rng(seed);
    std::vector<std::size_t> picked = classes.minority;
    picked.reserve(2 * n_min);
    for (const std::size_t k : rng.sample_without_replacement(classes.majority.size(), n_min))
        picked.push_back(classes.majority[k]);

    return assemble(data, std::move(picked), rng, " [under-sampled]");
}

Dataset over_sample(const Dataset& data, std::uint64_t seed) {
    const ClassSplit classes = split_by_class(data, "over_sample");
    const std::size_t n_min = classes.minority.size();
    const std::size_t n_maj = classes.majority.size();
    const std::size_t base_copies = n_maj / n_min;
    const std::size_t remainder = n_maj % n_min;

    Rng rng(seed);
    std::vector<bool> extra_copy(n_min, false);
    for (const std::size_t k : rng.sample_without_replacement(n_min, remainder))
        extra_copy[k] = true;

    std::vector<std::size_t> picked = classes.majority;
    picked.reserve(2 * n_maj);
    for (std::size_t k = 0; k < n_min; ++k) {
        const std::size_t copies = base_copies + (extra_copy[k] ? 1 : 0);
        for (std::size_t c = 0; c < copies; ++c) picked.push_back(classes.minority[k]);
    }

    return assemble(data, std::move(picked), rng, " [over-sampled]");
}

Dataset balance(const Dataset& data, const BalanceMethod& method) {
    return method.variant == BalanceMethod::Variant::under ? under_sample(data, method.seed)
                                                           : over_sample(data, method.seed);
}

} // namespace rodtree
