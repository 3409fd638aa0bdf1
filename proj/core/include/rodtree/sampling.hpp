#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rodtree/dataset.hpp"

namespace rodtree {

struct BalanceMethod {
    enum class Variant { under, over };

    Variant variant = Variant::under;
    std::uint64_t seed = 0;
};

std::string_view to_string(BalanceMethod::Variant v);
// Accepts "under" or "over".
BalanceMethod::Variant parse_balance_variant(std::string_view text);

// Keeps every minority record once plus a uniform sample without replacement
// of equally many majority records; output size 2 * n_minority, order
// shuffled by seed. If class 1 is not the smaller class the roles swap.
Dataset under_sample(const Dataset& data, std::uint64_t seed);

// Keeps every majority record once and replicates minority records
// round-robin until the classes are equal (copy counts differ by at most
// one; which records get the extra copy is a seeded draw without
// replacement); output size 2 * n_majority, order shuffled by seed.
Dataset over_sample(const Dataset& data, std::uint64_t seed);

Dataset balance(const Dataset& data, const BalanceMethod& method);

} // namespace rodtree
