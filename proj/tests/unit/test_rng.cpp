#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rodtree/rng.hpp"

using rodtree::Rng;

TEST_CASE("same seed, same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += a.next_u64() == b.next_u64();
    CHECK(equal == 0);
}

TEST_CASE("below stays in range and covers it") {
    Rng rng(7);
    std::vector<int> hits(10, 0);
    for (int i = 0; i < 10'000; ++i) {
        const auto v = rng.below(10);
        REQUIRE(v < 10);
        hits[static_cast<std::size_t>(v)]++;
    }
    for (const int h : hits) CHECK(h > 800); // ~1000 expected per bucket
    CHECK_THROWS_AS((void)rng.below(0), rodtree::InvalidArgument);
}

TEST_CASE("uniform in [0,1)") {
    Rng rng(3);
    double sum = 0.0;
    for (int i = 0; i < 10'000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 10'000 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("shuffle permutes") {
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    Rng rng(9);
    rng.shuffle(v);
    CHECK_FALSE(std::is_sorted(v.begin(), v.end()));
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 100; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("sample_without_replacement draws distinct indices") {
    Rng rng(11);
    const auto sample = rng.sample_without_replacement(50, 20);
    REQUIRE(sample.size() == 20);
    std::vector<std::size_t> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.back() < 50);
    CHECK_THROWS_AS((void)rng.sample_without_replacement(3, 4), rodtree::InvalidArgument);
}

TEST_CASE("poisson mean roughly matches") {
    Rng rng(13);
    double sum = 0.0;
    for (int i = 0; i < 20'000; ++i) sum += static_cast<double>(rng.poisson(2.0));
    CHECK(sum / 20'000 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("derive produces distinct deterministic streams") {
    CHECK(Rng::derive(42, 0) == Rng::derive(42, 0));
    CHECK(Rng::derive(42, 0) != Rng::derive(42, 1));
    CHECK(Rng::derive(42, 0) != Rng::derive(43, 0));
}
