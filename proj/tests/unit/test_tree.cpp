#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "../support/builders.hpp"
#include "../support/oracles.hpp"
#include "rodtree/dot.hpp"
#include "rodtree/error.hpp"
#include "rodtree/grow.hpp"
#include "rodtree/model_io.hpp"
#include "rodtree/tree.hpp"

using namespace rodtree;

namespace {

// Stump over the canonical schema: PP <= 0.5, left counts (90,10), right
// counts (20,80).
Tree pp_stump() {
    const int pp = static_cast<int>(*rod_schema().index_of("PP"));
    Node root;
    root.counts = {110, 90};
    root.impurity = gini(110, 90);
    root.split = SplitRule{pp, 0.5};
    root.left = 1;
    root.right = 2;
    Node left;
    left.counts = {90, 10};
    left.impurity = gini(90, 10);
    Node right;
    right.counts = {20, 80};
    right.impurity = gini(20, 80);
    return Tree(rod_schema(), {pp}, TreeParams{}, {root, left, right});
}

Record rod_record(std::int64_t pp_value) {
    Record rec;
    rec.values.assign(rod_schema().size(), 0);
    rec.values[*rod_schema().index_of("PP")] = pp_value;
    rec.label = std::nullopt;
    return rec;
}

} // namespace

TEST_CASE("gini") {
    CHECK(gini(10, 0) == 0.0);
    CHECK(gini(0, 10) == 0.0);
    CHECK(gini(5, 5) == 0.5);
    CHECK(gini(7, 3) == doctest::Approx(0.42).epsilon(1e-12));
    CHECK_THROWS_AS((void)gini(0, 0), InvalidArgument);
}

TEST_CASE("best_split hand cases") {
    const FeatureSchema schema = testutil::count_schema(1);
    const std::vector<int> features{0};

    SUBCASE("values 1..4, labels 0,0,1,1 split at 2.5 with gain 0.5") {
        const Dataset data = testutil::make_dataset(
            schema, {{{1}, 0}, {{2}, 0}, {{3}, 1}, {{4}, 1}});
        const auto split = best_split(data, features);
        REQUIRE(split.has_value());
        CHECK(split->rule.feature == 0);
        CHECK(split->rule.threshold == 2.5);
        CHECK(split->gain == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("pure labels yield no split") {
        const Dataset data = testutil::make_dataset(schema, {{{1}, 0}, {{2}, 0}, {{3}, 0}});
        CHECK_FALSE(best_split(data, features).has_value());
    }
    SUBCASE("constant feature with mixed labels yields no split") {
        const Dataset data = testutil::make_dataset(schema, {{{5}, 0}, {{5}, 1}, {{5}, 1}});
        CHECK_FALSE(best_split(data, features).has_value());
    }
    SUBCASE("min_samples_leaf rules out lopsided cuts") {
        const Dataset data = testutil::make_dataset(schema, {{{1}, 1}, {{2}, 0}});
        CHECK(best_split(data, features, 1).has_value());
        CHECK_FALSE(best_split(data, features, 2).has_value()); // 1|1 is the only cut
    }
}

TEST_CASE("best_split matches exhaustive enumeration on random data") {
    Rng rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(49));
        const int m = 1 + static_cast<int>(rng.below(3));
        const int span = 2 + static_cast<int>(rng.below(6)); // small span forces ties
        const Dataset data = testutil::random_dataset(rng, n, m, span);
        std::vector<int> features(static_cast<std::size_t>(m));
        for (int f = 0; f < m; ++f) features[static_cast<std::size_t>(f)] = f;
        const int min_leaf = 1 + static_cast<int>(rng.below(3));

        const auto got = best_split(data, features, min_leaf);
        const auto expected = oracle::exhaustive_best_split(data, features, min_leaf);
        REQUIRE(got.has_value() == expected.has_value());
        if (got) {
            CHECK(got->rule.feature == expected->feature);
            CHECK(got->rule.threshold == expected->threshold);
            CHECK(got->gain == doctest::Approx(expected->gain).epsilon(1e-12));
        }
    }
}

TEST_CASE("grow respects the leaf budget") {
    const Dataset data = testutil::make_dataset(
        testutil::count_schema(1), {{{1}, 0}, {{2}, 0}, {{3}, 1}, {{4}, 1}});
    TreeParams params;
    params.max_leaf_nodes = 2;
    const Tree tree = grow(data, params);
    CHECK(tree.size_info() == TreeSize{3, 2});
    CHECK(tree.root().split.threshold == 2.5);
}

TEST_CASE("grow on a pure set is a single leaf") {
    const Dataset data =
        testutil::make_dataset(testutil::count_schema(2), {{{1, 2}, 1}, {{3, 4}, 1}});
    const Tree tree = grow(data, TreeParams{});
    CHECK(tree.size_info() == TreeSize{1, 1});
    CHECK(tree.root().is_leaf());
    CHECK(tree.predict_label(Record{{9, 9}, std::nullopt}) == 1);
}

TEST_CASE("grow input validation") {
    const Dataset empty(testutil::count_schema(1), {});
    CHECK_THROWS_AS((void)grow(empty, TreeParams{}), InvalidArgument);

    const Dataset data = testutil::make_dataset(testutil::count_schema(1), {{{1}, 0}});
    CHECK_THROWS_AS((void)grow(data, std::vector<int>{}, TreeParams{}), InvalidArgument);
    CHECK_THROWS_AS((void)grow(data, std::vector<int>{4}, TreeParams{}), InvalidArgument);
    TreeParams bad;
    bad.max_leaf_nodes = 1;
    CHECK_THROWS_AS((void)grow(data, bad), InvalidArgument);
}

TEST_CASE("unbounded growth memorizes distinct records") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(40));
        std::vector<testutil::Row> rows;
        bool saw[2] = {false, false};
        for (int i = 0; i < n; ++i) {
            // First feature is unique, so feature vectors are pairwise distinct.
            const int label = rng.bernoulli(0.5) ? 1 : 0;
            saw[label] = true;
            rows.push_back({{i, static_cast<std::int64_t>(rng.below(4))}, label});
        }
        if (!saw[0] || !saw[1]) continue;
        const Dataset data = testutil::make_dataset(testutil::count_schema(2), rows);

        const Tree tree = grow(data, TreeParams{});
        for (const auto& row : rows)
            CHECK(tree.predict_label(Record{row.values, std::nullopt}) == row.label);
    }
}

TEST_CASE("grown trees keep the structural invariants") {
    Rng rng(47);
    for (const int budget : {0, 2, 4, 8, 32}) {
        const Dataset data = testutil::random_dataset(rng, 200, 3, 5);
        TreeParams params;
        params.max_leaf_nodes = budget;
        const Tree tree = grow(data, params);

        const TreeSize size = tree.size_info();
        CHECK(size.total_nodes == 2 * size.leaf_count - 1);
        if (budget > 0) CHECK(size.leaf_count <= budget);

        for (const Node& node : tree.nodes()) {
            if (node.is_leaf()) continue;
            const Node& l = tree.nodes()[static_cast<std::size_t>(node.left)];
            const Node& r = tree.nodes()[static_cast<std::size_t>(node.right)];
            // Children partition the parent and strictly reduce impurity.
            CHECK(l.counts[0] + r.counts[0] == node.counts[0]);
            CHECK(l.counts[1] + r.counts[1] == node.counts[1]);
            CHECK(l.samples() > 0);
            CHECK(r.samples() > 0);
            const double n = static_cast<double>(node.samples());
            const double weighted = (static_cast<double>(l.samples()) / n) * l.impurity +
                                    (static_cast<double>(r.samples()) / n) * r.impurity;
            CHECK(weighted < node.impurity);
        }
    }
}

TEST_CASE("grow is deterministic") {
    Rng rng(53);
    const Dataset data = testutil::random_dataset(rng, 150, 3, 4);
    TreeParams params;
    params.max_leaf_nodes = 16;
    CHECK(grow(data, params) == grow(data, params));
}

TEST_CASE("prediction routes by threshold") {
    const Tree stump = pp_stump();
    CHECK(stump.predict_proba(rod_record(0)) == doctest::Approx(0.1));
    CHECK(stump.predict_proba(rod_record(3)) == doctest::Approx(0.8));
    CHECK(stump.predict_label(rod_record(0)) == 0);
    CHECK(stump.predict_label(rod_record(3)) == 1);

    Record short_record;
    short_record.values = {1, 2};
    CHECK_THROWS_AS((void)stump.predict_proba(short_record), SchemaError);
}

TEST_CASE("leaf labels are majority with ties to 0") {
    Node leaf1;
    leaf1.counts = {3, 1};
    CHECK(leaf1.majority_label() == 0);
    Node leaf2;
    leaf2.counts = {1, 3};
    CHECK(leaf2.majority_label() == 1);
    Node tie;
    tie.counts = {2, 2};
    CHECK(tie.majority_label() == 0);
}

TEST_CASE("single-leaf tree predicts its prior everywhere") {
    Node leaf;
    leaf.counts = {3, 1};
    leaf.impurity = gini(3, 1);
    const Tree tree(testutil::count_schema(2), {0, 1}, TreeParams{}, {leaf});
    CHECK(tree.predict_proba(Record{{4, 7}, std::nullopt}) == doctest::Approx(0.25));
    CHECK(tree.size_info() == TreeSize{1, 1});
}

TEST_CASE("feature importances") {
    SUBCASE("stump puts all weight on its split feature") {
        const auto importances = pp_stump().feature_importances();
        REQUIRE(importances.has_splits);
        const auto pp = *rod_schema().index_of("PP");
        CHECK(importances.values[pp] == doctest::Approx(1.0));
        for (std::size_t f = 0; f < importances.values.size(); ++f)
            if (f != pp) CHECK(importances.values[f] == 0.0);
    }
    SUBCASE("single leaf has no splits and a zero vector") {
        Node leaf;
        leaf.counts = {5, 3};
        leaf.impurity = gini(5, 3);
        const Tree tree(rod_schema(), {0}, TreeParams{}, {leaf});
        const auto importances = tree.feature_importances();
        CHECK_FALSE(importances.has_splits);
        for (const double v : importances.values) CHECK(v == 0.0);
    }
    SUBCASE("two-split tree matches the hand-computed shares") {
        // Root (4,4) splits on f0 into (4,2) and (0,2); the left child
        // splits on f1 into (4,0) and (0,2). Weighted contributions:
        // f0: 1/6, f1: (6/8)*(4/9) = 1/3; normalized 1/3 vs 2/3.
        Node root, left, right, ll, lr;
        root.counts = {4, 4};
        root.impurity = gini(4, 4);
        root.split = SplitRule{0, 0.5};
        root.left = 1;
        root.right = 2;
        left.counts = {4, 2};
        left.impurity = gini(4, 2);
        left.split = SplitRule{1, 0.5};
        left.left = 3;
        left.right = 4;
        right.counts = {0, 2};
        right.impurity = 0.0;
        ll.counts = {4, 0};
        ll.impurity = 0.0;
        lr.counts = {0, 2};
        lr.impurity = 0.0;
        const Tree tree(testutil::count_schema(2), {0, 1}, TreeParams{},
                        {root, left, right, ll, lr});
        const auto importances = tree.feature_importances();
        REQUIRE(importances.has_splits);
        CHECK(importances.values[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(importances.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("importances sum to one and cover only split features") {
        Rng rng(61);
        const Dataset data = testutil::random_dataset(rng, 120, 3, 5);
        TreeParams params;
        params.max_leaf_nodes = 8;
        const Tree tree = grow(data, params);
        const auto importances = tree.feature_importances();
        if (importances.has_splits) {
            double sum = 0.0;
            for (const double v : importances.values) sum += v;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            std::set<int> split_features;
            for (const Node& node : tree.nodes())
                if (!node.is_leaf()) split_features.insert(node.split.feature);
            for (std::size_t f = 0; f < importances.values.size(); ++f)
                CHECK((importances.values[f] > 0.0) ==
                      (split_features.count(static_cast<int>(f)) > 0));
        }
    }
}

TEST_CASE("model round-trip preserves structure and predictions") {
    SUBCASE("single leaf") {
        Node leaf;
        leaf.counts = {5, 3};
        leaf.impurity = gini(5, 3);
        const Tree tree(rod_schema(), {0, 5, 10}, TreeParams{}, {leaf});
        CHECK(deserialize_model(serialize_model(tree)) == tree);
    }
    SUBCASE("grown trees") {
        Rng rng(71);
        for (int trial = 0; trial < 8; ++trial) {
            const Dataset data = testutil::random_dataset(rng, 80, 3, 5);
            TreeParams params;
            params.max_leaf_nodes = 2 + static_cast<int>(rng.below(10));
            const Tree tree = grow(data, params);
            const Tree back = deserialize_model(serialize_model(tree));
            CHECK(back == tree);
            for (int probe = 0; probe < 20; ++probe) {
                Record rec;
                for (int f = 0; f < 3; ++f)
                    rec.values.push_back(static_cast<std::int64_t>(rng.below(6)));
                CHECK(back.predict_proba(rec) == tree.predict_proba(rec));
            }
        }
    }
}

TEST_CASE("malformed model documents raise ParseError with a path") {
    const std::string missing_counts = R"({
      "format": "rodtree-model", "version": 1,
      "schema": [{"code": "X", "name": "x", "kind": "count", "min": 0, "max": 9}],
      "active_features": [0],
      "params": {"max_leaf_nodes": 0, "min_samples_split": 2, "min_samples_leaf": 1},
      "root": {"kind": "internal", "feature": 0, "threshold": 0.5,
               "counts": [2, 2],
               "children": [{"kind": "leaf"}, {"kind": "leaf", "counts": [1, 1]}]}
    })";
    try {
        (void)deserialize_model(missing_counts);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("/root/children/0") != std::string::npos);
        CHECK(what.find("counts") != std::string::npos);
    }

    CHECK_THROWS_AS((void)deserialize_model("{ not json"), ParseError);
    CHECK_THROWS_AS((void)deserialize_model("{\"format\": \"other\"}"), ParseError);
}

TEST_CASE("DOT export") {
    SUBCASE("single leaf is one node, no edges") {
        Node leaf;
        leaf.counts = {2, 1};
        leaf.impurity = gini(2, 1);
        const Tree tree(rod_schema(), {0}, TreeParams{}, {leaf});
        const std::string dot = export_dot(tree);
        CHECK(oracle::check_dot(dot).empty());
        CHECK(dot.find("n0 [") != std::string::npos);
        CHECK(dot.find("->") == std::string::npos);
    }
    SUBCASE("stump has 3 nodes, 2 labeled edges") {
        const std::string dot = export_dot(pp_stump());
        INFO(dot);
        CHECK(oracle::check_dot(dot).empty());
        CHECK(dot.find("PP <= 0.5") != std::string::npos);
        CHECK(dot.find("n0 -> n1 [label=\"true\"]") != std::string::npos);
        CHECK(dot.find("n0 -> n2 [label=\"false\"]") != std::string::npos);
    }
    SUBCASE("random grown trees pass the grammar check") {
        Rng rng(83);
        for (int trial = 0; trial < 6; ++trial) {
            const Dataset data = testutil::random_dataset(rng, 100, 3, 5);
            TreeParams params;
            params.max_leaf_nodes = 2 + static_cast<int>(rng.below(12));
            const Tree tree = grow(data, params);
            const std::string error = oracle::check_dot(export_dot(tree));
            CHECK_MESSAGE(error.empty(), error);
        }
    }
}
