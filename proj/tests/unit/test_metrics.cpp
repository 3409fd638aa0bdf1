#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "rodtree/error.hpp"
#include "rodtree/metrics.hpp"
#include "rodtree/rng.hpp"

using namespace rodtree;

TEST_CASE("confusion counts") {
    SUBCASE("identity predictions") {
        const std::vector<int> labels{1, 0};
        CHECK(confusion(labels, labels) == Confusion{1, 0, 1, 0});
    }
    SUBCASE("hand count") {
        const std::vector<int> labels{1, 1, 0, 0};
        const std::vector<int> preds{1, 0, 1, 0};
        CHECK(confusion(labels, preds) == Confusion{1, 1, 1, 1});
    }
    SUBCASE("all correct means no fp/fn") {
        const std::vector<int> labels{1, 0, 1, 1, 0};
        const Confusion c = confusion(labels, labels);
        CHECK(c.fp == 0);
        CHECK(c.fn == 0);
        CHECK(c.total() == 5);
    }
    SUBCASE("length mismatch") {
        const std::vector<int> a{1, 0}, b{1};
        CHECK_THROWS_AS((void)confusion(a, b), InvalidArgument);
    }
}

TEST_CASE("f_measure") {
    // P == R == p is a fixed point of the harmonic mean.
    CHECK(f_measure(3, 1, 1) == doctest::Approx(0.75));
    CHECK(f_measure(2, 1, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(f_measure(0, 3, 2) == 0.0);
    CHECK_THROWS_AS((void)f_measure(0, 0, 0), InvalidArgument);
}

TEST_CASE("roc_curve hand sweeps") {
    SUBCASE("perfectly ranked tied blocks") {
        const std::vector<int> labels{1, 1, 0, 0};
        const std::vector<double> scores{0.9, 0.9, 0.1, 0.1};
        const auto points = roc_curve(labels, scores);
        REQUIRE(points.size() == 3);
        CHECK(points[0] == RocPoint{0, 0});
        CHECK(points[1] == RocPoint{0, 1});
        CHECK(points[2] == RocPoint{1, 1});
    }
    SUBCASE("all scores equal collapse to the diagonal") {
        const std::vector<int> labels{1, 0, 1};
        const std::vector<double> scores{0.4, 0.4, 0.4};
        const auto points = roc_curve(labels, scores);
        REQUIRE(points.size() == 2);
        CHECK(points[0] == RocPoint{0, 0});
        CHECK(points[1] == RocPoint{1, 1});
    }
    SUBCASE("four distinct thresholds") {
        const std::vector<int> labels{1, 0, 1, 0};
        const std::vector<double> scores{0.9, 0.6, 0.4, 0.2};
        const auto points = roc_curve(labels, scores);
        REQUIRE(points.size() == 5);
        CHECK(points[0] == RocPoint{0, 0});
        CHECK(points[1] == RocPoint{0, 0.5});
        CHECK(points[2] == RocPoint{0.5, 0.5});
        CHECK(points[3] == RocPoint{0.5, 1});
        CHECK(points[4] == RocPoint{1, 1});
    }
    SUBCASE("single-class labels are an error") {
        const std::vector<int> labels{1, 1};
        const std::vector<double> scores{0.2, 0.8};
        CHECK_THROWS_AS((void)roc_curve(labels, scores), InvalidArgument);
        CHECK_THROWS_AS((void)auc_roc(labels, scores), InvalidArgument);
    }
}

TEST_CASE("auc_roc examples") {
    const std::vector<int> labels{1, 0, 1, 0};
    SUBCASE("perfect ranking") {
        const std::vector<double> scores{0.9, 0.1, 0.8, 0.2};
        CHECK(auc_roc(labels, scores) == doctest::Approx(1.0));
    }
    SUBCASE("constant scores are a coin flip") {
        const std::vector<double> scores{0.5, 0.5, 0.5, 0.5};
        CHECK(auc_roc(labels, scores) == doctest::Approx(0.5));
    }
    SUBCASE("three of four pairs ranked correctly") {
        const std::vector<double> scores{0.9, 0.6, 0.4, 0.2};
        CHECK(auc_roc(labels, scores) == doctest::Approx(0.75));
    }
}

namespace {

struct ScoredSample {
    std::vector<int> labels;
    std::vector<double> scores;
};

// Random labels and heavily tied scores (drawn from a small grid).
ScoredSample random_sample(Rng& rng) {
    const int n = 2 + static_cast<int>(rng.below(99));
    ScoredSample s;
    bool saw[2] = {false, false};
    for (int i = 0; i < n; ++i) {
        const int label = rng.bernoulli(0.4) ? 1 : 0;
        saw[label] = true;
        s.labels.push_back(label);
        s.scores.push_back(static_cast<double>(rng.below(8)) / 7.0);
    }
    if (!saw[0] || !saw[1]) return random_sample(rng);
    return s;
}

} // namespace

TEST_CASE("trapezoidal AUC equals Mann-Whitney pair counting") {
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        const ScoredSample s = random_sample(rng);
        const double trapezoid = auc_roc(s.labels, s.scores);
        const double pairs = oracle::mann_whitney_auc(s.labels, s.scores);
        CHECK(std::abs(trapezoid - pairs) <= 1e-9);
    }
}

TEST_CASE("roc curve is monotone") {
    Rng rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        const ScoredSample s = random_sample(rng);
        const auto points = roc_curve(s.labels, s.scores);
        CHECK(points.front() == RocPoint{0, 0});
        CHECK(points.back() == RocPoint{1, 1});
        for (std::size_t i = 1; i < points.size(); ++i) {
            CHECK(points[i].fpr >= points[i - 1].fpr);
            CHECK(points[i].tpr >= points[i - 1].tpr);
        }
    }
}

TEST_CASE("label flip complements AUC when classes never tie") {
    Rng rng(107);
    for (int trial = 0; trial < 50; ++trial) {
        ScoredSample s = random_sample(rng);
        // Nudge positive scores off the grid so no cross-class ties remain.
        for (std::size_t i = 0; i < s.scores.size(); ++i)
            if (s.labels[i] == 1) s.scores[i] += 1e-6;
        std::vector<int> flipped;
        for (const int y : s.labels) flipped.push_back(1 - y);
        const double a = auc_roc(s.labels, s.scores);
        const double b = auc_roc(flipped, s.scores);
        CHECK(a + b == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("strictly increasing score transforms leave the curve unchanged") {
    Rng rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        const ScoredSample s = random_sample(rng);
        std::vector<double> transformed;
        for (const double v : s.scores) transformed.push_back(std::exp(3.0 * v + 1.0));
        CHECK(roc_curve(s.labels, s.scores) == roc_curve(s.labels, transformed));
        CHECK(auc_roc(s.labels, s.scores) ==
              doctest::Approx(auc_roc(s.labels, transformed)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_scores thresholds at 0.5 with ties to class 0") {
    const std::vector<int> labels{1, 0, 1, 0};
    const std::vector<double> scores{0.9, 0.5, 0.5, 0.2};
    const MetricsReport report = evaluate_scores(labels, scores);
    // 0.5 scores predict class 0.
    CHECK(report.counts == Confusion{1, 0, 2, 1});
    CHECK(report.precision == doctest::Approx(1.0));
    CHECK(report.recall == doctest::Approx(0.5));
    CHECK(report.f_measure == doctest::Approx(2.0 / 3.0));
    CHECK(report.auc == doctest::Approx(0.875));
}

TEST_CASE("report serialization") {
    const std::vector<int> labels{1, 0, 1, 0};
    const std::vector<double> scores{0.9, 0.6, 0.4, 0.2};
    const MetricsReport report = evaluate_scores(labels, scores);
    CHECK(metrics_csv_header() == "tp,fp,tn,fn,precision,recall,f_measure,auc");
    CHECK(to_csv_row(report) == "1,1,1,1,0.5,0.5,0.5,0.75");
    const std::string text = to_text(report);
    CHECK(text.find("auc-roc:   0.75") != std::string::npos);
    CHECK(text.find("tp=1") != std::string::npos);
}
