#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rodtree {

struct Confusion {
    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
    friend bool operator==(const Confusion&, const Confusion&) = default;
};

// Class 1 is the positive class. Throws on length mismatch or empty input.
Confusion confusion(std::span<const int> labels, std::span<const int> predictions);

// Harmonic mean of precision and recall; 0 when tp == 0.
double f_measure(std::int64_t tp, std::int64_t fp, std::int64_t fn);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;

    friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

// Operating points swept over descending score thresholds, tied scores
// collapsed into one point, (0,0) first and (1,1) last; fpr and tpr are
// nondecreasing along the list. Throws when only one class is present.
std::vector<RocPoint> roc_curve(std::span<const int> labels, std::span<const double> scores);

// Trapezoidal area under roc_curve; equal to the tie-corrected Mann-Whitney
// statistic P(score_pos > score_neg) + 0.5 * P(tie).
double auc_roc(std::span<const int> labels, std::span<const double> scores);

struct MetricsReport {
    Confusion counts;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    std::vector<RocPoint> roc_points;
    double auc = 0.0;
};

// Full report from scores: hard predictions thresholded at 0.5 (a tie goes
// to class 0, matching leaf majority votes), then confusion counts, P/R/F
// and the ROC sweep.
MetricsReport evaluate_scores(std::span<const int> labels, std::span<const double> scores);

std::string metrics_csv_header();
std::string to_csv_row(const MetricsReport& report);
std::string to_text(const MetricsReport& report);

} // namespace rodtree
