#include "rodtree/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "rodtree/error.hpp"

namespace rodtree {

namespace {

// Shortest decimal representation that round-trips.
std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

Confusion confusion(std::span<const int> labels, std::span<const int> predictions) {
    if (labels.size() != predictions.size())
        throw InvalidArgument("confusion: labels and predictions differ in length");
    if (labels.empty())
        throw InvalidArgument("confusion: empty input");

    Confusion c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1)
            (predictions[i] == 1 ? c.tp : c.fn)++;
        else
            (predictions[i] == 1 ? c.fp : c.tn)++;
    }
    return c;
}

double f_measure(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    if (tp + fp + fn < 1)
        throw InvalidArgument("f_measure: tp + fp + fn must be >= 1");
    if (tp == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return 2.0 * precision * recall / (precision + recall);
}

std::vector<RocPoint> roc_curve(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size())
        throw InvalidArgument("roc_curve: labels and scores differ in length");

    std::int64_t total_pos = 0, total_neg = 0;
    for (const int y : labels) (y == 1 ? total_pos : total_neg)++;
    if (total_pos == 0 || total_neg == 0)
        throw InvalidArgument("roc_curve: both classes must be present");

    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> points;
    points.push_back({0.0, 0.0});
    std::int64_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (labels[order[i]] == 1 ? tp : fp)++;
        // Emit one point per distinct threshold: tied scores collapse.
        if (i + 1 < order.size() && scores[order[i]] == scores[order[i + 1]]) continue;
        points.push_back({static_cast<double>(fp) / static_cast<double>(total_neg),
                          static_cast<double>(tp) / static_cast<double>(total_pos)});
    }
    return points; // the final sweep point is always (1, 1)
}

double auc_roc(std::span<const int> labels, std::span<const double> scores) {
    const std::vector<RocPoint> points = roc_curve(labels, scores);
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
    }
    return area;
}

MetricsReport evaluate_scores(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size())
        throw InvalidArgument("evaluate_scores: labels and scores differ in length");

    std::vector<int> predictions(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) predictions[i] = scores[i] > 0.5 ? 1 : 0;

    MetricsReport report;
    report.counts = confusion(labels, predictions);
    const Confusion& c = report.counts;
    report.precision =
        c.tp + c.fp > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
    report.recall =
        c.tp + c.fn > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
    report.f_measure = c.tp + c.fp + c.fn >= 1 ? f_measure(c.tp, c.fp, c.fn) : 0.0;
    report.roc_points = roc_curve(labels, scores);
    report.auc = auc_roc(labels, scores);
    return report;
}

std::string metrics_csv_header() {
    return "tp,fp,tn,fn,precision,recall,f_measure,auc";
}

std::string to_csv_row(const MetricsReport& r) {
    std::ostringstream out;
    out << r.counts.tp << ',' << r.counts.fp << ',' << r.counts.tn << ',' << r.counts.fn << ','
        << format_double(r.precision) << ',' << format_double(r.recall) << ','
        << format_double(r.f_measure) << ',' << format_double(r.auc);
    return out.str();
}

std::string to_text(const MetricsReport& r) {
    std::ostringstream out;
    out << "records:   " << r.counts.total() << "\n"
        << "confusion: tp=" << r.counts.tp << " fp=" << r.counts.fp << " tn=" << r.counts.tn
        << " fn=" << r.counts.fn << "\n"
        << "precision: " << format_double(r.precision) << "\n"
        << "recall:    " << format_double(r.recall) << "\n"
        << "f-measure: " << format_double(r.f_measure) << "\n"
        << "auc-roc:   " << format_double(r.auc) << " (" << r.roc_points.size()
        << " roc points)\n";
    return out.str();
}

} // namespace rodtree
