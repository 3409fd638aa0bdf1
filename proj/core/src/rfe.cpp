#include "rodtree/rfe.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "rodtree/error.hpp"
#include "rodtree/grow.hpp"

namespace rodtree {

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

MetricsReport evaluate_tree(const Tree& tree, const Dataset& test) {
    if (tree.schema() != test.schema())
        throw SchemaError("evaluate_tree: model and data schemas differ");

    std::vector<int> labels;
    std::vector<double> scores;
    labels.reserve(test.size());
    scores.reserve(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
        const Record& rec = test.records()[i];
        if (!rec.label)
            throw InvalidArgument("evaluate_tree: record " + std::to_string(i) +
                                  " is unlabeled");
        labels.push_back(*rec.label);
        scores.push_back(tree.predict_proba(rec));
    }
    return evaluate_scores(labels, scores);
}

int least_important(const Tree& tree, std::span<const int> features) {
    if (features.empty())
        throw InvalidArgument("least_important: empty feature set");
    const FeatureImportances importances = tree.feature_importances();

    int worst = -1;
    double worst_value = 0.0;
    for (const int f : features) {
        if (f < 0 || static_cast<std::size_t>(f) >= importances.values.size())
            throw InvalidArgument("least_important: feature index outside the schema");
        const double value = importances.values[static_cast<std::size_t>(f)];
        if (worst < 0 || value < worst_value || (value == worst_value && f > worst)) {
            worst = f;
            worst_value = value;
        }
    }
    return worst;
}

std::vector<RfeResultEntry> run_rfe(const Dataset& train, const Dataset& test,
                                    std::optional<BalanceMethod> balance,
                                    const TreeParams& params) {
    if (train.schema() != test.schema())
        throw SchemaError("run_rfe: train and test schemas differ");

    const Dataset balanced = balance ? rodtree::balance(train, *balance) : train;

    std::vector<int> features(train.schema().size());
    for (std::size_t i = 0; i < features.size(); ++i) features[i] = static_cast<int>(i);

    std::vector<RfeResultEntry> entries;
    entries.reserve(features.size());
    while (!features.empty()) {
        Tree tree = grow(balanced, features, params);
        const MetricsReport report = evaluate_tree(tree, test);
        const int drop = least_important(tree, features);
        const TreeSize size = tree.size_info();

        entries.push_back(
            RfeResultEntry{std::move(tree), features, size, report.auc, report.f_measure});
        features.erase(std::remove(features.begin(), features.end(), drop), features.end());
    }
    return entries;
}

std::vector<int> elimination_order(const std::vector<RfeResultEntry>& entries) {
    if (entries.empty()) throw InvalidArgument("elimination_order: empty ledger");
    std::vector<int> order;
    order.reserve(entries.size());
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        const auto& current = entries[i].features_used;
        const auto& next = entries[i + 1].features_used;
        for (const int f : current)
            if (std::find(next.begin(), next.end(), f) == next.end()) {
                order.push_back(f);
                break;
            }
    }
    // The survivor of the last entry is conceptually eliminated last.
    order.push_back(entries.back().features_used.front());
    return order;
}

std::string rfe_ledger_csv(const FeatureSchema& schema,
                           const std::vector<RfeResultEntry>& entries) {
    std::ostringstream out;
    out << "n_features,feature_codes,total_nodes,leaf_count,auc,f_measure\n";
    for (const RfeResultEntry& e : entries) {
        out << e.features_used.size() << ',';
        for (std::size_t i = 0; i < e.features_used.size(); ++i) {
            if (i > 0) out << ' ';
            out << schema.at(static_cast<std::size_t>(e.features_used[i])).code;
        }
        out << ',' << e.tree_size.total_nodes << ',' << e.tree_size.leaf_count << ','
            << format_double(e.auc) << ',' << format_double(e.f_measure) << '\n';
    }
    return out.str();
}

std::vector<RankingRow> aggregate_rankings(const std::vector<RfeRun>& runs) {
    if (runs.empty()) throw InvalidArgument("aggregate_rankings: no runs");
    const FeatureSchema& schema = runs.front().schema;
    const std::size_t m = schema.size();

    std::vector<std::string> method_order;
    std::map<std::string, std::pair<std::vector<double>, std::int64_t>> sums;

    for (const RfeRun& run : runs) {
        if (run.schema != schema)
            throw SchemaError("aggregate_rankings: inconsistent schemas across runs");
        if (run.elimination_order.size() != m)
            throw InvalidArgument("aggregate_rankings: elimination order length mismatch");
        std::vector<char> seen(m, 0);
        for (const int f : run.elimination_order) {
            if (f < 0 || static_cast<std::size_t>(f) >= m ||
                seen[static_cast<std::size_t>(f)])
                throw InvalidArgument(
                    "aggregate_rankings: elimination order is not a permutation");
            seen[static_cast<std::size_t>(f)] = 1;
        }

        auto [it, inserted] = sums.try_emplace(
            run.method, std::make_pair(std::vector<double>(m, 0.0), std::int64_t{0}));
        if (inserted) method_order.push_back(run.method);
        auto& [rank_sum, n_runs] = it->second;
        for (std::size_t step = 0; step < m; ++step) {
            const auto f = static_cast<std::size_t>(run.elimination_order[step]);
            // Earliest eliminated gets the worst rank m; the survivor gets 1.
            rank_sum[f] += static_cast<double>(m - step);
        }
        ++n_runs;
    }

    std::vector<RankingRow> rows;
    for (const std::string& method : method_order) {
        const auto& [rank_sum, n_runs] = sums.at(method);
        std::vector<int> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<int>(i);
        std::vector<double> mean(m);
        for (std::size_t i = 0; i < m; ++i) mean[i] = rank_sum[i] / static_cast<double>(n_runs);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return mean[static_cast<std::size_t>(a)] < mean[static_cast<std::size_t>(b)];
        });

        RankingRow row;
        row.method = method;
        row.ranked_features = std::move(order);
        row.mean_ranks.reserve(m);
        for (const int f : row.ranked_features)
            row.mean_ranks.push_back(rank_sum[static_cast<std::size_t>(f)] /
                                     static_cast<double>(n_runs));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string rankings_csv(const std::vector<RankingRow>& rows, const FeatureSchema& schema) {
    std::ostringstream out;
    out << "method";
    for (std::size_t i = 1; i <= schema.size(); ++i) out << ",rank" << i;
    out << '\n';
    for (const RankingRow& row : rows) {
        out << row.method;
        for (const int f : row.ranked_features)
            out << ',' << schema.at(static_cast<std::size_t>(f)).code;
        out << '\n';
    }
    return out.str();
}

std::string rankings_text(const std::vector<RankingRow>& rows, const FeatureSchema& schema) {
    std::ostringstream out;
    out << "feature ranking (most important first, mean rank in parentheses)\n";
    for (const RankingRow& row : rows) {
        out << "  " << row.method << ":";
        for (std::size_t i = 0; i < row.ranked_features.size(); ++i) {
            out << ' ' << schema.at(static_cast<std::size_t>(row.ranked_features[i])).code
                << '(' << format_double(row.mean_ranks[i]) << ')';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace rodtree
