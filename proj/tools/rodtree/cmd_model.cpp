#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "rodtree/csv.hpp"
#include "rodtree/dot.hpp"
#include "rodtree/grow.hpp"
#include "rodtree/model_io.hpp"
#include "rodtree/rfe.hpp"
#include "rodtree/sampling.hpp"

namespace rodtree::cli {

namespace {

int single_budget(const GlobalOptions& global) {
    if (!global.max_leaf_nodes_given) return 0; // unbounded by default for train
    if (global.max_leaf_nodes.size() != 1)
        throw UsageError("train expects a single --max-leaf-nodes value");
    return global.max_leaf_nodes.front();
}

} // namespace

int run_train(const GlobalOptions& global, const TrainOptions& options) {
    const Dataset data = load_csv(options.input, rod_schema());
    if (data.empty()) throw InvalidArgument("train: input has no records");

    std::optional<BalanceMethod::Variant> variant;
    if (!global.balance.empty()) variant = parse_balance_variant(global.balance);

    Dataset train_set = data;
    std::optional<Dataset> test_set;
    if (global.paper_faithful && variant) {
        // Balance first, then split; over-sampled duplicates may land in
        // both halves.
        const Dataset balanced = balance(data, {*variant, global.seed});
        auto split = train_test_split(balanced, global.train_frac, global.seed);
        train_set = std::move(split.train);
        test_set = std::move(split.test);
    } else {
        auto split = train_test_split(data, global.train_frac, global.seed);
        test_set = std::move(split.test);
        train_set = variant ? balance(split.train, {*variant, global.seed})
                            : std::move(split.train);
    }

    TreeParams params;
    params.max_leaf_nodes = single_budget(global);
    params.min_samples_split = options.min_samples_split;
    params.min_samples_leaf = options.min_samples_leaf;

    const std::vector<int> active =
        global.features.empty()
            ? [] {
                  std::vector<int> all(rod_schema().size());
                  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
                  return all;
              }()
            : parse_feature_codes(rod_schema(), global.features);

    const Tree tree = grow(train_set, active, params);
    const std::string model_path =
        options.model_out.empty() ? in_out_dir(global, "model.json") : options.model_out;
    save_model(tree, model_path);

    if (!options.test_out.empty()) {
        if (!test_set) throw UsageError("--test-out requires a train/test split");
        save_csv(*test_set, options.test_out);
    }

    const TreeSize size = tree.size_info();
    std::cout << "trained on " << train_set.size() << " records ("
              << (variant ? std::string(to_string(*variant)) + "-sampled" : "unbalanced")
              << "), tree: " << size.total_nodes << " nodes, " << size.leaf_count
              << " leaves -> " << model_path << "\n";
    if (test_set && !options.test_out.empty())
        std::cout << "held-out test set: " << test_set->size() << " records -> "
                  << options.test_out << "\n";
    return 0;
}

int run_eval(const GlobalOptions&, const EvalOptions& options) {
    const Tree tree = load_model(options.model);
    const Dataset data = load_csv(options.input, tree.schema());
    const MetricsReport report = evaluate_tree(tree, data);
    if (options.csv)
        std::cout << metrics_csv_header() << "\n" << to_csv_row(report) << "\n";
    else
        std::cout << to_text(report);
    return 0;
}

int run_export_dot(const GlobalOptions&, const ExportDotOptions& options) {
    const Tree tree = load_model(options.model);
    const std::string dot = export_dot(tree);
    if (options.output.empty()) {
        std::cout << dot;
    } else {
        write_text_file(options.output, dot);
        std::cerr << "wrote " << options.output << "; render with: dot -Tpng "
                  << options.output << " -o tree.png\n";
    }
    return 0;
}

namespace {

std::map<std::size_t, std::int64_t> parse_answers(const FeatureSchema& schema,
                                                  const std::string& text) {
    std::map<std::size_t, std::int64_t> answers;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("--answers items must look like CODE=VALUE, got '" + item + "'");
        const std::string code = item.substr(0, eq);
        const auto index = schema.index_of(code);
        if (!index) throw UsageError("--answers: unknown feature code '" + code + "'");
        std::int64_t value = 0;
        const std::string number = item.substr(eq + 1);
        const auto [ptr, ec] =
            std::from_chars(number.data(), number.data() + number.size(), value);
        if (ec != std::errc{} || ptr != number.data() + number.size())
            throw UsageError("--answers: not an integer for " + code + ": '" + number + "'");
        const FeatureSpec& spec = schema.at(*index);
        if (!spec.range.contains(value))
            throw InvalidArgument("answer for " + spec.code + " out of range [" +
                                  std::to_string(spec.range.min) + ", " +
                                  std::to_string(spec.range.max) + "]");
        answers[*index] = value;
    }
    return answers;
}

std::int64_t prompt_for(const FeatureSpec& spec) {
    for (;;) {
        std::cout << spec.code << " - " << spec.name << " [" << spec.range.min << ".."
                  << spec.range.max << "]? " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line))
            throw InvalidArgument("ask: input closed before the path reached a leaf");
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec == std::errc{} && ptr == line.data() + line.size() &&
            spec.range.contains(value))
            return value;
        std::cout << "  please enter an integer in range\n";
    }
}

} // namespace

int run_ask(const GlobalOptions&, const AskOptions& options) {
    const Tree tree = load_model(options.model);
    const FeatureSchema& schema = tree.schema();
    const bool scripted = !options.answers.empty();
    std::map<std::size_t, std::int64_t> answers =
        scripted ? parse_answers(schema, options.answers)
                 : std::map<std::size_t, std::int64_t>{};

    // Walk the path, consulting only features the path actually tests; a
    // feature asked once is reused if it recurs deeper down.
    int node_id = 0;
    std::set<std::size_t> consulted;
    while (!tree.nodes()[static_cast<std::size_t>(node_id)].is_leaf()) {
        const Node& node = tree.nodes()[static_cast<std::size_t>(node_id)];
        const auto feature = static_cast<std::size_t>(node.split.feature);
        const FeatureSpec& spec = schema.at(feature);

        auto it = answers.find(feature);
        if (it == answers.end()) {
            if (scripted)
                throw InvalidArgument("ask: --answers is missing feature " + spec.code +
                                      " needed on the decision path");
            answers[feature] = prompt_for(spec);
            it = answers.find(feature);
        }
        consulted.insert(feature);
        const bool goes_left = static_cast<double>(it->second) <= node.split.threshold;
        std::cout << "n" << node_id << ": " << spec.code << " <= " << node.split.threshold
                  << "? " << (goes_left ? "yes" : "no") << " (" << spec.code << "="
                  << it->second << ")\n";
        node_id = goes_left ? node.left : node.right;
    }

    const Node& leaf = tree.nodes()[static_cast<std::size_t>(node_id)];
    std::cout << "questions asked: " << consulted.size() << "\n"
              << "leaf n" << node_id << ": counts=[" << leaf.counts[0] << ", "
              << leaf.counts[1] << "] prob_positive=" << format_double(leaf.prob_positive())
              << "\n"
              << "label=" << leaf.majority_label() << "\n";
    return 0;
}

} // namespace rodtree::cli
