#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "rodtree/csv.hpp"
#include "rodtree/dot.hpp"
#include "rodtree/rfe.hpp"
#include "rodtree/sampling.hpp"
#include "rodtree/synth.hpp"

namespace rodtree::cli {

namespace {

constexpr const char* kLedgerHeader =
    "balance,max_leaf_nodes,seed,n_features,total_nodes,leaf_count,auc,f_measure\n";

struct Cell {
    BalanceMethod::Variant method;
    int budget = 0;
    std::uint64_t seed = 0;
};

struct CellResult {
    Cell cell;
    std::vector<RfeResultEntry> entries;
    std::size_t train_size = 0;
};

// One RFE run for a sweep cell. Default order splits first and balances only
// the training half; --paper-faithful balances the full dataset before
// splitting, which lets duplicated minority records leak into the test set.
CellResult run_cell(const Dataset& data, const Cell& cell, double train_frac,
                    bool paper_faithful) {
    TreeParams params;
    params.max_leaf_nodes = cell.budget;

    CellResult result;
    result.cell = cell;
    if (paper_faithful) {
        const Dataset balanced = balance(data, {cell.method, cell.seed});
        const auto split = train_test_split(balanced, train_frac, cell.seed);
        result.train_size = split.train.size();
        result.entries = run_rfe(split.train, split.test, std::nullopt, params);
    } else {
        const auto split = train_test_split(data, train_frac, cell.seed);
        const Dataset balanced = balance(split.train, {cell.method, cell.seed});
        result.train_size = balanced.size();
        result.entries = run_rfe(balanced, split.test, std::nullopt, params);
    }
    return result;
}

// Cells run on a small worker pool; results land in a pre-sized vector so
// the merge order is independent of scheduling.
std::vector<CellResult> run_cells(const Dataset& data, const std::vector<Cell>& cells,
                                  double train_frac, bool paper_faithful) {
    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        std::min<std::size_t>(cells.size(), 8));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                try {
                    results[i] = run_cell(data, cells[i], train_frac, paper_faithful);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::vector<Cell> make_cells(const std::vector<BalanceMethod::Variant>& methods,
                             const std::vector<int>& budgets, std::uint64_t base_seed,
                             int repeats) {
    if (repeats < 1) throw UsageError("--repeats must be >= 1");
    for (const int budget : budgets)
        if (budget != 0 && budget < 2)
            throw UsageError("--max-leaf-nodes values must be 0 (unbounded) or >= 2");
    std::vector<Cell> cells;
    for (const auto method : methods)
        for (const int budget : budgets)
            for (int r = 0; r < repeats; ++r)
                cells.push_back({method, budget, base_seed + static_cast<std::uint64_t>(r)});
    return cells;
}

void append_ledger_rows(std::ostringstream& out, const CellResult& result) {
    for (const RfeResultEntry& entry : result.entries) {
        out << to_string(result.cell.method) << ',' << result.cell.budget << ','
            << result.cell.seed << ',' << entry.features_used.size() << ','
            << entry.tree_size.total_nodes << ',' << entry.tree_size.leaf_count << ','
            << format_double(entry.auc) << ',' << format_double(entry.f_measure) << '\n';
    }
}

std::vector<BalanceMethod::Variant> selected_methods(const GlobalOptions& global) {
    if (global.balance.empty())
        return {BalanceMethod::Variant::under, BalanceMethod::Variant::over};
    return {parse_balance_variant(global.balance)};
}

Dataset load_or_generate(const GlobalOptions& global, const std::string& input) {
    if (!input.empty()) return load_csv(input, rod_schema());
    GeneratorConfig config;
    config.seed = global.seed;
    std::cerr << "no --input given; generating the default synthetic dataset (n="
              << config.n << ", seed=" << config.seed << ")\n";
    return generate(config);
}

// --- sweep outputs ---------------------------------------------------------

struct LedgerRow {
    std::string balance;
    int budget = 0;
    std::uint64_t seed = 0;
    int n_features = 0;
    double total_nodes = 0;
    double leaf_count = 0;
    double auc = 0;
    double f_measure = 0;
};

std::vector<LedgerRow> parse_ledger(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || line + "\n" != kLedgerHeader)
        throw ParseError(path + ": not a sweep ledger (unexpected header)");
    std::vector<LedgerRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream cells(line);
        LedgerRow row;
        std::string cell;
        const auto next_cell = [&](const char* what) {
            if (!std::getline(cells, cell, ','))
                throw ParseError(path + " line " + std::to_string(line_no) + ": missing " +
                                 what);
            return cell;
        };
        row.balance = next_cell("balance");
        row.budget = std::stoi(next_cell("max_leaf_nodes"));
        row.seed = std::stoull(next_cell("seed"));
        row.n_features = std::stoi(next_cell("n_features"));
        row.total_nodes = std::stod(next_cell("total_nodes"));
        row.leaf_count = std::stod(next_cell("leaf_count"));
        row.auc = std::stod(next_cell("auc"));
        row.f_measure = std::stod(next_cell("f_measure"));
        rows.push_back(row);
    }
    if (rows.empty()) throw InvalidArgument(path + ": ledger has no rows");
    return rows;
}

// Pivot one metric into a figure-data table: rows by n_features (descending),
// one column per leaf budget, cells averaged over repeats.
std::string figure_data(const std::vector<LedgerRow>& rows, const std::string& method,
                        double LedgerRow::* metric) {
    std::vector<int> budgets;
    std::vector<int> feature_counts;
    std::map<std::pair<int, int>, std::pair<double, int>> sums; // (budget, nf) -> (sum, n)
    for (const LedgerRow& row : rows) {
        if (row.balance != method) continue;
        if (std::find(budgets.begin(), budgets.end(), row.budget) == budgets.end())
            budgets.push_back(row.budget);
        if (std::find(feature_counts.begin(), feature_counts.end(), row.n_features) ==
            feature_counts.end())
            feature_counts.push_back(row.n_features);
        auto& [sum, n] = sums[{row.budget, row.n_features}];
        sum += row.*metric;
        n += 1;
    }
    std::sort(feature_counts.rbegin(), feature_counts.rend());

    std::ostringstream out;
    out << "n_features";
    for (const int budget : budgets)
        out << ',' << (budget == 0 ? std::string("unbounded") : "mln" + std::to_string(budget));
    out << '\n';
    for (const int nf : feature_counts) {
        out << nf;
        for (const int budget : budgets) {
            const auto it = sums.find({budget, nf});
            out << ',';
            if (it != sums.end())
                out << format_double(it->second.first / it->second.second);
        }
        out << '\n';
    }
    return out.str();
}

std::string gnuplot_script(const std::string& csv_name, const std::string& png_name,
                           const std::string& ylabel, const std::string& title,
                           std::size_t n_series, int max_features) {
    std::ostringstream out;
    out << "set datafile separator comma\n"
        << "set key autotitle columnhead outside right\n"
        << "set xlabel 'features used'\n"
        << "set ylabel '" << ylabel << "'\n"
        << "set xrange [" << max_features << ":1]\n"
        << "set title '" << title << "'\n"
        << "set term pngcairo size 900,540\n"
        << "set output '" << png_name << "'\n"
        << "plot for [i=2:" << (n_series + 1) << "] '" << csv_name
        << "' using 1:i with linespoints\n";
    return out.str();
}

} // namespace

int run_rfe(const GlobalOptions& global, const RfeOptions& options) {
    if (!global.features.empty())
        throw UsageError("rfe always starts from all features; --features is not accepted");
    const Dataset data = load_or_generate(global, options.input);

    // rfe runs one balance method; default is over-sampling.
    const BalanceMethod::Variant method = global.balance.empty()
                                              ? BalanceMethod::Variant::over
                                              : parse_balance_variant(global.balance);
    const std::vector<Cell> cells =
        make_cells({method}, global.max_leaf_nodes, global.seed, global.repeats);
    const std::vector<CellResult> results =
        run_cells(data, cells, global.train_frac, global.paper_faithful);

    std::ostringstream ledger;
    ledger << kLedgerHeader;
    for (const CellResult& result : results) {
        append_ledger_rows(ledger, result);
        std::cerr << "balance=" << to_string(result.cell.method)
                  << " max_leaf_nodes=" << result.cell.budget << " seed=" << result.cell.seed
                  << " training_records=" << result.train_size << "\n";
        for (const RfeResultEntry& entry : result.entries) {
            std::ostringstream name;
            name << "tree_" << to_string(result.cell.method) << "_mln" << result.cell.budget
                 << "_seed" << result.cell.seed << "_nf" << entry.features_used.size()
                 << ".dot";
            save_dot(entry.tree, in_out_dir(global, name.str()));
        }
    }

    const std::string ledger_path = in_out_dir(global, "ledger.csv");
    write_text_file(ledger_path, ledger.str());
    std::cout << "wrote " << ledger_path << " (" << results.size() << " runs, "
              << results.size() * data.schema().size() << " rows) and one DOT file per tree\n";
    return 0;
}

int run_sweep(const GlobalOptions& global, const SweepOptions& options) {
    std::vector<LedgerRow> rows;
    std::vector<RfeRun> runs;
    FeatureSchema schema = rod_schema();
    bool inline_run = options.ledger.empty();

    if (inline_run) {
        const Dataset data = load_or_generate(global, options.input);
        schema = data.schema();
        const std::vector<Cell> cells = make_cells(selected_methods(global),
                                                   global.max_leaf_nodes, global.seed,
                                                   global.repeats);
        const std::vector<CellResult> results =
            run_cells(data, cells, global.train_frac, global.paper_faithful);

        std::ostringstream ledger;
        ledger << kLedgerHeader;
        for (const CellResult& result : results) {
            append_ledger_rows(ledger, result);
            runs.push_back({schema, std::string(to_string(result.cell.method)),
                            elimination_order(result.entries)});
        }
        write_text_file(in_out_dir(global, "ledger.csv"), ledger.str());
        rows = parse_ledger(in_out_dir(global, "ledger.csv"));
    } else {
        rows = parse_ledger(options.ledger);
    }

    std::vector<std::string> methods;
    for (const LedgerRow& row : rows)
        if (std::find(methods.begin(), methods.end(), row.balance) == methods.end())
            methods.push_back(row.balance);

    int max_features = 1;
    for (const LedgerRow& row : rows) max_features = std::max(max_features, row.n_features);

    const struct {
        const char* name;
        const char* ylabel;
        double LedgerRow::* metric;
    } figures[] = {
        {"tree_size", "total nodes", &LedgerRow::total_nodes},
        {"auc", "AUC-ROC", &LedgerRow::auc},
        {"f_measure", "F-measure", &LedgerRow::f_measure},
    };

    std::size_t files = 0;
    for (const std::string& method : methods) {
        for (const auto& figure : figures) {
            const std::string csv = figure_data(rows, method, figure.metric);
            const std::string base = std::string("fig_") + figure.name + "_" + method;
            write_text_file(in_out_dir(global, base + ".csv"), csv);

            const std::size_t n_series =
                static_cast<std::size_t>(
                    std::count(csv.begin(), csv.begin() + static_cast<std::ptrdiff_t>(
                                                              csv.find('\n')),
                               ',')); // columns minus the n_features column
            write_text_file(in_out_dir(global, base + ".gp"),
                            gnuplot_script(base + ".csv", base + ".png", figure.ylabel,
                                           figure.name + std::string(" vs features (") +
                                               method + "-sampling)",
                                           n_series, max_features));
            files += 2;
        }
    }

    if (inline_run) {
        const auto ranking_rows = aggregate_rankings(runs);
        write_text_file(in_out_dir(global, "rankings.csv"), rankings_csv(ranking_rows, schema));
        write_text_file(in_out_dir(global, "rankings.txt"),
                        rankings_text(ranking_rows, schema));
        std::cout << rankings_text(ranking_rows, schema);
    }

    std::cout << "wrote " << files << " figure files under " << global.out_dir
              << " (plus ledger.csv" << (inline_run ? ", rankings.csv, rankings.txt" : "")
              << ")\n";
    return 0;
}

} // namespace rodtree::cli
