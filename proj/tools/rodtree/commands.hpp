#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rodtree/error.hpp"
#include "rodtree/schema.hpp"

namespace rodtree::cli {

// Command line problems (bad flag combinations, unusable values); mapped to
// exit code 2, while library Errors exit with 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand. Repeat r of an experiment runs with
// seed + r, so any single cell can be reproduced directly via --seed.
struct GlobalOptions {
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    bool paper_faithful = false;
    std::string balance; // "", "under" or "over"
    double train_frac = 0.7;
    std::vector<int> max_leaf_nodes{2, 4, 8, 16, 32, 64, 128, 9999};
    bool max_leaf_nodes_given = false;
    std::vector<std::string> features;
    int repeats = 1;
};

struct SynthOptions {
    std::int64_t n = 14'776;
    double prior = 0.08;
    std::string output;
};

struct TrainOptions {
    std::string input;
    std::string model_out;
    std::string test_out;
    int min_samples_split = 2;
    int min_samples_leaf = 1;
};

struct EvalOptions {
    std::string model;
    std::string input;
    bool csv = false;
};

struct ExportDotOptions {
    std::string model;
    std::string output; // empty: stdout
};

struct AskOptions {
    std::string model;
    std::string answers; // empty: interactive
};

struct RfeOptions {
    std::string input;
};

struct SweepOptions {
    std::string input;  // empty: generate the default synthetic dataset
    std::string ledger; // pivot an existing ledger instead of running
};

int run_synth(const GlobalOptions& global, const SynthOptions& options);
int run_train(const GlobalOptions& global, const TrainOptions& options);
int run_eval(const GlobalOptions& global, const EvalOptions& options);
int run_export_dot(const GlobalOptions& global, const ExportDotOptions& options);
int run_ask(const GlobalOptions& global, const AskOptions& options);
int run_rfe(const GlobalOptions& global, const RfeOptions& options);
int run_sweep(const GlobalOptions& global, const SweepOptions& options);

// --- small shared helpers -------------------------------------------------

inline std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

inline std::string in_out_dir(const GlobalOptions& global, const std::string& name) {
    std::filesystem::create_directories(global.out_dir);
    return (std::filesystem::path(global.out_dir) / name).string();
}

// Feature codes -> sorted unique schema indices; accepts the AV alias.
std::vector<int> parse_feature_codes(const FeatureSchema& schema,
                                     const std::vector<std::string>& codes);

} // namespace rodtree::cli
