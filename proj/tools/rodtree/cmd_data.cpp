#include <algorithm>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "rodtree/csv.hpp"
#include "rodtree/synth.hpp"

namespace rodtree::cli {

std::vector<int> parse_feature_codes(const FeatureSchema& schema,
                                     const std::vector<std::string>& codes) {
    std::vector<int> indices;
    for (const std::string& code : codes) {
        const auto index = schema.index_of(code);
        if (!index) throw UsageError("unknown feature code: " + code);
        indices.push_back(static_cast<int>(*index));
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.empty()) throw UsageError("feature list is empty");
    return indices;
}

int run_synth(const GlobalOptions& global, const SynthOptions& options) {
    if (options.n < 1) throw UsageError("--n must be >= 1");
    if (!(options.prior > 0.0 && options.prior < 1.0))
        throw UsageError("--prior must be in (0, 1)");

    GeneratorConfig config;
    config.n = options.n;
    config.target_prior = options.prior;
    config.seed = global.seed;

    bool calibrated = false;
    if (options.prior != 0.08) {
        calibrate_intercept(config, 0.001, 80);
        calibrated = true;
    }
    const Dataset data = generate(config);
    const auto counts = class_counts(data);

    const std::string path =
        options.output.empty() ? in_out_dir(global, "synthetic.csv") : options.output;
    save_csv(data, path);

    // Provenance sidecar: everything needed to regenerate the file.
    std::ostringstream meta;
    meta << "generator=rodtree-synth\n"
         << "seed=" << config.seed << "\n"
         << "n=" << config.n << "\n"
         << "target_prior=" << format_double(config.target_prior) << "\n"
         << "intercept=" << format_double(config.intercept ? *config.intercept
                                                           : default_intercept())
         << "\n"
         << "intercept_source=" << (calibrated ? "calibrated" : "default") << "\n";
    const auto& schema = data.schema();
    for (std::size_t f = 0; f < schema.size(); ++f)
        meta << "weight_" << schema.at(f).code << "="
             << format_double(config.signal_weights[f]) << "\n";
    meta << "positive_records=" << counts.n1 << "\n"
         << "negative_records=" << counts.n0 << "\n";
    write_text_file(path + ".meta", meta.str());

    std::cout << "wrote " << data.size() << " records to " << path << " (positives: "
              << counts.n1 << ", prior "
              << format_double(static_cast<double>(counts.n1) /
                               static_cast<double>(counts.total()))
              << ")\n";
    return 0;
}

} // namespace rodtree::cli
