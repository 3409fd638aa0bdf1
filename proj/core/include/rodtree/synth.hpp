#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rodtree/dataset.hpp"

namespace rodtree {

// Calibrated synthetic stand-in for the confidential source records: the
// canonical 11-feature schema, the same overall size and positive-class
// prior, and a planted logistic signal with known ground-truth importance
// order. Feature marginals are independent stand-ins, not fitted to any real
// distribution; the provenance string records every generator parameter.
struct GeneratorConfig {
    std::int64_t n = 14'776;
    double target_prior = 0.08;
    std::uint64_t seed = 0;
    // Per-schema-feature logistic coefficients; the defaults concentrate
    // signal on PP, PC, PO with a weak CO term.
    std::vector<double> signal_weights;
    // Label model intercept. Left unset, generate() uses a frozen constant
    // calibrated for the default prior and weights; any other target
    // requires calibrate_intercept() first.
    std::optional<double> intercept;

    GeneratorConfig();
};

std::vector<double> default_signal_weights();

// Intercept shipped for the default configuration (prior 0.08, default
// weights), found by calibrate_intercept.
double default_intercept();

// Feature draws per record, in schema order: G ~ Bernoulli(0.8),
// A ~ Uniform{0..4}, IS ~ Bernoulli(0.25), DA ~ Uniform{0..3}, and Poisson
// counts CO(2.0), AB(0.2), PC(1.5), P5(0.1), P2(0.1), PO(0.6), PP(0.3);
// then y ~ Bernoulli(sigmoid(intercept + sum_f w_f x_f)). Bit-deterministic
// per seed.
Dataset generate(const GeneratorConfig& config);

// Bisection on the intercept against a 200,000-sample Monte Carlo estimate
// of the positive ratio (the mean predicted probability over a fixed feature
// sample drawn from a stream derived from config.seed), until the estimate
// is within `tolerance` of config.target_prior. Stores the result in
// config.intercept and returns it; throws CalibrationError with the bracket
// if max_iter bisection steps do not converge.
double calibrate_intercept(GeneratorConfig& config, double tolerance, int max_iter);

// The calibrator's ratio estimate for a given intercept, exposed for
// verification: mean sigmoid over the same fixed 200,000-vector sample.
double estimate_positive_ratio(const GeneratorConfig& config, double intercept);

} // namespace rodtree
