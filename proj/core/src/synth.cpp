#include "rodtree/synth.hpp"

#include <cmath>
#include <sstream>

#include "rodtree/error.hpp"
#include "rodtree/rng.hpp"

namespace rodtree {

namespace {

// Calibrated offline for the default prior and weights; see
// tests for the verification against estimate_positive_ratio.
constexpr double kDefaultIntercept = -4.2236328125;

constexpr std::uint64_t kCalibrationStream = 0xCA11B8A7E;
constexpr std::int64_t kCalibrationSamples = 200'000;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Feature draws, one record per call, schema order.
std::vector<std::int64_t> draw_features(Rng& rng) {
    std::vector<std::int64_t> v(11);
    v[0] = rng.bernoulli(0.80) ? 1 : 0;                    // G
    v[1] = static_cast<std::int64_t>(rng.below(5));        // A
    v[2] = rng.bernoulli(0.25) ? 1 : 0;                    // IS
    v[3] = static_cast<std::int64_t>(rng.below(4));        // DA
    v[4] = rng.poisson(2.0);                               // CO
    v[5] = rng.poisson(0.2);                               // AB
    v[6] = rng.poisson(1.5);                               // PC
    v[7] = rng.poisson(0.1);                               // P5
    v[8] = rng.poisson(0.1);                               // P2
    v[9] = rng.poisson(0.6);                               // PO
    v[10] = rng.poisson(0.3);                              // PP
    return v;
}

double weighted_sum(const std::vector<double>& weights, const std::vector<std::int64_t>& values) {
    double s = 0.0;
    for (std::size_t f = 0; f < weights.size(); ++f)
        if (weights[f] != 0.0) s += weights[f] * static_cast<double>(values[f]);
    return s;
}

void check_config(const GeneratorConfig& config) {
    if (config.n < 1)
        throw InvalidArgument("generator: n must be >= 1");
    if (!(config.target_prior > 0.0 && config.target_prior < 1.0))
        throw InvalidArgument("generator: target_prior must be in (0, 1)");
    if (config.signal_weights.size() != rod_schema().size())
        throw InvalidArgument("generator: signal_weights must cover all schema features");
}

} // namespace

GeneratorConfig::GeneratorConfig() : signal_weights(default_signal_weights()) {}

std::vector<double> default_signal_weights() {
    std::vector<double> w(rod_schema().size(), 0.0);
    w[*rod_schema().index_of("PP")] = 0.9;
    w[*rod_schema().index_of("PC")] = 0.5;
    w[*rod_schema().index_of("PO")] = 0.4;
    w[*rod_schema().index_of("CO")] = 0.1;
    return w;
}

double default_intercept() { return kDefaultIntercept; }

Dataset generate(const GeneratorConfig& config) {
    check_config(config);

    double intercept = 0.0;
    if (config.intercept) {
        intercept = *config.intercept;
    } else if (config.target_prior == 0.08 &&
               config.signal_weights == default_signal_weights()) {
        intercept = kDefaultIntercept;
    } else {
        throw CalibrationError(
            "generate: non-default prior or weights without an intercept; "
            "run calibrate_intercept first");
    }

    Rng rng(config.seed);
    std::vector<Record> records;
    records.reserve(static_cast<std::size_t>(config.n));
    for (std::int64_t i = 0; i < config.n; ++i) {
        Record rec;
        rec.values = draw_features(rng);
        const double p = sigmoid(intercept + weighted_sum(config.signal_weights, rec.values));
        rec.label = rng.bernoulli(p) ? 1 : 0;
        records.push_back(std::move(rec));
    }

    std::ostringstream provenance;
    provenance << "synthetic seed=" << config.seed << " n=" << config.n
               << " prior=" << config.target_prior << " intercept=" << intercept;
    return Dataset(rod_schema(), std::move(records), provenance.str());
}

double estimate_positive_ratio(const GeneratorConfig& config, double intercept) {
    check_config(config);
    Rng rng(Rng::derive(config.seed, kCalibrationStream));
    double sum = 0.0;
    for (std::int64_t i = 0; i < kCalibrationSamples; ++i) {
        const std::vector<std::int64_t> values = draw_features(rng);
        sum += sigmoid(intercept + weighted_sum(config.signal_weights, values));
    }
    return sum / static_cast<double>(kCalibrationSamples);
}

double calibrate_intercept(GeneratorConfig& config, double tolerance, int max_iter) {
    check_config(config);
    if (!(tolerance > 0.0))
        throw InvalidArgument("calibrate_intercept: tolerance must be positive");

    // One fixed feature sample keeps the estimate monotone in the intercept.
    Rng rng(Rng::derive(config.seed, kCalibrationStream));
    std::vector<double> signal(static_cast<std::size_t>(kCalibrationSamples));
    for (double& s : signal)
        s = weighted_sum(config.signal_weights, draw_features(rng));

    const auto estimate = [&](double b) {
        double sum = 0.0;
        for (const double s : signal) sum += sigmoid(b + s);
        return sum / static_cast<double>(kCalibrationSamples);
    };

    double lo = -50.0, hi = 50.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const double mid = (lo + hi) / 2.0;
        const double est = estimate(mid);
        if (std::abs(est - config.target_prior) <= tolerance) {
            config.intercept = mid;
            return mid;
        }
        (est < config.target_prior ? lo : hi) = mid;
    }
    std::ostringstream msg;
    msg << "calibrate_intercept: no convergence within " << max_iter
        << " iterations; bracket [" << lo << ", " << hi << "]";
    throw CalibrationError(msg.str());
}

} // namespace rodtree
