#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hypolo/dataset.hpp"
#include "hypolo/neighbors.hpp"

namespace hypolo {

enum class Method { Hlof, Hloop, Lof, Loop };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view name);

/// lof/loop are the Euclidean baselines, hlof/hloop use the Rao distance.
Metric default_metric(Method method) noexcept;
bool is_probabilistic(Method method) noexcept;

inline constexpr double kDefaultPhi = 0.95;

struct DetectorConfig {
    std::size_t k = 10;
    std::optional<double> phi;  // probabilistic methods only
    Metric metric = Metric::hyperbolic();
    Method method = Method::Hloop;
    IndexStrategy strategy = IndexStrategy::Brute;
    unsigned threads = 1;
};

/// Fills in defaults (phi = 0.95 for hloop/loop) and rejects inconsistent
/// combinations with Error{InvalidConfig}.
DetectorConfig normalized(DetectorConfig config);

struct ScoreReport {
    DetectorConfig config;
    std::vector<double> score;   // LOF factor or outlier probability in [0, 1)
    std::vector<bool> degenerate;  // infinite lrd (LOF) or sigma_r = 0 (LoOP)
    // Probabilistic methods only; empty for the factor methods.
    std::vector<double> sigma_r;
    std::vector<double> lambda;
    std::vector<double> pdist;
    std::vector<double> plof;
    double nplof = 0.0;
    double mean_lambda = 0.0;

    std::size_t size() const noexcept { return score.size(); }
};

/// Local outlier factor under the configured metric (Rao distance for hlof).
/// Points whose lrd is infinite (all neighbours coincide with them) are
/// flagged and scored 1.
ScoreReport hlof(const Dataset& data, const DetectorConfig& config);

/// Hyperbolic local outlier probability: pdist(o) = G^-1(phi; sigma_r(o)),
/// where G is the radial CDF of the hyperbolic Gaussian.
ScoreReport hloop(const Dataset& data, const DetectorConfig& config);

/// Classical LoOP: Euclidean metric, lambda = sqrt(2) erfinv(phi).
ScoreReport loop_euclidean(const Dataset& data, std::size_t k, double phi,
                           IndexStrategy strategy = IndexStrategy::Brute, unsigned threads = 1);

/// Dispatches on config.method.
ScoreReport detect(const Dataset& data, const DetectorConfig& config);

/// Maps sigma_r > 0 to the significance lambda.
using Significance = std::function<double(double sigma_r)>;

/// Hyperbolic significance lambda_H(phi, .) and the Euclidean constant one.
Significance hyperbolic_significance(double phi);
Significance euclidean_significance(double phi);

/// sqrt(2) erfinv(phi)
double euclidean_lambda(double phi);

/// Shared LoOP pipeline over a built index.
ScoreReport loop_scores(const NeighborhoodIndex& index, const Significance& significance,
                        const DetectorConfig& config);

ScoreReport lof_scores(const NeighborhoodIndex& index, const DetectorConfig& config);

}  // namespace hypolo
