#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hypolo/dataset.hpp"
#include "hypolo/detectors.hpp"

namespace hypolo {

struct RocPoint {
    double fpr;
    double tpr;
};

struct RocResult {
    double auc = 0.0;
    std::vector<RocPoint> roc_points;  // (0,0) first, (1,1) last
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

/// AUC via the Mann-Whitney statistic: the probability that a random outlier
/// outscores a random inlier, tied pairs counting one half. The ROC curve has
/// one threshold per distinct score, visited in descending order.
/// Throws Error{DegenerateLabels} if either class is empty, Error{MismatchedIds}
/// on length mismatch, Error{NonFinite} on a NaN score.
RocResult auc_roc(std::span<const double> scores, const std::vector<bool>& is_outlier);

/// Trapezoidal area under a ROC polyline.
double trapezoid_area(std::span<const RocPoint> curve);

struct SweepEntry {
    std::size_t k;
    double auc;
};

/// One detector run and one AUC per k, in the order given.
std::vector<SweepEntry> sweep_k(const Dataset& data, const DetectorConfig& base,
                                std::span<const std::size_t> k_values);

}  // namespace hypolo
