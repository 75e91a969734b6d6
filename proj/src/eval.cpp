#include "hypolo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypolo/error.hpp"

namespace hypolo {

RocResult auc_roc(std::span<const double> scores, const std::vector<bool>& is_outlier) {
    if (scores.size() != is_outlier.size()) {
        throw Error(Errc::MismatchedIds, std::to_string(scores.size()) + " scores for " +
                                             std::to_string(is_outlier.size()) + " labels");
    }
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (std::isnan(scores[i])) {
            throw Error(Errc::NonFinite, "score of id " + std::to_string(i) + " is NaN");
        }
    }
    RocResult result;
    for (bool o : is_outlier) (o ? result.n_pos : result.n_neg) += 1;
    if (result.n_pos == 0 || result.n_neg == 0) {
        throw Error(Errc::DegenerateLabels, "need at least one outlier and one inlier");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    // Walk tie groups from the highest score down. Every inlier in a group is
    // beaten by the outliers of all earlier groups and ties with the outliers
    // of its own group.
    const double pos = static_cast<double>(result.n_pos);
    const double neg = static_cast<double>(result.n_neg);
    double wins = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    result.roc_points.push_back({0.0, 0.0});
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        std::size_t group_pos = 0;
        std::size_t group_neg = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (is_outlier[order[j]] ? group_pos : group_neg) += 1;
            ++j;
        }
        wins += static_cast<double>(group_neg) *
                (static_cast<double>(tp) + 0.5 * static_cast<double>(group_pos));
        tp += group_pos;
        fp += group_neg;
        result.roc_points.push_back(
            {static_cast<double>(fp) / neg, static_cast<double>(tp) / pos});
        i = j;
    }
    result.auc = wins / (pos * neg);
    return result;
}

double trapezoid_area(std::span<const RocPoint> curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    }
    return area;
}

std::vector<SweepEntry> sweep_k(const Dataset& data, const DetectorConfig& base,
                                std::span<const std::size_t> k_values) {
    const auto mask = data.outlier_mask();
    std::vector<SweepEntry> out;
    out.reserve(k_values.size());
    for (std::size_t k : k_values) {
        DetectorConfig cfg = base;
        cfg.k = k;
        const auto report = detect(data, cfg);
        out.push_back({k, auc_roc(report.score, mask).auc});
    }
    return out;
}

}  // namespace hypolo
