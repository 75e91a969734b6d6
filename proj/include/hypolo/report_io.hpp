#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hypolo/dataset.hpp"
#include "hypolo/detectors.hpp"
#include "hypolo/eval.hpp"

namespace hypolo {

/// %.17g, enough to round trip any double.
std::string format_double(double value);

/// Columns: id,score,sigma_r,lambda,pdist. The last three are left empty for
/// the factor methods (hlof/lof).
void write_scores_csv(std::ostream& out, const ScoreReport& report);

/// Scores indexed by id. Throws Error{ParseError} / Error{MismatchedIds}
/// (empty file, missing or repeated ids).
std::vector<double> read_scores_csv(std::istream& in);

/// Radius of a score circle in disk units.
inline constexpr double kScoreRadiusScale = 0.12;

/// Unit circle, one marker per point (outliers drawn differently when
/// labelled) and a circle of radius 0.12 * score around each point whose
/// score is positive. Throws Error{MismatchedIds} unless scores align with
/// the dataset.
void write_disk_svg(std::ostream& out, const Dataset& data, std::span<const double> scores,
                    const std::string& title);

struct AucSeries {
    std::string name;
    std::vector<SweepEntry> entries;
};

/// Line chart of AUC against k, one polyline per series.
void write_auc_chart_svg(std::ostream& out, std::span<const AucSeries> series,
                         const std::string& title);

}  // namespace hypolo
