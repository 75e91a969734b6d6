#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hypolo/geometry.hpp"

namespace hypolo {

enum class Label : std::uint8_t { Unknown, Inlier, Outlier };

std::string_view to_string(Label label) noexcept;

/// Ordered, immutable collection of disk points. A point's id is its position,
/// so ids are unique and contiguous from 0. Labels and names are either empty
/// or aligned with the points.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<DiskPoint> points, std::vector<Label> labels = {},
                     std::vector<std::string> names = {});

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    const DiskPoint& point(std::size_t id) const { return points_.at(id); }
    const std::vector<DiskPoint>& points() const noexcept { return points_; }

    bool has_labels() const noexcept { return !labels_.empty(); }
    bool has_names() const noexcept { return !names_.empty(); }
    Label label(std::size_t id) const { return has_labels() ? labels_.at(id) : Label::Unknown; }
    std::string_view name(std::size_t id) const;
    const std::vector<Label>& labels() const noexcept { return labels_; }

    /// Per-point outlier flags. Throws Error{DegenerateLabels} if any point is
    /// unlabeled.
    std::vector<bool> outlier_mask() const;

    std::size_t count(Label label) const noexcept;

private:
    std::vector<DiskPoint> points_;
    std::vector<Label> labels_;
    std::vector<std::string> names_;
};

}  // namespace hypolo
