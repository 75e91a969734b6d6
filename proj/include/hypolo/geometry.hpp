#pragma once

// Points of the Poincare disk and the Rao (geodesic) distance between them.

namespace hypolo {

/// Points closer than this to the unit circle are rejected at ingestion so
/// that 1 - |z|^2 stays well away from zero.
inline constexpr double kBoundaryMargin = 1e-9;

/// A point of the open unit disk. Only obtainable through validate_point, so
/// every instance satisfies x^2 + y^2 < 1 with finite coordinates.
class DiskPoint {
public:
    constexpr DiskPoint() = default;

    constexpr double x() const noexcept { return x_; }
    constexpr double y() const noexcept { return y_; }
    constexpr double norm2() const noexcept { return x_ * x_ + y_ * y_; }

    friend constexpr bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    constexpr DiskPoint(double x, double y) : x_(x), y_(y) {}
    friend DiskPoint validate_point(double x, double y, double margin);

    double x_ = 0.0;
    double y_ = 0.0;
};

/// Throws Error{NonFinite} or Error{OutsideDisk} (norm >= 1 - margin).
DiskPoint validate_point(double x, double y, double margin = kBoundaryMargin);

/// arcosh(1 + 2|a-b|^2 / ((1-|a|^2)(1-|b|^2))). Symmetric bit for bit.
double rao_distance(const DiskPoint& a, const DiskPoint& b) noexcept;

double euclidean_distance(const DiskPoint& a, const DiskPoint& b) noexcept;

/// 2 / (1 - |p|^2)
double conformal_factor(const DiskPoint& p) noexcept;

/// Rotation about the origin by `angle` radians; an isometry of the disk.
DiskPoint rotate(const DiskPoint& p, double angle);

}  // namespace hypolo
