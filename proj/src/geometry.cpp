#include "hypolo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypolo/error.hpp"

namespace hypolo {

DiskPoint validate_point(double x, double y, double margin) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        std::ostringstream msg;
        msg << "coordinate (" << x << ", " << y << ") is not finite";
        throw Error(Errc::NonFinite, msg.str());
    }
    const double norm = std::hypot(x, y);
    if (!(norm < 1.0 - margin)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "point (" << x << ", " << y << ") has norm " << norm
            << " >= 1 - " << margin;
        throw Error(Errc::OutsideDisk, msg.str());
    }
    return DiskPoint(x, y);
}

double rao_distance(const DiskPoint& a, const DiskPoint& b) noexcept {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    const double diff2 = dx * dx + dy * dy;
    const double den = (1.0 - a.norm2()) * (1.0 - b.norm2());
    // arcosh(1 + t) written as log1p so that nearby points keep full
    // relative precision; t >= 0 means the arcosh argument is never below 1.
    const double t = std::max(0.0, 2.0 * diff2 / den);
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double euclidean_distance(const DiskPoint& a, const DiskPoint& b) noexcept {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    return std::sqrt(dx * dx + dy * dy);
}

double conformal_factor(const DiskPoint& p) noexcept { return 2.0 / (1.0 - p.norm2()); }

DiskPoint rotate(const DiskPoint& p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return validate_point(c * p.x() - s * p.y(), s * p.x() + c * p.y());
}

}  // namespace hypolo
