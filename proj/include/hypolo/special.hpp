#pragma once

namespace hypolo::special {

inline constexpr double kSqrtPi = 1.772453850905516027298;
inline constexpr double kSqrt2 = 1.414213562373095048802;

double erf(double x) noexcept;
double erfc(double x) noexcept;

/// Inverse error function on the open interval (-1, 1).
/// Throws Error{InvalidProbability} outside it.
double erfinv(double y);

}  // namespace hypolo::special
