#include "hypolo/special.hpp"

#include <cmath>
#include <sstream>

#include "hypolo/error.hpp"

namespace hypolo::special {

double erf(double x) noexcept { return std::erf(x); }
double erfc(double x) noexcept { return std::erfc(x); }

namespace {

// Single precision initial guess (M. Giles, "Approximating the erfinv
// function"), accurate to about 1e-7 over the whole domain.
double erfinv_guess(double y) {
    double w = -std::log((1.0 - y) * (1.0 + y));
    double p;
    if (w < 5.0) {
        w -= 2.5;
        p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
    } else {
        w = std::sqrt(w) - 3.0;
        p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
    }
    return p * y;
}

}  // namespace

double erfinv(double y) {
    if (!(y > -1.0 && y < 1.0)) {
        std::ostringstream msg;
        msg << "erfinv argument " << y << " outside (-1, 1)";
        throw Error(Errc::InvalidProbability, msg.str());
    }
    if (y == 0.0) return 0.0;
    const double a = std::fabs(y);
    // The residual erf(x) - a is formed through erfc in the upper half so that
    // 1 - a (exact for a >= 0.5) keeps its relative precision near 1.
    const double tail = 1.0 - a;
    double x = erfinv_guess(a);
    for (int it = 0; it < 8; ++it) {
        const double f = a < 0.5 ? std::erf(x) - a : tail - std::erfc(x);
        const double dfdx = 2.0 / kSqrtPi * std::exp(-x * x);
        const double newton = f / dfdx;
        const double step = newton / (1.0 + x * newton);  // Halley, erf'' = -2x erf'
        x -= step;
        if (std::fabs(step) <= 1e-16 * std::fabs(x)) break;
    }
    return y < 0.0 ? -x : x;
}

}  // namespace hypolo::special
