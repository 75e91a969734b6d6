#include "hypolo/hgauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hypolo/error.hpp"
#include "hypolo/special.hpp"

namespace hypolo {

namespace {

using std::numbers::pi;
using special::kSqrt2;

// exp(sigma^2/2) overflows the prefactor's numerator and Z alike past this;
// above it the prefactor is replaced by its exact simplification.
constexpr double kCancelExpAbove = 30.0;

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        std::ostringstream msg;
        msg << "sigma must be positive and finite, got " << sigma;
        throw Error(Errc::InvalidSigma, msg.str());
    }
}

void check_phi(double phi) {
    if (!(phi > 0.0 && phi < 1.0)) {
        std::ostringstream msg;
        msg << "phi must lie in (0, 1), got " << phi;
        throw Error(Errc::InvalidProbability, msg.str());
    }
}

// 2 erf(s) + erf((r - s2)/(s sqrt2)) - erf((r + s2)/(s sqrt2)), with s2 = sigma^2.
// The first argument is spelled sigma^2 / (sigma sqrt2) so that r = 0 cancels
// exactly.
double cdf_bracket(double r, double sigma) noexcept {
    const double s2 = sigma * sigma;
    const double scale = sigma * kSqrt2;
    return 2.0 * special::erf(s2 / scale) + special::erf((r - s2) / scale) -
           special::erf((r + s2) / scale);
}

}  // namespace

double normalizer(double sigma) {
    check_sigma(sigma);
    return 2.0 * pi * sigma * std::sqrt(pi / 2.0) * std::exp(sigma * sigma / 2.0) *
           special::erf(sigma / kSqrt2);
}

HGaussModel::HGaussModel(double sigma) : sigma_(sigma), z_(normalizer(sigma)) {}

double pdf_radial(double r, const HGaussModel& model) noexcept {
    if (r <= 0.0) return 0.0;
    const double sigma = model.sigma();
    // exp(-r^2/2s^2) sinh(r) exp(-s^2/2) = exp(-(r - s^2)^2 / 2s^2) (1 - e^{-2r}) / 2,
    // which leaves Z's exp(s^2/2) cancelled and stays finite for any sigma.
    const double shifted = (r - sigma * sigma) / sigma;
    const double head = std::exp(-0.5 * shifted * shifted) * -std::expm1(-2.0 * r);
    return head / (2.0 * sigma * std::sqrt(pi / 2.0) * special::erf(sigma / kSqrt2));
}

double cdf_given_normalizer(double r, double sigma, double z) noexcept {
    if (r <= 0.0) return 0.0;
    const double prefactor =
        pi * std::sqrt(2.0 * pi) * sigma * std::exp(sigma * sigma / 2.0) / (2.0 * z);
    return std::clamp(prefactor * cdf_bracket(r, sigma), 0.0, 1.0);
}

double cdf(double r, const HGaussModel& model) noexcept {
    const double sigma = model.sigma();
    if (sigma <= kCancelExpAbove) return cdf_given_normalizer(r, sigma, model.z());
    if (r <= 0.0) return 0.0;
    const double prefactor = 1.0 / (2.0 * special::erf(sigma / kSqrt2));
    return std::clamp(prefactor * cdf_bracket(r, sigma), 0.0, 1.0);
}

QuantileSolution solve_quantile(double phi, const HGaussModel& model) {
    check_phi(phi);
    const double sigma = model.sigma();

    double lo = 0.0;
    double hi = sigma;
    int doublings = 0;
    while (cdf(hi, model) <= phi) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > kQuantileMaxIterations || !std::isfinite(hi)) {
            throw Error(Errc::NoConvergence, "could not bracket the quantile");
        }
    }

    QuantileSolution sol;
    double r = sigma * std::sqrt(-2.0 * std::log1p(-phi));  // Rayleigh quantile
    if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);

    // Once the residual bound holds, a few extra Newton steps polish r towards
    // the rounding floor of cdf; the best iterate seen is returned.
    double best_r = r;
    double best_f = std::numeric_limits<double>::infinity();
    int polish = 0;
    for (int it = 0; it < kQuantileMaxIterations; ++it) {
        sol.iterations = it + 1;
        const double f = cdf(r, model) - phi;
        if (std::fabs(f) < std::fabs(best_f)) {
            best_f = f;
            best_r = r;
        }
        if (f == 0.0) break;
        if (f < 0.0) {
            lo = r;
        } else {
            hi = r;
        }
        if (std::fabs(best_f) <= kQuantileTolerance && ++polish > 3) break;

        const double slope = pdf_radial(r, model);
        double next = r - f / slope;
        if (!(slope > 0.0) || !(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
            ++sol.bisection_steps;
        }
        if (std::fabs(next - r) <= 1e-15 * r) {
            if (std::fabs(cdf(next, model) - phi) < std::fabs(best_f)) best_r = next;
            break;
        }
        r = next;
    }
    if (std::fabs(cdf(best_r, model) - phi) <= kQuantileTolerance && best_r > 0.0) {
        sol.r = best_r;
        return sol;
    }
    std::ostringstream msg;
    msg << "quantile(" << phi << ", sigma=" << sigma << ") did not reach tolerance "
        << kQuantileTolerance;
    throw Error(Errc::NoConvergence, msg.str());
}

double quantile(double phi, const HGaussModel& model) { return solve_quantile(phi, model).r; }

double lambda_h(double phi, double sigma_r) {
    return quantile(phi, HGaussModel(sigma_r)) / sigma_r;
}

}  // namespace hypolo
