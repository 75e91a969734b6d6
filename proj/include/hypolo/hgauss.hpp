#pragma once

// Riemannian Gaussian on the hyperbolic plane, seen through the law of the
// Rao distance r = d(x, mu) to its Frechet mean.

namespace hypolo {

/// Z(sigma) = 2 pi sigma sqrt(pi/2) exp(sigma^2/2) erf(sigma/sqrt 2).
/// Throws Error{InvalidSigma} unless sigma is positive and finite. Overflows to
/// +inf for sigma beyond ~37.7; the model below never divides by it there.
double normalizer(double sigma);

class HGaussModel {
public:
    explicit HGaussModel(double sigma);

    double sigma() const noexcept { return sigma_; }
    double z() const noexcept { return z_; }

private:
    double sigma_;
    double z_;
};

/// Density of the radial variable: (2 pi / Z) exp(-r^2 / 2 sigma^2) sinh r.
double pdf_radial(double r, const HGaussModel& model) noexcept;

/// P[0 < d(x, mu) <= r], clamped to [0, 1].
double cdf(double r, const HGaussModel& model) noexcept;

/// Same closed form with an explicitly supplied normalizer in the prefactor.
double cdf_given_normalizer(double r, double sigma, double z) noexcept;

struct QuantileSolution {
    double r = 0.0;
    int iterations = 0;
    int bisection_steps = 0;
};

/// Solves cdf(r) = phi by safeguarded Newton (bisection fallback on a doubled
/// bracket). Guarantees |cdf(r) - phi| <= 1e-12 and r > 0.
/// Throws Error{InvalidProbability} or Error{NoConvergence}.
QuantileSolution solve_quantile(double phi, const HGaussModel& model);

double quantile(double phi, const HGaussModel& model);

/// Significance multiplier: quantile(phi, sigma_r) / sigma_r.
double lambda_h(double phi, double sigma_r);

inline constexpr int kQuantileMaxIterations = 200;
inline constexpr double kQuantileTolerance = 1e-12;

}  // namespace hypolo
