#pragma once

#include <cmath>

namespace softextrap {

/// Window exponent and growth class of the unknown function.
///
/// The window is w_alpha(x) = exp(-|x|^alpha); the function is entire with
/// |f(z)| <= exp(tau |z|^lambda).
struct ProblemParams {
    double alpha = 2.0;
    double tau = 1.0;
    double lambda = 1.0;

    /// Throws DomainError unless alpha >= 2, lambda >= 1, alpha > lambda, tau > 0.
    void validate() const;
};

/// How sample coordinates relate to the normalized window.
///
/// `generic` samples g = exp(-|x|^alpha) f + noise directly.  `hermite`
/// samples g = exp(-x^2/2) f + noise; internally this is the alpha = 2,
/// lambda = 1 problem in t = x/sqrt(2) with type tau*sqrt(2).
enum class Pipeline { generic, hermite };

/// Everything derived from (params, eps) by the degree rule.
///
/// Lengths (a_n, r_n) are in the normalized variable of `params`.  For the
/// Hermite pipeline `params` already holds the rescaled type and x_scale()
/// converts back to sample coordinates.
struct DegreePlan {
    ProblemParams params;
    Pipeline pipeline = Pipeline::generic;
    double eps = 0.0;
    double q = 0.0;
    int n = 0;
    double a_n = 0.0;
    double r_n = 0.0;
    double rho = 0.0;
    double mu = 0.0;
    double beta_alpha = 0.0;
    double robin = 0.0;

    /// Sample coordinate x per normalized coordinate t.
    double x_scale() const { return pipeline == Pipeline::hermite ? std::sqrt(2.0) : 1.0; }
    /// Type of the function in sample coordinates.
    double sample_tau() const { return params.tau / std::pow(x_scale(), params.lambda); }
    /// Half-width of the approximation region in sample coordinates.
    double window_edge() const { return x_scale() * a_n; }
    /// Radius beyond which nothing can be recovered, in sample coordinates.
    double forbidden_radius() const { return x_scale() * r_n; }
    /// Window value at a sample coordinate.
    double weight(double x) const { return std::exp(-std::pow(std::abs(x / x_scale()), params.alpha)); }
    /// log(1/weight(x)).
    double log_inverse_weight(double x) const { return std::pow(std::abs(x / x_scale()), params.alpha); }
};

/// Principal branch of the Lambert W function for x >= 0.
double lambert_w(double x);

/// Mhaskar-Rakhmanov-Saff constant: a_n = beta_alpha(alpha) * n^(1/alpha).
double beta_alpha(double alpha);

/// Modified Robin constant log(1/2) - 1/alpha.
double robin_constant(double alpha);

/// 1/lambda - 1/alpha.
double mu(const ProblemParams& params);

/// (beta_alpha/2) (tau lambda)^(1/lambda) exp(1/lambda - 1/alpha).
double rho(const ProblemParams& params);

/// q(eps) = mu W(rho^(-1/mu) log(1/eps) / mu).
double q_of_eps(const ProblemParams& params, double eps);

/// log(rho^n n^(-mu n)), the log of the approximation rate at degree n.
double log_rate(const ProblemParams& params, double n);

/// Degree rule for the generic pipeline.
///
/// n is the largest integer with rho^n n^(-mu n) >= eps.  Throws DomainError
/// for eps outside (0,1) and NoExtrapolationError when n would be 0.
DegreePlan degree_plan(const ProblemParams& params, double eps);

/// Degree rule for samples windowed by exp(-x^2/2) and f of exponential type tau.
DegreePlan hermite_plan(double tau, double eps);

}  // namespace softextrap
