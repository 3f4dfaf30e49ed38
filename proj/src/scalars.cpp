#include "softextrap/scalars.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "softextrap/errors.hpp"

namespace softextrap {

void ProblemParams::validate() const {
    if (!(alpha >= 2.0)) throw DomainError("alpha must be >= 2");
    if (!(lambda >= 1.0)) throw DomainError("lambda must be >= 1");
    if (!(alpha > lambda)) throw DomainError("alpha must exceed lambda");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
}

namespace {

double lambert_w_seed(double x) {
    if (x < 0.25) return x * (1.0 - x);
    if (x > std::numbers::e) {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        return l1 - l2 + l2 / l1;
    }
    // Winitzki's uniform approximation
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
}

}  // namespace

double lambert_w(double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("lambert_w: argument must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;

    double w = lambert_w_seed(x);
    for (int iter = 0; iter < 50; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-15 * std::max(std::abs(w), std::numeric_limits<double>::min())) break;
    }
    return w;
}

double beta_alpha(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("beta_alpha: alpha must be positive");
    const double log_inner = (alpha - 2.0) * std::numbers::ln2 +
                             2.0 * boost::math::lgamma(alpha / 2.0) - boost::math::lgamma(alpha);
    return std::exp(log_inner / alpha);
}

double robin_constant(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("robin_constant: alpha must be positive");
    return -std::numbers::ln2 - 1.0 / alpha;
}

double mu(const ProblemParams& params) { return 1.0 / params.lambda - 1.0 / params.alpha; }

double rho(const ProblemParams& params) {
    return 0.5 * beta_alpha(params.alpha) * std::pow(params.tau * params.lambda, 1.0 / params.lambda) *
           std::exp(mu(params));
}

double q_of_eps(const ProblemParams& params, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0,1)");
    const double m = mu(params);
    const double log_inv_eps = -std::log(eps);
    const double arg = std::exp(-std::log(rho(params)) / m) * log_inv_eps / m;
    return m * lambert_w(arg);
}

double log_rate(const ProblemParams& params, double n) {
    return n * std::log(rho(params)) - mu(params) * n * std::log(n);
}

DegreePlan degree_plan(const ProblemParams& params, double eps) {
    params.validate();
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0,1)");

    DegreePlan plan;
    plan.params = params;
    plan.eps = eps;
    plan.mu = mu(params);
    plan.rho = rho(params);
    plan.beta_alpha = beta_alpha(params.alpha);
    plan.robin = robin_constant(params.alpha);
    plan.q = q_of_eps(params, eps);

    const double log_eps = std::log(eps);
    const double exact = -log_eps / plan.q;
    if (!(exact < static_cast<double>(std::numeric_limits<int>::max() - 1)))
        throw DomainError("eps too small: degree overflows");
    int n = static_cast<int>(std::floor(exact));

    // rounding in q can put the floor one off an exact integer solution
    if (n >= 1 && log_rate(params, n) < log_eps) --n;
    if (n >= 0 && log_rate(params, n + 1) >= log_eps) ++n;

    if (n < 1) {
        throw NoExtrapolationError("no extrapolation possible: eps = " + std::to_string(eps) +
                                   " is too large for this function class (degree would be 0)");
    }
    plan.n = n;
    plan.a_n = plan.beta_alpha * std::pow(static_cast<double>(n), 1.0 / params.alpha);
    plan.r_n = std::pow(n / (params.tau * params.lambda), 1.0 / params.lambda);
    return plan;
}

DegreePlan hermite_plan(double tau, double eps) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    DegreePlan plan = degree_plan(ProblemParams{2.0, tau * std::sqrt(2.0), 1.0}, eps);
    plan.pipeline = Pipeline::hermite;
    return plan;
}

}  // namespace softextrap
