#include "softextrap/potential.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "softextrap/errors.hpp"
#include "softextrap/quadrature.hpp"

namespace softextrap {

namespace {

const QuadratureRule& cached_gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(gauss_legendre(n));
    return *slot;
}

constexpr int kDensityNodes = 24;
constexpr int kMaxRefinements = 5;

// int_0^1 (t^2 + u^2 (1 - t^2))^p du with geometric panels toward the
// complex singularities at u = +-i |t| / sqrt(1 - t^2).
double radial_profile(double p, double t) {
    const double t2 = t * t;
    const double c = 1.0 - t2;
    if (t == 0.0) return 1.0 / (2.0 * p + 1.0);
    auto f = [&](double u) { return std::pow(t2 + u * u * c, p); };
    const auto& rule = cached_gauss_legendre(kDensityNodes);
    auto panel = [&](double a, double b) {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
        return s * half;
    };
    const double scale = std::abs(t) / std::sqrt(c);
    if (scale >= 1.0) return panel(0.0, 1.0);
    double sum = panel(0.0, scale);
    for (double a = scale; a < 1.0; a *= 2.0) sum += panel(a, std::min(2.0 * a, 1.0));
    return sum;
}

// log|z + sqrt(z^2 - y^2)| on the branch with modulus >= y
double arcsine_log_map(complex z, double y) {
    const complex s = std::sqrt(z - y) * std::sqrt(z + y);
    return std::max(std::log(std::abs(z + s)), std::log(std::abs(z - s)));
}

}  // namespace

PotentialEvaluator::PotentialEvaluator(double alpha, int quadrature_nodes, double tolerance)
    : alpha_(alpha), nodes_(quadrature_nodes), tolerance_(tolerance), beta_(0.0) {
    if (!(alpha > 0.0)) throw DomainError("PotentialEvaluator: alpha must be positive");
    if (quadrature_nodes < 2) throw DomainError("PotentialEvaluator: need at least 2 nodes");
    if (!(tolerance > 0.0)) throw DomainError("PotentialEvaluator: tolerance must be positive");
    beta_ = beta_alpha(alpha);
}

double PotentialEvaluator::density(double t) const {
    if (!(std::abs(t) <= 1.0)) throw DomainError("ullman_density: |t| must be <= 1");
    const double c = 1.0 - t * t;
    if (c == 0.0) return 0.0;
    return alpha_ / std::numbers::pi * std::sqrt(c) * radial_profile(0.5 * (alpha_ - 2.0), t);
}

// alpha * int_0^1 y^(alpha-1) log|z + sqrt(z^2 - y^2)| dy
double PotentialEvaluator::layer_integral(complex z) const {
    // the integral is invariant under z -> -z and z -> conj(z)
    z = complex(std::abs(z.real()), std::abs(z.imag()));
    const double split = z.real();
    auto integrand = [&](double y) { return std::pow(y, alpha_ - 1.0) * arcsine_log_map(z, y); };
    auto estimate = [&](int n) {
        const auto& rule = cached_gauss_legendre(n);
        if (split > 0.0 && split < 1.0)
            return graded_integral(rule, 0.0, split, integrand) + graded_integral(rule, split, 1.0, integrand);
        return graded_integral(rule, 0.0, 1.0, integrand);
    };
    int n = nodes_;
    double previous = estimate(n);
    for (int level = 0; level < kMaxRefinements; ++level) {
        n *= 2;
        const double current = estimate(n);
        if (std::abs(current - previous) * alpha_ < tolerance_) return alpha_ * current;
        previous = current;
    }
    return alpha_ * previous;
}

double PotentialEvaluator::log_potential(complex z) const {
    return layer_integral(z) - std::numbers::ln2;
}

double PotentialEvaluator::delta(complex z) const {
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) return std::pow(std::abs(beta_ * z.real()), alpha_);
    return layer_integral(z) + 1.0 / alpha_;
}

double ullman_density(double alpha, double t) { return PotentialEvaluator(alpha).density(t); }

double log_potential(double alpha, complex z) { return PotentialEvaluator(alpha).log_potential(z); }

double delta(double alpha, complex z) { return PotentialEvaluator(alpha).delta(z); }

double delta_alpha2(complex z) {
    z = complex(std::abs(z.real()), std::abs(z.imag()));
    const complex s = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    return std::log(std::abs(z + s)) + (z * z - z * s).real();
}

double gamma_exponent(const DegreePlan& plan, complex z, const PotentialEvaluator& potential) {
    return 1.0 - potential.delta(z) / plan.q;
}

double gamma_exponent(const DegreePlan& plan, complex z) {
    if (plan.params.alpha == 2.0) return 1.0 - delta_alpha2(z) / plan.q;
    return gamma_exponent(plan, z, PotentialEvaluator(plan.params.alpha));
}

}  // namespace softextrap
