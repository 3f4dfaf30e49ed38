#include "softextrap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "softextrap/errors.hpp"
#include "softextrap/quadrature.hpp"

namespace softextrap {

std::string to_string(Region region) {
    switch (region) {
        case Region::approximation: return "approximation";
        case Region::extrapolation: return "extrapolation";
        case Region::forbidden: return "forbidden";
    }
    return "unknown";
}

BoundProfile::BoundProfile(DegreePlan plan, int quadrature_nodes, double tolerance)
    : plan_(std::move(plan)), potential_(plan_.params.alpha, quadrature_nodes, tolerance) {}

Region BoundProfile::classify(std::complex<double> z) const {
    const double r = std::abs(z);
    if (z.imag() == 0.0 && r <= plan_.window_edge()) return Region::approximation;
    if (r <= plan_.forbidden_radius()) return Region::extrapolation;
    return Region::forbidden;
}

double BoundProfile::normalized_delta(std::complex<double> z) const {
    const std::complex<double> u = z / plan_.window_edge();
    if (plan_.params.alpha == 2.0) return delta_alpha2(u);
    return potential_.delta(u);
}

double BoundProfile::gamma_prime(std::complex<double> z) const { return 1.0 - normalized_delta(z) / plan_.q; }

std::pair<Region, double> BoundProfile::envelope(std::complex<double> z) const {
    const Region region = classify(z);
    switch (region) {
        case Region::approximation:
            return {region, plan_.eps * std::exp(plan_.log_inverse_weight(z.real()))};
        case Region::extrapolation:
            return {region, std::exp(gamma_prime(z) * std::log(plan_.eps))};
        case Region::forbidden:
            return {region, std::exp(plan_.sample_tau() * std::pow(std::abs(z), plan_.params.lambda))};
    }
    return {region, std::numeric_limits<double>::quiet_NaN()};
}

std::pair<Region, double> envelope(const BoundProfile& profile, std::complex<double> z, double eps) {
    if (std::abs(eps - profile.plan().eps) > 1e-12 * profile.plan().eps)
        throw DomainError("envelope: eps does not match the profile's plan");
    return profile.envelope(z);
}

std::optional<double> RegionThresholds::eps_12() const {
    if (!log_eps_12 || *log_eps_12 < std::log(std::numeric_limits<double>::min())) return std::nullopt;
    return std::exp(*log_eps_12);
}

std::optional<double> RegionThresholds::eps_23() const {
    if (!log_eps_23 || *log_eps_23 < std::log(std::numeric_limits<double>::min())) return std::nullopt;
    return std::exp(*log_eps_23);
}

namespace {

// q as a function of L = log(1/eps), valid for any L > 0
double q_of_log(const ProblemParams& params, double log_inv_eps) {
    const double m = mu(params);
    return m * lambert_w(std::exp(-std::log(rho(params)) / m) * log_inv_eps / m);
}

}  // namespace

std::optional<double> solve_threshold(const ProblemParams& params, double slope) {
    // q(L) ~ rho^(-1/mu) L near 0 and q is concave, so a positive root of
    // slope * q(L) = L exists iff slope * rho^(-1/mu) > 1
    const double initial_gain = slope * std::exp(-std::log(rho(params)) / mu(params));
    if (!(initial_gain > 1.0)) return std::nullopt;

    auto residual = [&](double L) { return slope * q_of_log(params, L) - L; };

    double L = slope;
    for (int iter = 0; iter < 500; ++iter) {
        const double next = slope * q_of_log(params, L);
        const double step = next - L;
        L = next;
        if (std::abs(step) <= 1e-14 * L) return L;
    }

    // bisection fallback on a bracket residual(lo) > 0 > residual(hi)
    double lo = 1e-300;
    double hi = std::max(slope, 1.0);
    while (residual(hi) > 0.0) hi *= 2.0;
    while (!(residual(lo) > 0.0) && lo < hi) lo = std::sqrt(lo * hi);
    for (int iter = 0; iter < 400 && hi - lo > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

RegionThresholds region_thresholds(double z0, const ProblemParams& params) {
    if (!(z0 > 0.0)) throw DomainError("region_thresholds: z0 must be positive");
    if (params.alpha != 2.0 || params.lambda != 1.0)
        throw DomainError("region_thresholds: only alpha = 2, lambda = 1 is supported");
    if (!(params.tau > 0.0)) throw DomainError("tau must be positive");
    const ProblemParams internal{2.0, params.tau * std::sqrt(2.0), 1.0};
    RegionThresholds out;
    if (auto L = solve_threshold(internal, 0.5 * z0 * z0)) out.log_eps_12 = -*L;
    if (auto L = solve_threshold(internal, params.tau * z0)) out.log_eps_23 = -*L;
    return out;
}

double printed_dark_coefficient(double tau, int k) {
    if (k % 2 != 0) return 0.0;
    const double log_mag = 0.25 * tau * tau + k * std::log(tau) + 0.25 * std::log(std::numbers::pi) +
                           std::numbers::ln2 - 0.5 * (k * std::numbers::ln2 + boost::math::lgamma(k + 1.0));
    return std::exp(log_mag);
}

std::vector<double> project_cosh(double tau, int up_to) {
    const int nodes = std::max(120, up_to + 60);
    const QuadratureRule rule = gauss_hermite(nodes);
    BasisDescriptor basis{BasisKind::hermite_orthonormal, 1.0, up_to};
    const Weight half_gauss{2.0, std::sqrt(2.0)};
    std::vector<double> coeffs(static_cast<std::size_t>(up_to) + 1, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        // exp(-x^2/2) cosh(tau x) and exp(-x^2/2) H_k(x) keep both factors finite
        const double damped_cosh = 0.5 * (std::exp(-0.5 * x * x + tau * x) + std::exp(-0.5 * x * x - tau * x));
        const auto psi = eval_weighted_row(basis, x, half_gauss, up_to);
        for (int k = 0; k <= up_to; ++k) coeffs[static_cast<std::size_t>(k)] += rule.scaled_weights[i] * damped_cosh * psi[static_cast<std::size_t>(k)];
    }
    return coeffs;
}

DarkObject::DarkObject(double tau, const DegreePlan& plan) : DarkObject(tau, plan.n) {}

DarkObject::DarkObject(double tau, int n) : tau_(tau), n_(n), basis_{BasisKind::hermite_orthonormal, 1.0, std::max(n - 1, 0)} {
    if (!(tau > 0.0)) throw DomainError("dark object: tau must be positive");
    if (n < 0) throw DomainError("dark object: degree must be >= 0");
    if (n == 0) return;

    projected_ = project_cosh(tau, n - 1);
    printed_.resize(projected_.size());
    for (int k = 0; k < n; ++k) printed_[static_cast<std::size_t>(k)] = printed_dark_coefficient(tau, k);

    // compare only coefficients well above the quadrature's absolute noise floor
    double largest = 0.0;
    for (double c : projected_) largest = std::max(largest, std::abs(c));
    std::vector<double> ratios;
    std::vector<bool> significant(projected_.size(), false);
    for (std::size_t k = 0; k < projected_.size(); k += 2) {
        if (std::abs(projected_[k]) < 1e-6 * largest) continue;
        significant[k] = true;
        ratios.push_back(printed_[k] / projected_[k]);
        check_.max_relative_discrepancy = std::max(check_.max_relative_discrepancy,
                                                   std::abs(printed_[k] - projected_[k]) / std::abs(projected_[k]));
    }
    check_.compared = static_cast<int>(ratios.size());
    if (!ratios.empty()) {
        std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
        check_.ratio = ratios[ratios.size() / 2];
    }
    check_.uses_projection = check_.max_relative_discrepancy > 1e-8;

    coefficients_.assign(projected_.size(), 0.0);
    for (std::size_t k = 0; k < projected_.size(); k += 2) {
        // cosh is even, so odd coefficients are exactly zero
        if (!check_.uses_projection) {
            coefficients_[k] = printed_[k];
        } else if (significant[k]) {
            coefficients_[k] = projected_[k];
        } else {
            // below the projection's noise floor: printed shape rescaled to the projection
            coefficients_[k] = printed_[k] / check_.ratio;
        }
    }
}

std::complex<double> DarkObject::operator()(std::complex<double> z) const {
    std::complex<double> value = std::cosh(tau_ * z);
    if (n_ == 0) return value;
    const auto h = eval_basis_all(basis_, z, n_ - 1);
    std::complex<double> partial = 0.0;
    for (int k = n_ - 1; k >= 0; --k) partial += coefficients_[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k)];
    return value - partial;
}

std::complex<double> dark_object(double tau, const DegreePlan& plan, std::complex<double> z) {
    return DarkObject(tau, plan)(z);
}

}  // namespace softextrap
