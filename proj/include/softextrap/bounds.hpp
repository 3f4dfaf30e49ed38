#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softextrap/polybasis.hpp"
#include "softextrap/potential.hpp"
#include "softextrap/scalars.hpp"

namespace softextrap {

enum class Region { approximation, extrapolation, forbidden };

std::string to_string(Region region);

/// Pointwise error envelope for a degree plan, in sample coordinates:
///
///   approximation  real |x| <= window edge   eps / w(x)
///   extrapolation  |z| <= forbidden radius   eps^(1 - delta(z / window edge) / q)
///   forbidden      otherwise                 exp(tau |z|^lambda)
class BoundProfile {
public:
    explicit BoundProfile(DegreePlan plan, int quadrature_nodes = 200, double tolerance = 1e-9);

    const DegreePlan& plan() const { return plan_; }
    const PotentialEvaluator& potential() const { return potential_; }

    Region classify(std::complex<double> z) const;
    /// gamma'(z) = 1 - delta(z / window edge) / q.
    double gamma_prime(std::complex<double> z) const;
    std::pair<Region, double> envelope(std::complex<double> z) const;

private:
    double normalized_delta(std::complex<double> z) const;

    DegreePlan plan_;
    PotentialEvaluator potential_;
};

/// Envelope at the plan's perturbation level; eps must equal plan.eps.
std::pair<Region, double> envelope(const BoundProfile& profile, std::complex<double> z, double eps);

/// Perturbation levels at which a fixed point z0 crosses region boundaries
/// (alpha = 2, lambda = 1 samples windowed by exp(-x^2/2)).
///
/// eps_12 solves eps = exp(-q(eps) z0^2 / 2); eps_23 solves
/// eps = exp(-q(eps) tau z0).  Logs are kept because eps_12 underflows for
/// moderately large z0.
struct RegionThresholds {
    std::optional<double> log_eps_12;
    std::optional<double> log_eps_23;

    /// exp(log eps) when representable as a normal double.
    std::optional<double> eps_12() const;
    std::optional<double> eps_23() const;
};

/// Solves L = A q(L) for L = log(1/eps); nullopt when the only solution is L = 0.
std::optional<double> solve_threshold(const ProblemParams& params, double slope);

/// params = (2, tau, 1) with tau in sample coordinates.
RegionThresholds region_thresholds(double z0, const ProblemParams& params);

/// Result of checking the closed-form Hermite coefficients of cosh(tau z)
/// against a Gauss-Hermite projection.
struct CoefficientCheck {
    int compared = 0;
    double max_relative_discrepancy = 0.0;
    /// printed / projected, median over the compared coefficients.
    double ratio = 1.0;
    bool uses_projection = false;
};

/// cosh(tau z) minus its degree < n orthonormal-Hermite partial sum.
class DarkObject {
public:
    DarkObject(double tau, const DegreePlan& plan);
    DarkObject(double tau, int n);

    double tau() const { return tau_; }
    int degree() const { return n_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::vector<double>& printed_coefficients() const { return printed_; }
    const std::vector<double>& projected_coefficients() const { return projected_; }
    const CoefficientCheck& check() const { return check_; }

    std::complex<double> operator()(std::complex<double> z) const;

private:
    double tau_;
    int n_;
    BasisDescriptor basis_;
    std::vector<double> coefficients_;
    std::vector<double> printed_;
    std::vector<double> projected_;
    CoefficientCheck check_;
};

/// e^(tau^2/4) tau^k pi^(1/4) (1 + (-1)^k) / sqrt(2^k k!), evaluated in log space.
double printed_dark_coefficient(double tau, int k);

/// int cosh(tau x) H_k(x) exp(-x^2) dx for k = 0..up_to by Gauss-Hermite quadrature.
std::vector<double> project_cosh(double tau, int up_to);

std::complex<double> dark_object(double tau, const DegreePlan& plan, std::complex<double> z);

}  // namespace softextrap
