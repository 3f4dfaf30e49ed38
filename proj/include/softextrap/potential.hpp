#pragma once

#include <complex>

#include "softextrap/scalars.hpp"

namespace softextrap {

using complex = std::complex<double>;

/// Ullman equilibrium density on [-1,1] for the weight |x|^alpha, its
/// logarithmic potential U(z), and the exponent function
/// delta(z) = U(z) - F_alpha.
///
/// U is computed from the layer-cake form
///   U(z) = alpha * int_0^1 y^(alpha-1) log|(z + sqrt(z^2 - y^2)) / 2| dy,
/// which integrates the (closed-form) arcsine potential of [-y, y] against
/// the radial profile of v_alpha.  The y-integral is split at |Re z| and
/// evaluated by graded Gauss-Legendre, doubling the node count until two
/// successive estimates agree to `tolerance`.
class PotentialEvaluator {
public:
    explicit PotentialEvaluator(double alpha, int quadrature_nodes = 200, double tolerance = 1e-9);

    double alpha() const { return alpha_; }
    int quadrature_nodes() const { return nodes_; }
    double tolerance() const { return tolerance_; }

    /// v_alpha(t); throws DomainError for |t| > 1.
    double density(double t) const;
    /// U(z) by quadrature (never the Frostman shortcut).
    double log_potential(complex z) const;
    /// delta(z); exact |beta_alpha x|^alpha for real x in [-1, 1].
    double delta(complex z) const;

private:
    double layer_integral(complex z) const;

    double alpha_;
    int nodes_;
    double tolerance_;
    double beta_;
};

double ullman_density(double alpha, double t);
double log_potential(double alpha, complex z);
double delta(double alpha, complex z);

/// Closed form of delta for alpha = 2:
/// log|z + sqrt(z^2-1)| + Re(z^2 - z sqrt(z^2-1)), with
/// sqrt(z^2-1) = sqrt(z-1) sqrt(z+1) so that sqrt(z^2-1)/z -> 1 at infinity.
double delta_alpha2(complex z);

/// gamma(z) = 1 - delta(z)/q for z in the normalized variable.
double gamma_exponent(const DegreePlan& plan, complex z);
double gamma_exponent(const DegreePlan& plan, complex z, const PotentialEvaluator& potential);

}  // namespace softextrap
