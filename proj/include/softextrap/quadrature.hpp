#pragma once

#include <functional>
#include <vector>

namespace softextrap {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    /// Gauss-Hermite only: weights[i] * exp(nodes[i]^2), finite where weights underflow.
    std::vector<double> scaled_weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Hermite rule for the weight exp(-x^2) on the real line.
///
/// Nodes come from the Jacobi matrix eigenvalues; weights from the
/// Christoffel sum 1 / sum_k psi_k(x)^2 over Hermite functions.
QuadratureRule gauss_hermite(int n);

/// Integrate f over [a, b] with a Gauss-Legendre rule after the substitution
/// x = a + (b - a) s(u), s(u) = u^3 (10 - 15u + 6u^2).
///
/// The map has vanishing first and second derivatives at both ends, so
/// endpoint singularities of log or algebraic type are flattened.
double graded_integral(const QuadratureRule& rule, double a, double b,
                       const std::function<double(double)>& f);

}  // namespace softextrap
