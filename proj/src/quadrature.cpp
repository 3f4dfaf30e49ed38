#include "softextrap/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace softextrap {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.scaled_weights.resize(n);
    const double lead = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < n; ++i) {
        const double x = solver.eigenvalues()[i];
        // Hermite functions psi_k = exp(-x^2/2) h_k, accumulated with a running log scale
        double log_scale = -0.5 * x * x;
        double prev = 0.0;
        double cur = lead;
        double sum = cur * cur;  // in units of exp(2 log_scale)
        for (int k = 0; k + 1 < n; ++k) {
            const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
            prev = cur;
            cur = next;
            if (std::abs(cur) > 1e100) {
                cur *= 1e-100;
                prev *= 1e-100;
                sum *= 1e-200;
                log_scale += 100.0 * std::numbers::ln10;
            }
            sum += cur * cur;
        }
        const double scaled = std::exp(-2.0 * log_scale - std::log(sum));
        rule.nodes[i] = x;
        rule.scaled_weights[i] = scaled;
        rule.weights[i] = scaled * std::exp(-x * x);
    }
    return rule;
}

double graded_integral(const QuadratureRule& rule, double a, double b,
                       const std::function<double(double)>& f) {
    const double len = b - a;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = 0.5 * (rule.nodes[i] + 1.0);
        const double s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
        const double ds = 30.0 * u * u * (1.0 - u) * (1.0 - u);
        sum += rule.weights[i] * 0.5 * ds * f(a + len * s);
    }
    return sum * len;
}

}  // namespace softextrap
