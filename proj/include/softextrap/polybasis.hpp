#pragma once

#include <complex>
#include <string>
#include <vector>

namespace softextrap {

enum class BasisKind { hermite_orthonormal, scaled_chebyshev };

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

/// Polynomial family P_k(x) = H_k(x / scale) or T_k(x / scale).
///
/// H_k is orthonormal for exp(-x^2): int H_j H_k exp(-x^2) dx = delta_jk.
struct BasisDescriptor {
    BasisKind kind = BasisKind::hermite_orthonormal;
    double scale = 1.0;
    int max_degree = 0;

    void validate() const;
};

/// Window exp(-|x / x_scale|^alpha).
struct Weight {
    double alpha = 2.0;
    double x_scale = 1.0;

    double log_inverse(double x) const;
    double operator()(double x) const;
};

double eval_basis(const BasisDescriptor& desc, int degree, double x);
std::complex<double> eval_basis(const BasisDescriptor& desc, int degree, std::complex<double> z);

/// [P_0(z), ..., P_up_to(z)] by the three-term recurrence.
std::vector<double> eval_basis_all(const BasisDescriptor& desc, double x, int up_to);
std::vector<std::complex<double>> eval_basis_all(const BasisDescriptor& desc, std::complex<double> z, int up_to);

/// [w(x) P_0(x), ..., w(x) P_up_to(x)].
///
/// The weight enters as a log offset at the start of the recurrence and the
/// running pair is renormalized whenever it grows large, so entries are
/// finite even where w(x) alone underflows.
std::vector<double> eval_weighted_row(const BasisDescriptor& desc, double x, const Weight& weight, int up_to);

}  // namespace softextrap
