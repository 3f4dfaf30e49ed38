#include "softextrap/polybasis.hpp"

#include <cmath>
#include <numbers>

#include "softextrap/errors.hpp"

namespace softextrap {

namespace {

// pi^(-1/4)
const double kHermiteLead = std::pow(std::numbers::pi, -0.25);

void check_degree(const BasisDescriptor& desc, int degree) {
    if (degree < 0 || degree > desc.max_degree)
        throw DomainError("basis degree " + std::to_string(degree) + " outside [0, " +
                          std::to_string(desc.max_degree) + "]");
}

// P_{k+1} = a_k xi P_k - c_k P_{k-1}
struct Recurrence {
    BasisKind kind;

    double p0() const { return kind == BasisKind::hermite_orthonormal ? kHermiteLead : 1.0; }
    double a(int k) const {
        if (kind == BasisKind::hermite_orthonormal) return std::sqrt(2.0 / (k + 1.0));
        return k == 0 ? 1.0 : 2.0;
    }
    double c(int k) const {
        if (kind == BasisKind::hermite_orthonormal) return std::sqrt(k / (k + 1.0));
        return k == 0 ? 0.0 : 1.0;
    }
};

template <typename T>
std::vector<T> recurrence_values(const BasisDescriptor& desc, T z, int up_to) {
    const Recurrence rec{desc.kind};
    const T xi = z / desc.scale;
    std::vector<T> out(static_cast<std::size_t>(up_to) + 1);
    T prev = T(0.0);
    T cur = T(rec.p0());
    out[0] = cur;
    for (int k = 0; k < up_to; ++k) {
        const T next = rec.a(k) * xi * cur - rec.c(k) * prev;
        prev = cur;
        cur = next;
        out[k + 1] = cur;
    }
    return out;
}

}  // namespace

std::string to_string(BasisKind kind) {
    return kind == BasisKind::hermite_orthonormal ? "hermite_orthonormal" : "scaled_chebyshev";
}

BasisKind basis_kind_from_string(const std::string& name) {
    if (name == "hermite_orthonormal") return BasisKind::hermite_orthonormal;
    if (name == "scaled_chebyshev") return BasisKind::scaled_chebyshev;
    throw DomainError("unknown basis kind '" + name + "'");
}

void BasisDescriptor::validate() const {
    if (max_degree < 0) throw DomainError("basis max_degree must be >= 0");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("basis scale must be positive");
}

double Weight::log_inverse(double x) const { return std::pow(std::abs(x / x_scale), alpha); }

double Weight::operator()(double x) const { return std::exp(-log_inverse(x)); }

double eval_basis(const BasisDescriptor& desc, int degree, double x) {
    check_degree(desc, degree);
    return recurrence_values<double>(desc, x, degree).back();
}

std::complex<double> eval_basis(const BasisDescriptor& desc, int degree, std::complex<double> z) {
    check_degree(desc, degree);
    return recurrence_values<std::complex<double>>(desc, z, degree).back();
}

std::vector<double> eval_basis_all(const BasisDescriptor& desc, double x, int up_to) {
    check_degree(desc, up_to);
    return recurrence_values<double>(desc, x, up_to);
}

std::vector<std::complex<double>> eval_basis_all(const BasisDescriptor& desc, std::complex<double> z, int up_to) {
    check_degree(desc, up_to);
    return recurrence_values<std::complex<double>>(desc, z, up_to);
}

std::vector<double> eval_weighted_row(const BasisDescriptor& desc, double x, const Weight& weight, int up_to) {
    check_degree(desc, up_to);
    constexpr double kBig = 1e150;
    const double kLogBig = std::log(kBig);

    const Recurrence rec{desc.kind};
    const double xi = x / desc.scale;
    double log_scale = -weight.log_inverse(x);
    double prev = 0.0;
    double cur = rec.p0();
    std::vector<double> row(static_cast<std::size_t>(up_to) + 1);
    row[0] = cur * std::exp(log_scale);
    for (int k = 0; k < up_to; ++k) {
        const double next = rec.a(k) * xi * cur - rec.c(k) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kBig) {
            cur /= kBig;
            prev /= kBig;
            log_scale += kLogBig;
        }
        row[k + 1] = cur * std::exp(log_scale);
    }
    return row;
}

}  // namespace softextrap
