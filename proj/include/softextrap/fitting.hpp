#pragma once

#include <complex>
#include <vector>

#include "softextrap/polybasis.hpp"
#include "softextrap/scalars.hpp"

namespace softextrap {

/// Observed windowed values g(x_j) on strictly decreasing nodes x_1 > ... > x_M.
struct SampleSet {
    std::vector<double> nodes;
    std::vector<double> values;
    double alpha = 2.0;

    /// Throws DomainError unless M >= 2, nodes strictly decrease and values are finite.
    void validate() const;

    /// Sorts (x, g) pairs into decreasing x; duplicates are rejected by validate().
    static SampleSet from_unsorted(std::vector<double> x, std::vector<double> g, double alpha);
};

/// Degree-n extrapolant sum_k c_k P_k(z).
struct FittedModel {
    BasisDescriptor basis;
    std::vector<double> coefficients;
    DegreePlan plan;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Outcome of checking a grid against the extent and density conditions.
struct GridReport {
    bool extent_ok = false;
    bool density_ok = false;
    double max_gap = 0.0;
    double required_gap = 0.0;
    /// Extent bounds [(4/3) a_n, 2 a_n] the outermost nodes must fall between.
    double inner_extent = 0.0;
    double outer_extent = 0.0;
    /// Endpoints of Delta_n(2, alpha, 1/8).
    double delta_window_lo = 0.0;
    double delta_window_hi = 0.0;

    bool ok() const { return extent_ok && density_ok; }
};

/// Density constant c_1 used when the caller does not supply one.
inline constexpr double kDefaultDensityConstant = 3.0;

struct FitOptions {
    double density_constant = kDefaultDensityConstant;
    /// Fit even when validate_grid reports a failure.
    bool allow_invalid_grid = false;
};

/// Equispaced decreasing grid of ceil(oversampling * n) nodes on
/// [-(4/3) a_n, (4/3) a_n] (generic) or [-sqrt(2n), sqrt(2n)] (Hermite).
std::vector<double> build_grid(const DegreePlan& plan, double oversampling = 2.0);

/// Checks [-(4/3)a_n, (4/3)a_n] within [x_M, x_1] within [-2a_n, 2a_n] and
/// max gap <= density_constant * n^(1/alpha - 1).
///
/// Nodes are compared in sample coordinates against the plan's a_n; for the
/// Hermite pipeline that is sqrt(n), so the sqrt(2n) grid sits inside the
/// extent band.
GridReport validate_grid(const std::vector<double>& nodes, const DegreePlan& plan,
                         double density_constant = kDefaultDensityConstant);

/// Lower bound for A(alpha, eta) in the Delta_n window.
double delta_window_constant(double alpha, double eta);

/// Basis used to fit a plan: orthonormal Hermite (Hermite pipeline) or
/// Chebyshev in x / (2 a_n) (generic pipeline).
BasisDescriptor fitting_basis(const DegreePlan& plan);

/// Window of the plan in sample coordinates.
Weight fitting_weight(const DegreePlan& plan);

/// Minimizes sum_{j<M} (g_j - w(x_j) P(x_j))^2 (x_j - x_{j+1}) over degree-n
/// polynomials P via a column-pivoted Householder QR of the scaled design
/// matrix.  The last node only closes the final spacing.
FittedModel fit(const SampleSet& samples, const DegreePlan& plan, const FitOptions& options = {});

/// Value of the discrete functional minimized by fit() at the given coefficients.
double weighted_residual(const SampleSet& samples, const FittedModel& model);

std::complex<double> evaluate(const FittedModel& model, std::complex<double> z);
double evaluate(const FittedModel& model, double x);

struct ExtrapolationOptions {
    Pipeline pipeline = Pipeline::generic;
    FitOptions fit;
};

struct ExtrapolationResult {
    FittedModel model;
    DegreePlan plan;
    GridReport report;
};

/// degree_plan -> validate_grid -> fit.  For the Hermite pipeline params must
/// be (alpha = 2, tau, lambda = 1) with tau the type in sample coordinates.
ExtrapolationResult extrapolate(const SampleSet& samples, const ProblemParams& params, double eps,
                                const ExtrapolationOptions& options = {});

}  // namespace softextrap
