#include "softextrap/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "softextrap/errors.hpp"

namespace softextrap {

void SampleSet::validate() const {
    if (nodes.size() != values.size()) throw DomainError("sample nodes and values differ in length");
    if (nodes.size() < 2) throw DomainError("at least 2 samples are required");
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!std::isfinite(nodes[j]) || !std::isfinite(values[j]))
            throw DomainError("sample " + std::to_string(j) + " is not finite");
        if (j > 0 && !(nodes[j] < nodes[j - 1]))
            throw DomainError("sample nodes must be strictly decreasing (violated at index " +
                              std::to_string(j) + ")");
    }
}

SampleSet SampleSet::from_unsorted(std::vector<double> x, std::vector<double> g, double alpha) {
    if (x.size() != g.size()) throw DomainError("sample nodes and values differ in length");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    SampleSet out;
    out.alpha = alpha;
    out.nodes.reserve(x.size());
    out.values.reserve(x.size());
    for (auto i : order) {
        out.nodes.push_back(x[i]);
        out.values.push_back(g[i]);
    }
    out.validate();
    return out;
}

std::vector<double> build_grid(const DegreePlan& plan, double oversampling) {
    if (!(oversampling >= 1.0)) throw DomainError("oversampling must be >= 1");
    const auto count = static_cast<long>(std::ceil(oversampling * plan.n));
    if (count < 2) throw DomainError("grid needs at least 2 nodes");
    const double half = plan.pipeline == Pipeline::hermite ? plan.window_edge() : 4.0 / 3.0 * plan.a_n;
    std::vector<double> nodes(static_cast<std::size_t>(count));
    const double step = 2.0 * half / static_cast<double>(count - 1);
    for (long j = 0; j < count; ++j) nodes[static_cast<std::size_t>(j)] = half - step * static_cast<double>(j);
    nodes.front() = half;
    nodes.back() = -half;
    return nodes;
}

double delta_window_constant(double alpha, double eta) {
    const double lead = 2.0 / 3.0 * alpha * std::min(std::pow(2.0, alpha - 2.0), 1.0 / (alpha - 1.0));
    const double s3 = 2.0 - std::sqrt(3.0);
    const double inner = (std::log(2.0 / (s3 * s3)) + std::log(1.0 / eta)) / lead;
    return std::pow(inner, 2.0 / 3.0);
}

GridReport validate_grid(const std::vector<double>& nodes, const DegreePlan& plan, double density_constant) {
    GridReport report;
    const double a = plan.a_n;
    const double n = plan.n;
    report.inner_extent = 4.0 / 3.0 * a;
    report.outer_extent = 2.0 * a;
    const double p = 2.0;
    const double half_delta = a * (1.0 + delta_window_constant(plan.params.alpha, 1.0 / 8.0) / std::pow(p * n, 2.0 / 3.0));
    report.delta_window_lo = -half_delta;
    report.delta_window_hi = half_delta;
    report.required_gap = density_constant * std::pow(n, 1.0 / plan.params.alpha - 1.0);
    if (nodes.size() < 2) return report;

    // relative slack so that a grid built exactly on +-(4/3)a_n passes
    const double slack = 1e-12 * a;
    const double top = nodes.front();
    const double bottom = nodes.back();
    report.extent_ok = top >= report.inner_extent - slack && bottom <= -report.inner_extent + slack &&
                       top <= report.outer_extent + slack && bottom >= -report.outer_extent - slack;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
        report.max_gap = std::max(report.max_gap, std::abs(nodes[j] - nodes[j + 1]));
    report.density_ok = report.max_gap <= report.required_gap;
    return report;
}

BasisDescriptor fitting_basis(const DegreePlan& plan) {
    BasisDescriptor basis;
    basis.max_degree = plan.n;
    if (plan.pipeline == Pipeline::hermite) {
        basis.kind = BasisKind::hermite_orthonormal;
        basis.scale = 1.0;
    } else {
        basis.kind = BasisKind::scaled_chebyshev;
        basis.scale = 2.0 * plan.window_edge();
    }
    return basis;
}

Weight fitting_weight(const DegreePlan& plan) { return Weight{plan.params.alpha, plan.x_scale()}; }

namespace {

std::string describe(const GridReport& r) {
    std::ostringstream os;
    os << "sampling grid fails";
    if (!r.extent_ok) os << " extent condition (outer nodes must lie within [" << r.inner_extent << ", "
                         << r.outer_extent << "] in magnitude)";
    if (!r.density_ok) os << (r.extent_ok ? "" : " and") << " density condition (max gap " << r.max_gap
                          << " > " << r.required_gap << ")";
    return os.str();
}

}  // namespace

FittedModel fit(const SampleSet& samples, const DegreePlan& plan, const FitOptions& options) {
    samples.validate();
    if (plan.n < 0) throw DomainError("plan degree must be >= 0");
    if (samples.alpha != plan.params.alpha)
        throw DomainError("sample window exponent does not match the problem's alpha");
    const auto rows = static_cast<Eigen::Index>(samples.nodes.size()) - 1;
    const auto cols = static_cast<Eigen::Index>(plan.n) + 1;
    if (rows < cols) {
        throw FitError("underdetermined least-squares problem: " + std::to_string(rows) +
                       " residual terms for " + std::to_string(cols) + " coefficients (degree " +
                       std::to_string(plan.n) + ")");
    }
    if (!options.allow_invalid_grid) {
        const GridReport report = validate_grid(samples.nodes, plan, options.density_constant);
        if (!report.ok()) throw GridError(describe(report));
    }

    FittedModel model;
    model.basis = fitting_basis(plan);
    model.plan = plan;
    const Weight weight = fitting_weight(plan);

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index j = 0; j < rows; ++j) {
        const double x = samples.nodes[static_cast<std::size_t>(j)];
        const double root_gap = std::sqrt(x - samples.nodes[static_cast<std::size_t>(j) + 1]);
        const auto row = eval_weighted_row(model.basis, x, weight, plan.n);
        for (Eigen::Index k = 0; k < cols; ++k) design(j, k) = root_gap * row[static_cast<std::size_t>(k)];
        rhs[j] = root_gap * samples.values[static_cast<std::size_t>(j)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < cols) {
        throw FitError("rank-deficient design matrix at degree " + std::to_string(plan.n) + ": numerical rank " +
                       std::to_string(qr.rank()) + " < " + std::to_string(cols));
    }
    const Eigen::VectorXd coeffs = qr.solve(rhs);
    model.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
    for (double c : model.coefficients)
        if (!std::isfinite(c)) throw FitError("non-finite coefficient at degree " + std::to_string(plan.n));
    return model;
}

double weighted_residual(const SampleSet& samples, const FittedModel& model) {
    const Weight weight = fitting_weight(model.plan);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < samples.nodes.size(); ++j) {
        const double x = samples.nodes[j];
        const auto row = eval_weighted_row(model.basis, x, weight, model.degree());
        double wp = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) wp += model.coefficients[k] * row[k];
        const double r = samples.values[j] - wp;
        total += r * r * (x - samples.nodes[j + 1]);
    }
    return total;
}

std::complex<double> evaluate(const FittedModel& model, std::complex<double> z) {
    if (model.coefficients.empty()) return 0.0;
    BasisDescriptor basis = model.basis;
    basis.max_degree = std::max(basis.max_degree, model.degree());
    const auto values = eval_basis_all(basis, z, model.degree());
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) sum += model.coefficients[k] * values[k];
    return sum;
}

double evaluate(const FittedModel& model, double x) {
    if (model.coefficients.empty()) return 0.0;
    BasisDescriptor basis = model.basis;
    basis.max_degree = std::max(basis.max_degree, model.degree());
    const auto values = eval_basis_all(basis, x, model.degree());
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) sum += model.coefficients[k] * values[k];
    return sum;
}

ExtrapolationResult extrapolate(const SampleSet& samples, const ProblemParams& params, double eps,
                                const ExtrapolationOptions& options) {
    samples.validate();
    ExtrapolationResult result;
    if (options.pipeline == Pipeline::hermite) {
        if (params.alpha != 2.0 || params.lambda != 1.0)
            throw DomainError("the Hermite pipeline requires alpha = 2 and lambda = 1");
        result.plan = hermite_plan(params.tau, eps);
    } else {
        result.plan = degree_plan(params, eps);
    }
    if (samples.alpha != result.plan.params.alpha)
        throw DomainError("sample window exponent does not match the problem's alpha");
    result.report = validate_grid(samples.nodes, result.plan, options.fit.density_constant);
    if (!result.report.ok() && !options.fit.allow_invalid_grid) throw GridError(describe(result.report));
    FitOptions fit_options = options.fit;
    fit_options.allow_invalid_grid = true;  // already checked above
    result.model = fit(samples, result.plan, fit_options);
    return result;
}

}  // namespace softextrap
