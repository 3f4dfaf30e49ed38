#include "softextrap/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "softextrap/errors.hpp"
#include "softextrap/fitting.hpp"

namespace softextrap {

std::complex<double> model_function_f_tau(double tau, std::complex<double> x) {
    return (5.0 + std::cosh(tau * x - 2.0) + std::sinh(tau * x)) / 14.0;
}

double model_function_f_tau(double tau, double x) {
    return (5.0 + std::cosh(tau * x - 2.0) + std::sinh(tau * x)) / 14.0;
}

std::vector<double> ZGrid::points() const {
    if (count < 2) throw DomainError("z grid needs at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = min + (max - min) * i / (count - 1.0);
    out.back() = max;
    return out;
}

std::vector<double> NoiseModel::draw(std::size_t count, std::uint64_t stream, std::uint64_t substream) const {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(substream), hi(substream)};
    std::mt19937_64 engine(seq);
    std::vector<double> out(count);
    for (auto& phi : out) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        phi = bound * (2.0 * u - 1.0);
        if (!(std::abs(phi) <= bound)) throw std::logic_error("noise draw exceeds its bound");
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must be in (0,1)");
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (z_grid && z_grid->count < 2) throw DomainError("z grid count must be >= 2");
    if (!(oversampling >= 1.0)) throw DomainError("oversampling must be >= 1");
    if (noise_bound && !(*noise_bound >= 0.0)) throw DomainError("noise bound must be >= 0");
}

namespace {

// noisy samples g = exp(-x^2/2) f_tau(x) + phi on the grid
SampleSet noisy_samples(double tau, const std::vector<double>& grid, const std::vector<double>& noise) {
    SampleSet samples;
    samples.alpha = 2.0;
    samples.nodes = grid;
    samples.values.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid[j];
        samples.values[j] = std::exp(-0.5 * x * x) * model_function_f_tau(tau, x) + noise[j];
    }
    return samples;
}

}  // namespace

PointwiseResult run_pointwise_experiment(const ExperimentConfig& config) {
    config.validate();
    PointwiseResult result;
    result.plan = hermite_plan(config.tau, config.eps);
    const DegreePlan& plan = result.plan;

    const ZGrid zg = config.z_grid.value_or(ZGrid{0.0, 1.2 * plan.forbidden_radius(), 400});
    const auto zs = zg.points();
    const auto grid = build_grid(plan, config.oversampling);
    const NoiseModel noise{config.noise_bound.value_or(config.eps), NoiseDistribution::uniform_pm_eps, config.seed};

    std::vector<double> err_max(zs.size(), 0.0);
    std::vector<double> err_sum(zs.size(), 0.0);
    for (int trial = 0; trial < config.trials; ++trial) {
        const auto phi = noise.draw(grid.size(), static_cast<std::uint64_t>(trial));
        const FittedModel model = fit(noisy_samples(config.tau, grid, phi), plan);
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const double err = std::abs(model_function_f_tau(config.tau, zs[i]) - evaluate(model, zs[i]));
            err_max[i] = std::max(err_max[i], err);
            err_sum[i] += err;
        }
    }

    const BoundProfile profile(plan);
    const DarkObject dark(config.tau, plan);
    result.dark_check = dark.check();
    result.rows.reserve(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        PointwiseRow row;
        row.z = zs[i];
        row.err_max = err_max[i];
        row.err_mean = err_sum[i] / config.trials;
        const auto [region, bound] = profile.envelope(zs[i]);
        row.region = region;
        row.bound = bound;
        row.dark_abs = std::abs(dark(zs[i]));
        result.rows.push_back(row);
    }
    return result;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

void write_pointwise_csv(std::ostream& out, const PointwiseResult& result) {
    out << "z,err_max,err_mean,bound,dark_abs,region\n";
    for (const auto& r : result.rows) {
        out << format_number(r.z) << ',' << format_number(r.err_max) << ',' << format_number(r.err_mean) << ','
            << format_number(r.bound) << ',' << format_number(r.dark_abs) << ',' << to_string(r.region) << '\n';
    }
}

void SweepConfig::validate() const {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (!(z0 > 0.0)) throw DomainError("z0 must be positive");
    if (eps_list.empty()) throw DomainError("eps list is empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0)) throw DomainError("eps must be in (0,1)");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw DomainError("eps list must be strictly decreasing");
    }
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (!(oversampling >= 1.0)) throw DomainError("oversampling must be >= 1");
}

SweepResult run_eps_sweep(const SweepConfig& config) {
    config.validate();
    SweepResult result;
    result.thresholds = region_thresholds(config.z0, ProblemParams{2.0, config.tau, 1.0});
    for (std::size_t row_index = 0; row_index < config.eps_list.size(); ++row_index) {
        const double eps = config.eps_list[row_index];
        const DegreePlan plan = hermite_plan(config.tau, eps);
        const auto grid = build_grid(plan, config.oversampling);
        const NoiseModel noise{eps, NoiseDistribution::uniform_pm_eps, config.seed};
        const double truth = model_function_f_tau(config.tau, config.z0);

        SweepRow row;
        row.eps = eps;
        row.degree = plan.n;
        for (int trial = 0; trial < config.trials; ++trial) {
            const auto phi = noise.draw(grid.size(), static_cast<std::uint64_t>(trial), row_index);
            const FittedModel model = fit(noisy_samples(config.tau, grid, phi), plan);
            row.err_max = std::max(row.err_max, std::abs(truth - evaluate(model, config.z0)));
        }
        const BoundProfile profile(plan);
        const auto [region, bound] = profile.envelope(config.z0);
        row.region = region;
        row.bound = bound;
        row.dark_abs = std::abs(DarkObject(config.tau, plan)(config.z0));
        result.rows.push_back(row);
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    const auto e12 = result.thresholds.eps_12();
    const auto e23 = result.thresholds.eps_23();
    const std::string c12 = e12 ? format_number(*e12) : "";
    const std::string c23 = e23 ? format_number(*e23) : "";
    out << "eps,err_max,bound,dark_abs,eps_12,eps_23\n";
    for (const auto& r : result.rows) {
        out << format_number(r.eps) << ',' << format_number(r.err_max) << ',' << format_number(r.bound) << ','
            << format_number(r.dark_abs) << ',' << c12 << ',' << c23 << '\n';
    }
}

std::vector<double> log_spaced_eps(double eps_max, double eps_min, int per_decade) {
    if (!(eps_max < 1.0 && eps_min > 0.0 && eps_min < eps_max)) throw DomainError("need 0 < eps_min < eps_max < 1");
    if (per_decade < 1) throw DomainError("per_decade must be >= 1");
    const double top = std::log10(eps_max);
    const double bottom = std::log10(eps_min);
    const int steps = static_cast<int>(std::round((top - bottom) * per_decade));
    std::vector<double> out;
    for (int i = 0; i <= steps; ++i) out.push_back(std::pow(10.0, top - static_cast<double>(i) / per_decade));
    return out;
}

}  // namespace softextrap
