#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "softextrap/bounds.hpp"
#include "softextrap/scalars.hpp"

namespace softextrap {

/// (1/14) (5 + cosh(tau x - 2) + sinh(tau x)); in the unit ball of type tau, order 1.
std::complex<double> model_function_f_tau(double tau, std::complex<double> x);
double model_function_f_tau(double tau, double x);

/// Equispaced real grid [min, max] with count >= 2 points.
struct ZGrid {
    double min = 0.0;
    double max = 1.0;
    int count = 2;

    std::vector<double> points() const;
};

enum class NoiseDistribution { uniform_pm_eps };

/// Bounded i.i.d. perturbations.
///
/// Each stream is an std::mt19937_64 seeded through std::seed_seq from
/// (seed, stream, substream); both algorithms are fixed by the C++ standard.
/// Uniform variates use the top 53 bits, u = (x >> 11) * 2^-53, and
/// phi = bound * (2u - 1), so |phi| <= bound.
struct NoiseModel {
    double bound = 0.0;
    NoiseDistribution distribution = NoiseDistribution::uniform_pm_eps;
    std::uint64_t seed = 0;

    std::vector<double> draw(std::size_t count, std::uint64_t stream, std::uint64_t substream = 0) const;
};

struct ExperimentConfig {
    double tau = 0.3;
    double eps = 1e-5;
    int trials = 50;
    std::uint64_t seed = 7;
    /// Defaults to 400 points on [0, 1.2 r_n].
    std::optional<ZGrid> z_grid;
    std::string output_path;
    double oversampling = 2.0;
    /// Noise level; defaults to eps.  Zero gives noiseless data with eps used only for planning.
    std::optional<double> noise_bound;

    void validate() const;
};

struct PointwiseRow {
    double z = 0.0;
    double err_max = 0.0;
    double err_mean = 0.0;
    double bound = 0.0;
    double dark_abs = 0.0;
    Region region = Region::approximation;
};

struct PointwiseResult {
    DegreePlan plan;
    CoefficientCheck dark_check;
    std::vector<PointwiseRow> rows;
};

/// Per-z max and mean of |f_tau - S_n(g)| over noise realizations, next to
/// the envelope and the dark-object magnitude.  Hermite pipeline.
PointwiseResult run_pointwise_experiment(const ExperimentConfig& config);

/// Header: z,err_max,err_mean,bound,dark_abs,region
void write_pointwise_csv(std::ostream& out, const PointwiseResult& result);

struct SweepConfig {
    double tau = 0.15;
    double z0 = 4.0;
    /// Strictly decreasing perturbation levels in (0, 1).
    std::vector<double> eps_list;
    int trials = 20;
    std::uint64_t seed = 7;
    double oversampling = 2.0;
    std::string output_path;

    void validate() const;
};

struct SweepRow {
    double eps = 0.0;
    int degree = 0;
    double err_max = 0.0;
    double bound = 0.0;
    double dark_abs = 0.0;
    Region region = Region::approximation;
};

struct SweepResult {
    RegionThresholds thresholds;
    std::vector<SweepRow> rows;
};

/// Error at a fixed z0 as eps varies, with the region thresholds for z0.
SweepResult run_eps_sweep(const SweepConfig& config);

/// Header: eps,err_max,bound,dark_abs,eps_12,eps_23 (threshold cells empty when out of range)
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Log-spaced decreasing list from eps_max down to eps_min, per_decade points per decade.
std::vector<double> log_spaced_eps(double eps_max, double eps_min, int per_decade);

/// Scientific notation with 17 significant digits.
std::string format_number(double value);

}  // namespace softextrap
