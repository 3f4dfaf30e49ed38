#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "softextrap/errors.hpp"
#include "softextrap/potential.hpp"
#include "softextrap/scalars.hpp"

using namespace softextrap;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

// v_alpha(t) after y = sqrt(t^2 + s^2): (alpha/pi) int_0^sqrt(1-t^2) (t^2+s^2)^((alpha-2)/2) ds
double density_oracle(double alpha, double t) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double top = std::sqrt(1.0 - t * t);
    if (top == 0.0) return 0.0;
    const double v = integrator.integrate(
        [&](double s) { return std::pow(t * t + s * s, 0.5 * (alpha - 2.0)); }, 0.0, top);
    return alpha / M_PI * v;
}

double v3_closed(double t) {
    const double a = std::abs(t);
    const double r = std::sqrt(1.0 - t * t);
    if (a == 0.0) return 3.0 / M_PI * 0.5;
    return 3.0 / M_PI * (0.5 * r + 0.5 * t * t * std::log((1.0 + r) / a));
}

// midpoint rule with 10^6 panels on int log|z - t| v_3(t) dt
double u3_brute_force(cd z) {
    const int panels = 1000000;
    const double h = 2.0 / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double t = -1.0 + (i + 0.5) * h;
        sum += std::log(std::abs(z - t)) * v3_closed(t);
    }
    return sum * h;
}

std::vector<cd> annulus_points() {
    std::vector<cd> pts;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double r = 1.05 * std::pow(20.0 / 1.05, i / 9.0);
            const double th = 2.0 * M_PI * (j + 0.37) / 10.0;
            pts.push_back(std::polar(r, th));
        }
    return pts;
}

}  // namespace

TEST_CASE("alpha=2 density is the unit-mass semicircle") {
    for (double t : {-0.9, -0.3, 0.0, 0.25, 0.7, 0.999})
        CHECK(ullman_density(2.0, t) == Approx(2.0 / M_PI * std::sqrt(1.0 - t * t)).epsilon(1e-12));
    CHECK(ullman_density(2.0, 1.0) == Approx(0.0).scale(1.0));
    CHECK(ullman_density(2.0, -1.0) == Approx(0.0).scale(1.0));
}

TEST_CASE("density against independent quadrature and frozen values") {
    CHECK(ullman_density(4.0, 0.3) == Approx(0.4777399583767404).epsilon(1e-12));
    CHECK(ullman_density(2.5, 0.3) == Approx(0.5721732450920898).epsilon(1e-12));
    CHECK(ullman_density(3.0, 0.3) == Approx(0.535993911541177).epsilon(1e-12));
    for (double alpha : {2.0, 2.5, 3.0, 4.0, 6.0})
        for (double t : {0.0, 0.05, 0.3, 0.6, 0.95}) {
            CHECK(ullman_density(alpha, t) == Approx(density_oracle(alpha, t)).epsilon(1e-11));
            CHECK(ullman_density(alpha, -t) == ullman_density(alpha, t));
        }
    for (double t : {0.0, 0.1, 0.5, 0.9}) CHECK(ullman_density(3.0, t) == Approx(v3_closed(t)).epsilon(1e-12));
}

TEST_CASE("density domain") {
    CHECK_THROWS_AS(ullman_density(3.0, 1.01), DomainError);
    CHECK(ullman_density(3.0, 0.6) >= 0.0);
}

TEST_CASE("density has unit mass") {
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (double alpha : {2.0, 2.5, 3.0, 4.0}) {
        PotentialEvaluator ev(alpha);
        const double mass = integrator.integrate([&](double t) { return ev.density(t); }, -1.0, 1.0);
        CHECK(mass == Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("potential at Frostman values") {
    const double f2 = std::log(0.5) - 0.5;
    CHECK(log_potential(2.0, 0.0) == Approx(f2).epsilon(1e-10));
    CHECK(log_potential(2.0, 1.0) == Approx(1.0 + f2).epsilon(1e-10));
}

TEST_CASE("potential off the interval against brute force") {
    const double u = log_potential(3.0, cd(2.0, 1.0));
    CHECK(u == Approx(0.7873114545033296).epsilon(1e-10));
    CHECK(u == Approx(u3_brute_force(cd(2.0, 1.0))).epsilon(1e-8));
    CHECK(log_potential(3.0, cd(0.3, 0.05)) == Approx(u3_brute_force(cd(0.3, 0.05))).epsilon(1e-6));
}

TEST_CASE("Frostman identity on [-1,1]") {
    for (double alpha : {2.0, 3.0, 4.0}) {
        const PotentialEvaluator ev(alpha);
        const double b = beta_alpha(alpha);
        const double f = robin_constant(alpha);
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = -1.0 + i / 100.0;
            worst = std::max(worst, std::abs(ev.log_potential(x) - std::pow(std::abs(b * x), alpha) - f));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("potential is strictly below the Frostman value off the interval") {
    for (double alpha : {2.0, 3.0, 4.0}) {
        const PotentialEvaluator ev(alpha);
        const double b = beta_alpha(alpha);
        for (double x : {-5.0, -2.0, -1.1, 1.1, 2.0, 5.0})
            CHECK(ev.log_potential(x) < std::pow(std::abs(b * x), alpha) + robin_constant(alpha));
    }
}

TEST_CASE("delta values") {
    CHECK(delta(2.0, 0.5) == Approx(0.25).epsilon(1e-14));
    for (double alpha : {2.0, 2.5, 3.0, 4.0}) CHECK(delta(alpha, 0.0) == 0.0);
    const double s = std::sqrt(8.0);
    CHECK(delta_alpha2(3.0) == Approx(std::log(3.0 + s) + 9.0 - 3.0 * s).epsilon(1e-14));
    CHECK(delta(2.0, 3.0) == Approx(delta_alpha2(3.0)).epsilon(1e-8));
}

TEST_CASE("alpha=2 closed form agrees with quadrature on an annulus") {
    const PotentialEvaluator ev(2.0);
    double worst = 0.0;
    for (const cd& z : annulus_points()) worst = std::max(worst, std::abs(ev.delta(z) - delta_alpha2(z)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("closed form uses the branch with sqrt(z^2-1)/z -> 1") {
    for (double th : {0.1, 1.0, 2.0, 3.0, 4.5, 6.0}) {
        const cd z = std::polar(1e4, th);
        CHECK(delta_alpha2(z) == Approx(std::log(2e4) + 0.5).epsilon(1e-8));
    }
}

TEST_CASE("delta is symmetric") {
    for (double alpha : {2.0, 3.0, 4.0}) {
        const PotentialEvaluator ev(alpha);
        for (cd z : {cd(1.3, 0.4), cd(0.2, 2.0), cd(5.0, -0.1), cd(0.7, 0.01)}) {
            const double d = ev.delta(z);
            CHECK(std::abs(ev.delta(-z) - d) <= 1e-12);
            CHECK(std::abs(ev.delta(std::conj(z)) - d) <= 1e-12);
        }
    }
}

TEST_CASE("gamma_exponent") {
    const DegreePlan plan = degree_plan({2.0, 0.3, 1.0}, 1e-6);
    CHECK(gamma_exponent(plan, 0.0) == 1.0);
    for (double x : {-1.0, -0.4, 0.3, 0.9}) CHECK(gamma_exponent(plan, x) == Approx(1.0 - x * x / plan.q).epsilon(1e-13));
    double prev = 1.0;
    for (double r = 0.2; r < 6.0; r += 0.2) {
        const double g = gamma_exponent(plan, std::polar(r, 0.7));
        CHECK(g < prev);
        prev = g;
    }
    const PotentialEvaluator ev(3.0);
    const DegreePlan plan3 = degree_plan({3.0, 0.5, 1.0}, 1e-6);
    CHECK(gamma_exponent(plan3, cd(1.5, 0.5), ev) == Approx(1.0 - ev.delta(cd(1.5, 0.5)) / plan3.q));
}

TEST_CASE("gamma at the extrapolation radius decreases toward zero") {
    double prev = 1.0;
    for (double eps : {1e-6, 1e-9, 1e-12}) {
        const DegreePlan plan = degree_plan({2.0, 0.3, 1.0}, eps);
        const double g = gamma_exponent(plan, plan.r_n / plan.a_n);
        CHECK(std::abs(g) < prev);
        prev = std::abs(g);
    }
}
