#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "softextrap/errors.hpp"
#include "softextrap/scalars.hpp"

using namespace softextrap;
using doctest::Approx;

namespace {

using mp = boost::multiprecision::cpp_bin_float_50;

double beta_oracle(double alpha) {
    const mp a(alpha);
    const mp inner = pow(mp(2), a - 2) * pow(tgamma(a / 2), 2) / tgamma(a);
    return static_cast<double>(pow(inner, 1 / a));
}

int brute_force_degree(const ProblemParams& p, double eps, int limit = 500) {
    int best = 0;
    for (int k = 1; k <= limit; ++k)
        if (log_rate(p, k) >= std::log(eps)) best = k;
    return best;
}

}  // namespace

TEST_CASE("lambert_w at trivial points") {
    CHECK(lambert_w(0.0) == 0.0);
    CHECK(lambert_w(std::exp(1.0)) == Approx(1.0).epsilon(1e-15));
    const double w = lambert_w(188.24);
    CHECK(std::abs(w * std::exp(w) - 188.24) <= 1e-10 * 188.24);
    CHECK(w == Approx(3.881496873136939).epsilon(1e-14));
}

TEST_CASE("lambert_w matches boost lambert_w0 on a log grid") {
    for (int i = 0; i <= 400; ++i) {
        const double x = std::pow(10.0, -8.0 + 0.05 * i);
        const double w = lambert_w(x);
        CHECK(w == Approx(boost::math::lambert_w0(x)).epsilon(1e-13));
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
    }
}

TEST_CASE("lambert_w is monotone and rejects negative input") {
    double prev = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = std::pow(10.0, -6.0 + 0.009 * i);
        const double w = lambert_w(x);
        CHECK(w > prev);
        prev = w;
    }
    CHECK_THROWS_AS(lambert_w(-1e-3), DomainError);
    CHECK_THROWS_AS(lambert_w(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("beta_alpha") {
    CHECK(beta_alpha(2.0) == Approx(1.0).epsilon(1e-15));
    CHECK(beta_alpha(2.0) * std::sqrt(4.0) == Approx(2.0).epsilon(1e-15));
    CHECK(beta_alpha(4.0) == Approx(0.9036020036098448).epsilon(1e-14));
    CHECK(beta_alpha(3.0) == Approx(0.9226350743220142).epsilon(1e-14));
    CHECK(beta_alpha(2.5) == Approx(0.9475636370052854).epsilon(1e-14));
    for (double a : {2.0, 2.5, 3.0, 4.0, 7.5, 12.0, 40.0}) CHECK(beta_alpha(a) == Approx(beta_oracle(a)).epsilon(1e-13));
}

TEST_CASE("robin_constant") {
    CHECK(robin_constant(2.0) == Approx(std::log(0.5) - 0.5).epsilon(1e-15));
    CHECK(robin_constant(1.0) == Approx(std::log(0.5) - 1.0).epsilon(1e-15));
    CHECK(robin_constant(1e12) == Approx(std::log(0.5)).epsilon(1e-11));
}

TEST_CASE("rho and mu") {
    const double e = std::exp(1.0);
    for (double tau : {0.15, 0.3, 1.0}) {
        const double tp = tau * std::sqrt(2.0);
        CHECK(rho({2.0, tp, 1.0}) == Approx(tp * std::sqrt(e) / 2.0).epsilon(1e-14));
        CHECK(mu({2.0, tp, 1.0}) == Approx(0.5));
    }
    CHECK(rho({2.0, 1.0, 1.0}) == Approx(std::sqrt(e) / 2.0).epsilon(1e-15));
    CHECK(rho({4.0, 0.5, 2.0}) == Approx(0.5801239696025045).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW((ProblemParams{2.0, 0.3, 1.0}.validate()));
    CHECK_THROWS_AS((ProblemParams{1.5, 0.3, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((ProblemParams{2.0, 0.3, 0.5}.validate()), DomainError);
    CHECK_THROWS_AS((ProblemParams{2.0, 0.3, 2.0}.validate()), DomainError);
    CHECK_THROWS_AS((ProblemParams{2.0, 0.0, 1.0}.validate()), DomainError);
}

TEST_CASE("q reduces to the alpha=2 closed form") {
    // tau is the type in sample coordinates; the normalized problem has type tau*sqrt(2)
    const double e = std::exp(1.0);
    for (double tau : {0.15, 0.3, 2.0})
        for (double eps : {1e-3, 1e-7, 1e-12}) {
            const double L = std::log(1.0 / eps);
            const double expected = 0.5 * boost::math::lambert_w0(4.0 / (tau * tau * e) * L);
            CHECK(q_of_eps({2.0, tau * std::sqrt(2.0), 1.0}, eps) == Approx(expected).epsilon(1e-13));
            CHECK(hermite_plan(tau, eps).q == Approx(expected).epsilon(1e-13));
        }
}

TEST_CASE("hermite plan for tau=0.3, eps=1e-5") {
    const DegreePlan plan = hermite_plan(0.3, 1e-5);
    CHECK(plan.pipeline == Pipeline::hermite);
    CHECK(plan.params.tau == Approx(0.3 * std::sqrt(2.0)));
    CHECK(plan.q == Approx(0.5 * boost::math::lambert_w0(4.0 / (0.09 * std::exp(1.0)) * std::log(1e5))).epsilon(1e-13));
    CHECK(plan.q == Approx(0.5 * 3.881496873136939).epsilon(1e-4));
    CHECK(plan.n == 5);
    CHECK(plan.window_edge() == Approx(std::sqrt(10.0)));
    CHECK(plan.forbidden_radius() == Approx(5.0 / 0.3));
}

TEST_CASE("degree_plan fields") {
    const ProblemParams p{4.0, 0.5, 2.0};
    const DegreePlan plan = degree_plan(p, 1e-8);
    CHECK(plan.n >= 1);
    CHECK(plan.q > 0.0);
    CHECK(plan.mu == Approx(0.25));
    CHECK(plan.a_n == Approx(beta_alpha(4.0) * std::pow(plan.n, 0.25)));
    CHECK(plan.r_n == Approx(std::sqrt(plan.n / (0.5 * 2.0))));
    CHECK(plan.robin == Approx(robin_constant(4.0)));
    CHECK(plan.rho == Approx(rho(p)));
}

TEST_CASE("degree_plan matches brute force on a parameter grid") {
    for (auto [alpha, lambda] : std::vector<std::pair<double, double>>{{2, 1}, {3, 1}, {4, 2}, {2.5, 1.5}})
        for (double tau : {0.15, 0.5, 2.0})
            for (int k = 3; k <= 12; ++k) {
                const ProblemParams p{alpha, tau, lambda};
                const double eps = std::pow(10.0, -k);
                const int brute = brute_force_degree(p, eps);
                if (brute < 1) {
                    CHECK_THROWS_AS(degree_plan(p, eps), NoExtrapolationError);
                    continue;
                }
                const DegreePlan plan = degree_plan(p, eps);
                CHECK(plan.n == brute);
                CHECK(log_rate(p, plan.n) >= std::log(eps));
                CHECK(log_rate(p, plan.n + 1) < std::log(eps));
            }
}

TEST_CASE("degree_plan at an exact rate value returns that degree") {
    const ProblemParams p{2.0, 0.3, 1.0};
    for (int n : {2, 5, 17, 60}) {
        const double eps = std::exp(log_rate(p, n));
        CHECK(degree_plan(p, eps).n == n);
    }
}

TEST_CASE("q is bracketed by loglog(1/eps) for small eps") {
    // The bracket only holds below a parameter dependent eps0; locate the
    // last violation on a dense log(1/eps) grid and check below it.
    for (auto [alpha, lambda] : std::vector<std::pair<double, double>>{{2, 1}, {3, 1}, {4, 2}})
        for (double tau : {0.15, 0.5, 2.0}) {
            const ProblemParams p{alpha, tau, lambda};
            const double m = mu(p);
            auto holds = [&](double L) {
                const double ll = std::log(L);
                const double q = q_of_eps(p, std::exp(-L));
                return L > std::exp(1.0) && q >= 0.5 * m * ll && q <= 2.0 * m * ll;
            };
            double last_bad = 1.0;
            for (int i = 0; i <= 2800; ++i) {
                const double L = std::pow(10.0, i / 1000.0);
                if (!holds(L)) last_bad = L;
            }
            INFO("alpha=" << alpha << " tau=" << tau << " lambda=" << lambda);
            REQUIRE(last_bad < 100.0);
            const double eps0 = std::min(1e-8, std::exp(-last_bad * 1.01));
            for (double eps : {1e-8, 1e-12, 1e-20, 1e-50, 1e-100, 1e-200, 1e-300}) {
                if (eps > eps0) continue;
                const double ll = std::log(std::log(1.0 / eps));
                const double q = q_of_eps(p, eps);
                CHECK(q >= 0.5 * m * ll);
                CHECK(q <= 2.0 * m * ll);
            }
        }
}

TEST_CASE("degree_plan errors") {
    const ProblemParams p{2.0, 0.3, 1.0};
    CHECK_THROWS_WITH_AS(degree_plan(p, 2.0), "eps must be in (0,1)", DomainError);
    CHECK_THROWS_AS(degree_plan(p, 1.0), DomainError);
    CHECK_THROWS_AS(degree_plan(p, 0.0), DomainError);
    CHECK_THROWS_AS(degree_plan({2.0, 0.15, 1.0}, 0.5), NoExtrapolationError);
    CHECK_THROWS_AS(degree_plan({1.0, 0.3, 1.0}, 1e-5), DomainError);
}

TEST_CASE("scalar functions are deterministic") {
    const ProblemParams p{3.0, 0.7, 1.5};
    CHECK(beta_alpha(3.0) == beta_alpha(3.0));
    CHECK(robin_constant(3.0) == robin_constant(3.0));
    CHECK(rho(p) == rho(p));
    CHECK(q_of_eps(p, 1e-9) == q_of_eps(p, 1e-9));
}
