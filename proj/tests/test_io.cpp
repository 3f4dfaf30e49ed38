#include <cmath>
#include <sstream>

#include "doctest.h"
#include "softextrap/errors.hpp"
#include "softextrap/io.hpp"

using namespace softextrap;
using doctest::Approx;

TEST_CASE("sample CSV is read by column name and sorted") {
    std::istringstream in("g,extra,x\n0.5,a,-1\n0.25,b,2\n0.125,c,0.5\n\n");
    const SampleSet s = read_samples_csv(in, 2.0);
    CHECK(s.nodes == std::vector<double>{2.0, 0.5, -1.0});
    CHECK(s.values == std::vector<double>{0.25, 0.125, 0.5});
    CHECK(s.alpha == 2.0);
}

TEST_CASE("sample CSV errors") {
    std::istringstream no_header("1,2\n3,4\n");
    CHECK_THROWS_AS(read_samples_csv(no_header, 2.0), DomainError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_samples_csv(empty, 2.0), DomainError);
    std::istringstream bad("x,g\n1,abc\n2,3\n");
    CHECK_THROWS_AS(read_samples_csv(bad, 2.0), DomainError);
    std::istringstream dup("x,g\n1,0\n1,0\n");
    CHECK_THROWS_AS(read_samples_csv(dup, 2.0), DomainError);
}

TEST_CASE("sample CSV round trip") {
    const SampleSet s{{1.0 / 3.0, -0.1}, {M_PI, -1e-300}, 2.0};
    std::ostringstream out;
    write_samples_csv(out, s);
    std::istringstream in(out.str());
    const SampleSet back = read_samples_csv(in, 2.0);
    CHECK(back.nodes == s.nodes);
    CHECK(back.values == s.values);
}

TEST_CASE("model JSON round trip") {
    const DegreePlan plan = hermite_plan(0.3, 1e-5);
    const FittedModel m{BasisDescriptor{BasisKind::hermite_orthonormal, 1.0, plan.n}, {1.0, -0.5, 0.25, 1e-17, 3.0, 0.1}, plan};
    GridReport report;
    report.extent_ok = true;
    const std::string text = model_to_json(m, &report);
    CHECK(text.find("\"hermite_orthonormal\"") != std::string::npos);
    CHECK(text.find("\"grid\"") != std::string::npos);
    const FittedModel back = model_from_json(text);
    CHECK(back.coefficients == m.coefficients);
    CHECK(back.plan.n == plan.n);
    CHECK(back.plan.q == plan.q);
    CHECK(back.plan.pipeline == Pipeline::hermite);
    CHECK(evaluate(back, std::complex<double>(3.0, 1.0)) == evaluate(m, std::complex<double>(3.0, 1.0)));
    CHECK(plan_from_json(plan_to_json(plan)).a_n == plan.a_n);
}

TEST_CASE("malformed model JSON") {
    CHECK_THROWS_AS(model_from_json("{"), DomainError);
    CHECK_THROWS_AS(model_from_json("{\"basis\": {}}"), DomainError);
    CHECK_THROWS_AS(plan_from_json("[]"), DomainError);
}
