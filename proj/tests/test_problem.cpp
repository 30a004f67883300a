#include <doctest.h>

#include <cmath>

#include "svie/problem.hpp"

using svie::SvieProblem;

namespace {

const svie::AssumptionCheck& find_check(const svie::ValidationReport& report,
                                        const std::string& name) {
    for (const auto& check : report.checks) {
        if (check.name == name) return check;
    }
    throw std::logic_error("no such check: " + name);
}

} // namespace

TEST_SUITE_BEGIN("problem");

TEST_CASE("benchmark coefficient values") {
    const SvieProblem problem = svie::builtin_benchmark(0.3, 0.1);
    CHECK(problem.drift(0.0) == 0.0);
    CHECK(problem.diffusion(0.0) == 1.0);
    CHECK(problem.diffusion_derivative(0.0) == 0.0);
    CHECK(problem.horizon == 1.0);
    // b is the folded sine: nonnegative, kinked at pi.
    CHECK(problem.drift(3.5) == doctest::Approx(std::abs(std::sin(3.5))));
    CHECK(problem.drift(-1.2) == problem.drift(1.2));
}

TEST_CASE("benchmark passes validation for the tested exponent pairs") {
    for (auto [alpha, beta] : {std::pair{0.3, 0.1}, std::pair{0.2, 0.3}}) {
        const svie::ValidationReport report =
            svie::validate(svie::builtin_benchmark(alpha, beta));
        CHECK(report.all_passed());
        CHECK(report.checks.size() == 5);
    }
}

TEST_CASE("quadratic drift fails the Lipschitz probe with a witness") {
    const SvieProblem problem(
        0.0, 1.0, 0.3, 0.1, [](double x) { return x * x; },
        [](double x) { return std::cos(x); },
        [](double x) { return -std::sin(x); });
    const svie::ValidationReport report = svie::validate(problem);
    CHECK_FALSE(report.all_passed());
    const auto& check = find_check(report, "drift-lipschitz");
    REQUIRE_FALSE(check.passed);
    // The witness pair really does violate the declared constant.
    const double gap = std::abs(check.witness_x - check.witness_y);
    const double diff = std::abs(check.witness_x * check.witness_x -
                                 check.witness_y * check.witness_y);
    CHECK(diff > problem.lipschitz_l1 * gap);
    CHECK(find_check(report, "diffusion-lipschitz").passed);
}

TEST_CASE("a wrong-sign derivative fails the consistency probe") {
    const SvieProblem problem(
        0.0, 1.0, 0.3, 0.1, [](double x) { return std::abs(std::sin(x)); },
        [](double x) { return std::cos(x); },
        [](double x) { return std::sin(x); });
    const svie::ValidationReport report = svie::validate(problem);
    CHECK_FALSE(find_check(report, "derivative-consistency").passed);
}

TEST_CASE("exponents outside (0, 1/2) are rejected at construction") {
    auto id = [](double x) { return x; };
    CHECK_THROWS_WITH_AS(SvieProblem(0.0, 1.0, 0.5, 0.1, id, id, id),
                         "alpha must lie in (0, 0.5)", std::invalid_argument);
    CHECK_THROWS_WITH_AS(SvieProblem(0.0, 1.0, 0.3, 0.7, id, id, id),
                         "beta must lie in (0, 0.5)", std::invalid_argument);
    CHECK_THROWS_AS(SvieProblem(0.0, 1.0, -0.1, 0.1, id, id, id),
                    std::invalid_argument);
    CHECK_THROWS_AS(svie::builtin_benchmark(0.3, 0.0), std::invalid_argument);
}

TEST_CASE("problems resolve by name") {
    CHECK_NOTHROW(svie::problem_by_name("paper-sin-cos", 0.3, 0.1));
    const SvieProblem zero = svie::problem_by_name("zero", 0.3, 0.1);
    CHECK(zero.drift(2.0) == 0.0);
    CHECK(zero.diffusion(2.0) == 0.0);
    CHECK_THROWS_AS(svie::problem_by_name("does-not-exist", 0.3, 0.1),
                    std::invalid_argument);
}

TEST_SUITE_END();
