// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "vgb/nystrom.hpp"

using namespace vgb;
using cplx = std::complex<double>;

namespace {

// Smooth test equation with published reference results:
// f(s) + 1/2 int_0^s log(t+s+2) f(t) sqrt(t) dt = cos(s)/(s^2+2).
VolterraProblem<double> smooth_problem() {
    VolterraProblem<double> p;
    p.kernel = [](double t, double s) { return std::log(t + s + 2.0); };
    p.rhs = [](double s) { return std::cos(s) / (s * s + 2.0); };
    p.mu = 0.5;
    p.weights = VolterraWeights(0.0, 0.5);
    return p;
}

VolterraProblem<cplx> scattering_problem(double omega) {
    VolterraProblem<cplx> p;
    p.kernel = [omega](double t, double s) {
        return std::exp(cplx(0.0, 2.0 * omega * (s - t))) - 1.0;
    };
    p.rhs = [](double) { return cplx(1.0); };
    p.mu = cplx(0.0, 1.0 / (2.0 * omega * omega));
    p.weights = VolterraWeights(0.0, 0.0);
    return p;
}

}  // namespace

TEST_CASE("mu = 0 reduces to sampling the right-hand side") {
    VolterraProblem<double> p;
    p.kernel = [](double, double) { return 1.0; };
    p.rhs = [](double s) { return s * s; };
    p.mu = 0.0;
    p.weights = VolterraWeights(0.0, 0.0);

    auto [system, rhs] = assemble_system(p, 8, 4);
    for (std::size_t i = 0; i <= 8; ++i)
        for (std::size_t j = 0; j <= 8; ++j) CHECK(system(i, j) == (i == j ? 1.0 : 0.0));

    const auto sol = solve(p, 8, 4);
    for (std::size_t j = 0; j <= 8; ++j) {
        const double t = j / 8.0;
        CHECK(sol.nodal_values()[j] == doctest::Approx(t * t).epsilon(1e-14));
    }
    // interpolant == rhs everywhere when mu = 0
    for (double s : {0.0, 0.123, 0.77, 1.0})
        CHECK(interpolant_at(sol, p, s) == doctest::Approx(s * s).epsilon(1e-14));
}

TEST_CASE("first collocation row is a unit row when the exponent sum is positive") {
    auto p = smooth_problem();
    auto [system, rhs] = assemble_system(p, 6, 8);
    CHECK(system(0, 0) == 1.0);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(system(0, j) == 0.0);
    // hence a_0 = g(0)
    const auto sol = solve(p, 6, 8);
    CHECK(sol.nodal_values()[0] == doctest::Approx(p.rhs(0.0)).epsilon(1e-14));
}

TEST_CASE("smooth equation at m = 8 reproduces the published conditioning") {
    const auto sol = solve(smooth_problem(), 8, 256);
    CHECK(sol.condition_number() == doctest::Approx(1.86).epsilon(0.01));
}

TEST_CASE("manufactured polynomial solution is recovered to near machine precision") {
    // With f*(s) = s^2, k = 1, mu = 1, alpha = beta = 0:
    // g(s) = s^2 + s^3/3.
    VolterraProblem<double> p;
    p.kernel = [](double, double) { return 1.0; };
    p.rhs = [](double s) { return s * s + s * s * s / 3.0; };
    p.mu = 1.0;
    p.weights = VolterraWeights(0.0, 0.0);

    const auto sol = solve(p, 8, 256);
    for (double s : {0.1, 0.5, 0.9})
        CHECK(std::abs(interpolant_at(sol, p, s) - s * s) <= 1e-10);
}

TEST_CASE("nodal consistency and solve residual") {
    const auto p = smooth_problem();
    const auto op = std::make_shared<const GBOperator>(16, 32);
    const auto sol = solve(p, op);

    double sup = 0.0;
    for (double v : sol.nodal_values()) sup = std::max(sup, std::abs(v));
    for (std::size_t j = 0; j <= 16; ++j) {
        const double at_node = interpolant_at(sol, p, op->node(j));
        CHECK(std::abs(at_node - sol.nodal_values()[j]) <= 1e-10 * (1.0 + sup));
    }

    auto [system, rhs] = assemble_system(p, 16, 32);
    const auto residual = system.apply(sol.nodal_values());
    double worst = 0.0;
    for (std::size_t i = 0; i <= 16; ++i) worst = std::max(worst, std::abs(residual[i] - rhs[i]));
    CHECK(worst / (norm_inf(system) * norm_inf(sol.nodal_values())) <= 1e-12);
}

TEST_CASE("conditioning stays flat as m doubles") {
    double previous = 0.0;
    for (std::size_t m : {8u, 16u, 32u, 64u, 128u}) {
        const double cond = solve(smooth_problem(), m, 64).condition_number();
        if (previous > 0.0) CHECK(cond <= 1.2 * previous);
        previous = cond;
        CHECK(cond > 1.0);
        CHECK(cond < 2.1);
    }
}

TEST_CASE("complex scattering equation: conjugating the coefficients conjugates the solution") {
    // Flipping the frequency sign conjugates the kernel; mu = i/(2 w^2) is
    // even in w, so it must be conjugated alongside to conjugate the
    // whole equation.
    const auto plus = scattering_problem(10.0);
    auto minus = scattering_problem(-10.0);
    minus.mu = std::conj(plus.mu);
    const auto op = std::make_shared<const GBOperator>(16, 16);
    const auto sol_plus = solve(plus, op);
    const auto sol_minus = solve(minus, op);
    CHECK(sol_plus.condition_number() == doctest::Approx(sol_minus.condition_number()).epsilon(1e-12));
    for (std::size_t j = 0; j <= 16; ++j) {
        const cplx a = sol_plus.nodal_values()[j];
        const cplx b = sol_minus.nodal_values()[j];
        CHECK(std::abs(a - std::conj(b)) <= 1e-12);
    }
    for (double s : {0.25, 0.8}) {
        const cplx a = interpolant_at(sol_plus, plus, s);
        const cplx b = interpolant_at(sol_minus, minus, s);
        CHECK(std::abs(a - std::conj(b)) <= 1e-12);
    }
}

TEST_CASE("complex scattering equation is answered in near-unit condition numbers") {
    const auto sol = solve(scattering_problem(10.0), 16, 64);
    CHECK(sol.condition_number() == doctest::Approx(1.01).epsilon(0.01));
}

TEST_CASE("singular collocation systems raise IllPosedDiscretization") {
    // m = 1, k = 1, alpha = beta = 0: the system is [[1, 0], [mu/2, 1 + mu/2]],
    // singular exactly at mu = -2.
    VolterraProblem<double> p;
    p.kernel = [](double, double) { return 1.0; };
    p.rhs = [](double) { return 1.0; };
    p.mu = -2.0;
    p.weights = VolterraWeights(0.0, 0.0);
    CHECK_THROWS_AS((void)solve(p, 1, 1), IllPosedDiscretization);
}

TEST_CASE("non-finite problem data is reported") {
    VolterraProblem<double> bad_kernel;
    bad_kernel.kernel = [](double t, double s) { return 1.0 / (s - t); };  // inf at t = s
    bad_kernel.rhs = [](double) { return 1.0; };
    bad_kernel.mu = 1.0;
    bad_kernel.weights = VolterraWeights(0.0, 0.0);
    CHECK_THROWS_AS((void)assemble_system(bad_kernel, 4, 2), NonFiniteEvaluation);

    VolterraProblem<double> bad_rhs;
    bad_rhs.kernel = [](double, double) { return 1.0; };
    bad_rhs.rhs = [](double s) { return std::log(s); };  // -inf at s = 0
    bad_rhs.mu = 1.0;
    bad_rhs.weights = VolterraWeights(0.0, 0.0);
    CHECK_THROWS_AS((void)assemble_system(bad_rhs, 4, 2), NonFiniteEvaluation);
}

TEST_CASE("interpolant rejects arguments outside [0,1]") {
    const auto p = smooth_problem();
    const auto sol = solve(p, 4, 4);
    CHECK_THROWS_AS((void)interpolant_at(sol, p, -0.5), DomainViolation);
    CHECK_THROWS_AS((void)interpolant_at(sol, p, 1.5), DomainViolation);
}
