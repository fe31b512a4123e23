#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "regionctl/elliptic.hpp"

using namespace regionctl;
namespace pi_ns = std::numbers;

TEST_CASE("identity-coupled uniform problem has the constant solution") {
    Grid g(12, 12, Rect{0, 1, 0, 1});
    auto B = InteractionOperator::local(ScalarField(g, 1.0));
    EllipticProblem p(1.0, ScalarField(g, 2.0), ScalarField(g, 1.0));
    p.coupling = EllipticProblem::Coupling{ScalarField(g, 1.0), &B, 1.0};
    ScalarField psi = solve_linear_elliptic(p, 1e-12);
    for (int k = 0; k < g.size(); ++k) CHECK(psi[k] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uniform nonlocal reduction with eta=2") {
    Grid g(10, 10, Rect{0, 1, 0, 1});
    auto B = InteractionOperator::nonlocal(g, [](double, double, double, double) { return 1.0; });
    EllipticProblem p(1.0, ScalarField(g, 2.0), ScalarField(g, 1.0));
    p.coupling = EllipticProblem::Coupling{ScalarField(g, 1.0), &B, 1.0};
    ScalarField psi = solve_linear_elliptic(p, 1e-12);
    for (int k = 0; k < g.size(); ++k) CHECK(psi[k] == doctest::Approx(1.0).epsilon(1e-9));
}

static double manufactured_error(int n) {
    Grid g(n, n, Rect{0, 1, 0, 1});
    EllipticProblem p(1.0, ScalarField(g, 1.0),
                      ScalarField::sample(g, [](double x, double) {
                          return (1.0 + pi_ns::pi * pi_ns::pi) * std::cos(pi_ns::pi * x);
                      }));
    ScalarField psi = solve_linear_elliptic(p, 1e-12);
    double err = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            err = std::max(err, std::abs(psi.at(i, j) - std::cos(pi_ns::pi * g.x(i))));
    return err;
}

TEST_CASE("manufactured solution converges at second order") {
    const double e17 = manufactured_error(17);
    const double e33 = manufactured_error(33);
    CHECK(e17 < 5e-3);  // ~pi^4/12 * dx^2 at dx = 1/16
    CHECK(std::log2(e17 / e33) > 1.9);
}

TEST_CASE("resolvent positivity: nonnegative source gives nonnegative solution") {
    Grid g(12, 12, Rect{0, 1, 0, 1});
    auto B = InteractionOperator::nonlocal(g, [](double x1, double x2, double xp1, double xp2) {
        return 0.5 + 0.4 * std::cos(x1 + x2) * std::cos(xp1 - xp2);
    });
    ScalarField f = test::random_field(g, 5);
    for (int k = 0; k < g.size(); ++k) f[k] = std::abs(f[k]);
    // coercive: eta > ||K|| ||B||
    EllipticProblem p(1e-2, ScalarField(g, 2.0), f);
    p.coupling = EllipticProblem::Coupling{ScalarField(g, 1.0), &B, 1.0};
    ScalarField psi = solve_linear_elliptic(p, 1e-10);
    CHECK(psi.min() >= -1e-10);
}

TEST_CASE("logistic steady state: constant coefficients give r/rho") {
    Grid g(16, 16, Rect{0, 1, 0, 1});
    ScalarField K = solve_logistic_steady(ScalarField(g, 1.0), ScalarField(g, 2.0), 1e-2, 1e-10);
    for (int k = 0; k < g.size(); ++k) CHECK(K[k] == doctest::Approx(0.5).epsilon(1e-8));

    ScalarField K2 = solve_logistic_steady(ScalarField(g, 3.0), ScalarField(g, 0.75), 1.0, 1e-10);
    for (int k = 0; k < g.size(); ++k) CHECK(K2[k] == doctest::Approx(4.0).epsilon(1e-8));
}

static ScalarField logistic_sin(int n) {
    Grid g(n, n, Rect{0, 1, 0, 1});
    ScalarField r = ScalarField::sample(
        g, [](double x, double) { return 1.0 + 0.5 * std::sin(pi_ns::pi * x); });
    return solve_logistic_steady(r, ScalarField(g, 1.0), 1e-2, 1e-11);
}

TEST_CASE("logistic steady state with varying r: residual, positivity, self-convergence") {
    ScalarField K17 = logistic_sin(17);
    ScalarField K33 = logistic_sin(33);
    ScalarField K65 = logistic_sin(65);
    CHECK(K17.min() > 0.0);

    // residual bound honored
    const Grid& g = K17.grid();
    ScalarField lap = apply_neumann_laplacian(K17);
    double res = 0.0;
    ScalarField r = ScalarField::sample(
        g, [](double x, double) { return 1.0 + 0.5 * std::sin(pi_ns::pi * x); });
    for (int k = 0; k < g.size(); ++k)
        res = std::max(res, std::abs(-1e-2 * lap[k] - r[k] * K17[k] + K17[k] * K17[k]));
    CHECK(res < 1e-10 * g.size());

    // nested-grid self-convergence on shared nodes
    auto diff = [](const ScalarField& coarse, const ScalarField& fine) {
        double d = 0.0;
        const Grid& gc = coarse.grid();
        for (int j = 0; j < gc.ny(); ++j)
            for (int i = 0; i < gc.nx(); ++i)
                d = std::max(d, std::abs(coarse.at(i, j) - fine.at(2 * i, 2 * j)));
        return d;
    };
    const double d1 = diff(K17, K33);
    const double d2 = diff(K33, K65);
    CHECK(d1 > d2);
    CHECK(std::log2(d1 / d2) > 1.5);
}

TEST_CASE("logistic rejects invalid coefficients") {
    Grid g(8, 8, Rect{0, 1, 0, 1});
    CHECK_THROWS_AS(solve_logistic_steady(ScalarField(g, 0.0), ScalarField(g, 1.0), 1.0, 1e-8),
                    ConfigError);
    CHECK_THROWS_AS(solve_logistic_steady(ScalarField(g, 1.0), ScalarField(g, -1.0), 1.0, 1e-8),
                    ConfigError);
}
