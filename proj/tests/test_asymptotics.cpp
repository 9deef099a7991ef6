#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tactoid/asymptotics.hpp"
#include "tactoid/quadrature.hpp"

using namespace tactoid;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("cusped semicircle: junction continuity and endpoint slopes") {
    for (double eps : {0.05, 0.1, 0.2}) {
        const GraphCurve c = make_cusped_semicircle(eps, 4097);
        const CurveFun fn(c);
        const double c0 = std::sqrt((1.0 + eps) / (1.0 - eps));
        const double xj = std::sqrt(1.0 - eps * eps) / c0;  // junction in x
        CHECK(fn.f(xj - 1e-12) == doctest::Approx(eps).epsilon(1e-6));
        CHECK(fn.f(xj + 1e-12) == doctest::Approx(eps).epsilon(1e-6));
        // the derivative vanishes at the contact points
        CHECK(std::abs(fn.df(-1.0 + 1e-9)) < 1e-3);
        CHECK(std::abs(fn.df(1.0 - 1e-9)) < 1e-3);
    }
    CHECK_THROWS_AS((void)make_cusped_semicircle(0.3), Error);
    CHECK_THROWS_AS((void)make_cusped_semicircle(-0.1), Error);
}

TEST_CASE("F of the cusped family decreases to sqrt(2 pi)") {
    const double target = std::sqrt(2.0 * kPi);
    double prev = 1e300;
    std::vector<double> eps{0.2, 0.1, 0.05, 0.02};
    std::vector<double> gap;
    for (double e : eps) {
        const double F = F_functional(make_cusped_semicircle(e)).total;
        CHECK(F > target);
        CHECK(F < prev);
        prev = F;
        gap.push_back(F - target);
    }
    // the gap closes linearly in eps
    const auto fit = quad::fit_loglog(eps, gap);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("linear-extension energy of the cusped family is O(1/eps)") {
    std::vector<double> eps{0.05, 0.1, 0.2}, d;
    for (double e : eps) {
        const LinExt1D lin =
            linear_extension_dirichlet_1d(make_cusped_semicircle(e));
        d.push_back(lin.dy + lin.dx);
        CHECK(e * d.back() > 1.0);
        CHECK(e * d.back() < 4.0);
    }
    const auto fit = quad::fit_loglog(eps, d);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("large volume sweep: limit and decay exponent") {
    const SweepResult s = large_volume_sweep({1e4, 1e6, 1e8});
    CHECK(s.limit_target == doctest::Approx(2.5066283).epsilon(1e-7));
    for (double g : s.gaps) CHECK(g > 0.0);
    CHECK(s.gaps.back() < 0.05);
    CHECK(s.fitted_exponent == doctest::Approx(-0.25).epsilon(0.2));
    CHECK_FALSE(s.under_resolved);
    CHECK_THROWS_AS((void)large_volume_sweep({0.5}), Error);
}

TEST_CASE("small volume sweep: sandwich window and both exponents") {
    const SweepResult s = small_volume_sweep({0.2, 0.1, 0.05, 0.025});
    double lo = 1e300, hi = 0.0;
    for (double r : s.dirichlet_over_eps) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 5.0);
    CHECK(s.fitted_exponent == doctest::Approx(1.0).epsilon(0.1));
    CHECK(s.total_exponent == doctest::Approx(2.0 / 3.0).epsilon(0.1));
    CHECK_THROWS_AS((void)small_volume_sweep({0.5}), Error);
}

TEST_CASE("witness curve is admissible and its sandwich constant is pi") {
    const GraphCurve w = make_witness(0.1);
    CHECK_NOTHROW(validate(w));
    CHECK(volume(w) == doctest::Approx(0.1 * kPi).epsilon(1e-10));
    const LinExt1D lin = linear_extension_dirichlet_1d(w);
    CHECK((lin.dy + lin.dx) / 0.1 == doctest::Approx(kPi).epsilon(1e-3));
}

TEST_CASE("ode residual of the closed-form small-volume profile") {
    CHECK(ode_check() <= 1e-10);

    // boundary values vanish by construction
    const double c = std::pow(kPi, -2.0 / 3.0);
    CHECK(std::abs(c * std::cos(0.5 * kPi)) < 1e-15);

    // a perturbed profile is far from solving the equation
    auto hp = [c](double x) {
        return c * std::cos(0.5 * kPi * x) + 0.01 * std::cos(1.5 * kPi * x);
    };
    auto d2hp = [c](double x) {
        return -c * 0.25 * kPi * kPi * std::cos(0.5 * kPi * x) -
               0.01 * 2.25 * kPi * kPi * std::cos(1.5 * kPi * x);
    };
    CHECK(ode_residual_max(hp, d2hp) > 0.05);
}

TEST_CASE("ode residual is an analytic identity, stable under grid halving") {
    const double c = std::pow(kPi, -2.0 / 3.0);
    auto h = [c](double x) { return c * std::cos(0.5 * kPi * x); };
    auto d2h = [c](double x) {
        return -c * 0.25 * kPi * kPi * std::cos(0.5 * kPi * x);
    };
    const double r1 = ode_residual_max(h, d2h, 2049);
    const double r2 = ode_residual_max(h, d2h, 4097);
    CHECK(r1 <= 1e-10);
    CHECK(r2 < 10.0 * std::max(r1, 1e-16));
}

TEST_CASE("gamma convergence table: positive shrinking gap, exact eps = 0") {
    const GraphCurve g = make_profile_g();
    const SweepResult s = gamma_convergence_table(g, {0.2, 0.1, 0.05, 0.025});
    REQUIRE(s.params.size() == 5);
    CHECK(s.params[0] == 0.0);
    CHECK(s.gaps[0] == 0.0);
    CHECK(s.reports[0].total == doctest::Approx(E0(g).total).epsilon(1e-14));
    for (std::size_t i = 2; i < s.gaps.size(); ++i) {
        CHECK(s.gaps[i] > 0.0);
        CHECK(s.gaps[i] > s.gaps[i - 1]);  // sorted ascending in eps
    }
    // the recovery extension's d/dx part decays like eps^{4/3}
    std::vector<double> eps(s.params.begin() + 1, s.params.end());
    std::vector<double> dx(s.dirichlet_over_eps.begin() + 1,
                           s.dirichlet_over_eps.end());
    const auto fit = quad::fit_loglog(eps, dx);
    CHECK(fit.slope == doctest::Approx(4.0 / 3.0).epsilon(0.15));
    // gap itself fits the same rate
    CHECK(s.fitted_exponent == doctest::Approx(4.0 / 3.0).epsilon(0.15));
}
