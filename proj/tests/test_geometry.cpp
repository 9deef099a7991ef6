#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "tactoid/curve.hpp"

using namespace tactoid;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("volume of the explicit baseline curve is one") {
    CHECK(volume(make_gamma0()) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("volume of the semicircle is the half-disk area") {
    CHECK(std::abs(volume(make_semicircle(4097)) - kPi / 2.0) < 1e-4);
}

TEST_CASE("cusped-family volume matches an independent quadrature") {
    const double eps = 0.25 - 1e-9;
    const GraphCurve c = make_cusped_semicircle(eps, 8193);
    const CurveFun fn(c);
    const double ref = oracle::romberg([&](double x) { return fn.f(x); },
                                       -1.0, 1.0, 22);
    CHECK(volume(c) == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("perimeter: semicircle, flat limit, baseline oracle") {
    CHECK(std::abs(perimeter(make_semicircle()) - kPi) < 1e-6);

    // degenerate flat limit 2 + O(delta^2)
    const double p1 = perimeter(make_cosine(1025, 1e-2));
    const double p2 = perimeter(make_cosine(1025, 1e-3));
    CHECK(std::abs(p1 - 2.0) < 2e-4);
    CHECK(std::abs(p2 - 2.0) < 2e-6);

    const double ref = oracle::romberg(
        [](double x) {
            const double s = std::sin(x);
            return std::sqrt(1.0 + s * s / (4.0 * kPi * kPi));
        },
        -kPi, kPi);
    CHECK(perimeter(make_gamma0()) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("rescale_to_volume scales lengths and areas correctly") {
    GraphCurve c = make_cosine();  // volume 1
    GraphCurve big = rescale_to_volume(c, 4.0);
    CHECK(volume(big) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(perimeter(big) == doctest::Approx(2.0 * perimeter(c)).epsilon(1e-12));

    // identity within 1e-15
    GraphCurve same = rescale_to_volume(c, volume(c));
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(std::abs(same.x[i] - c.x[i]) <= 1e-15 * (1.0 + std::abs(c.x[i])));
        CHECK(std::abs(same.f[i] - c.f[i]) <= 1e-15 * (1.0 + std::abs(c.f[i])));
    }

    GraphCurve g2 = rescale_to_volume(make_gamma0(), 2.0);
    CHECK(volume(g2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(perimeter(g2) ==
          doctest::Approx(std::sqrt(2.0) * perimeter(make_gamma0())).epsilon(1e-10));

    CHECK_THROWS_AS((void)rescale_to_volume(c, -1.0), Error);
}

TEST_CASE("isotropic scale invariance") {
    const GraphCurve c = make_gamma0();
    const double p0 = perimeter(c), v0 = volume(c);
    for (double s : {0.5, 3.0}) {
        GraphCurve cs = rescale_to_volume(c, s * s * v0);
        CHECK(perimeter(cs) == doctest::Approx(s * p0).epsilon(1e-10));
        CHECK(volume(cs) == doctest::Approx(s * s * v0).epsilon(1e-10));
    }
}

TEST_CASE("to_parametric: constant-speed circle stations") {
    const ParametricCurve p = to_parametric(make_semicircle(), 5);
    for (std::size_t k = 0; k < 5; ++k) {
        const double phi = kPi * static_cast<double>(k) / 4.0;
        CHECK(std::abs(p.pts[k][0] - (-std::cos(phi))) < 1e-4);
        CHECK(std::abs(p.pts[k][1] - std::sin(phi)) < 1e-4);
    }
    CHECK_THROWS_AS((void)to_parametric(make_semicircle(), 2), Error);
}

TEST_CASE("to_parametric: chord sum and monotone stations") {
    const GraphCurve g0 = make_gamma0();
    const ParametricCurve p = to_parametric(g0, 512);
    CHECK(std::abs(perimeter(p) - perimeter(g0)) < 1e-6);
    CHECK(p.total_length == doctest::Approx(perimeter(g0)).epsilon(1e-8));

    const ParametricCurve q = to_parametric(make_cosine(), 100);
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        CHECK(q.pts[i + 1][0] > q.pts[i][0]);  // brute-force scan
}

TEST_CASE("to_parametric output satisfies the discretized curve conditions") {
    // the chord deficit is (kappa ds)^2/24, so the station count must match
    // the curve's curvature for the 1e-6 uniformity bound
    const std::vector<std::pair<GraphCurve, std::size_t>> cases = {
        {make_gamma0(), 512}, {make_cosine(), 4096}};
    for (const auto& [c, n] : cases) {
        const ParametricCurve p = to_parametric(c, n);
        CHECK_NOTHROW(validate(p));
        double mean = 0.0;
        std::vector<double> chord(p.size() - 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            chord[i] = std::hypot(p.pts[i + 1][0] - p.pts[i][0],
                                  p.pts[i + 1][1] - p.pts[i][1]);
            mean += chord[i];
        }
        mean /= static_cast<double>(chord.size());
        double worst = 0.0;
        for (double ch : chord)
            worst = std::max(worst, std::abs(ch / mean - 1.0));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("round trip perimeter converges at second order") {
    const GraphCurve g0 = make_gamma0();
    const double exact = perimeter(g0);
    std::vector<double> defect;
    for (std::size_t n : {128, 256, 512})
        defect.push_back(std::abs(perimeter(to_parametric(g0, n)) - exact));
    CHECK(std::log2(defect[0] / defect[1]) > 1.8);
    CHECK(std::log2(defect[1] / defect[2]) > 1.8);
}

TEST_CASE("boundary angle: critical points, closed form, vertical limit") {
    const GraphCurve g0 = make_gamma0();
    const std::vector<double> th = boundary_angle(g0);
    const std::size_t mid = g0.size() / 2;  // x = 0, f0' = 0
    CHECK(th[mid] == doctest::Approx(0.0).epsilon(1e-15));
    // x = pi/2 lands on the uniform grid; f0' = -1/(2 pi) there
    const std::size_t i_half = 3 * (g0.size() - 1) / 4;
    CHECK(g0.x[i_half] == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(th[i_half] ==
          doctest::Approx(std::atan(-1.0 / (2.0 * kPi))).epsilon(1e-12));
    CHECK(std::atan(-1.0 / (2.0 * kPi)) == doctest::Approx(-0.15783).epsilon(1e-4));

    // slope blows up approaching the semicircle contact point
    const std::vector<double> ths = boundary_angle(make_semicircle());
    CHECK(ths[1] > 1.5);
    CHECK(ths[1] <= kPi / 2);
    CHECK(ths[ths.size() - 2] < -1.5);
}

TEST_CASE("boundary angle antisymmetry on symmetric grids") {
    for (const GraphCurve& c : {make_gamma0(), make_cosine()}) {
        const std::vector<double> th = boundary_angle(c);
        const std::size_t n = c.size();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(th[i] + th[n - 1 - i]) <= 1e-14);
    }
}

TEST_CASE("boundary angle rejects interior vertical tangents") {
    GraphCurve c;
    c.a = 1.0;
    c.x = uniform_grid(1.0, 257);
    c.f.resize(257);
    auto an = std::make_shared<AnalyticForm>();
    an->f = [](double x) {
        return (1.0 - x * x) * (1.0 - 0.5 * std::sqrt(std::abs(x)));
    };
    an->df = [](double x) {
        if (x == 0.0) return std::numeric_limits<double>::infinity();
        const double s = x > 0 ? 1.0 : -1.0;
        return -2.0 * x * (1.0 - 0.5 * std::sqrt(std::abs(x))) -
               (1.0 - x * x) * 0.25 * s / std::sqrt(std::abs(x));
    };
    for (std::size_t i = 0; i < 257; ++i) c.f[i] = an->f(c.x[i]);
    c.f.front() = 0.0;
    c.f.back() = 0.0;
    c.analytic = an;
    CHECK_THROWS_AS((void)boundary_angle(c), Error);
}

TEST_CASE("malformed curves are rejected") {
    GraphCurve c = make_cosine(65);
    c.spectral.reset();
    c.x[10] = c.x[12];  // non-monotone
    CHECK_THROWS_AS((void)volume(c), Error);

    GraphCurve tiny;
    tiny.a = 1.0;
    tiny.x = {-1.0, 1.0};
    tiny.f = {0.0, 0.0};
    CHECK_THROWS_AS((void)perimeter(tiny), Error);

    GraphCurve neg = make_cosine(65);
    neg.spectral.reset();
    neg.f[30] = -0.1;
    CHECK_THROWS_AS(validate(neg), Error);
}

TEST_CASE("parametric validation catches overlapping vertical runs") {
    ParametricCurve c;
    c.pts = {{-1.0, 0.0}, {0.0, 0.8}, {0.0, 0.1}, {0.0, 0.9}, {1.0, 0.0}};
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("spectral invariant: samples must reproduce the series") {
    GraphCurve c = make_cosine();
    CHECK_NOTHROW(validate(c));
    c.f[100] += 1e-6;
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("curve file round trips") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "tactoid_geom_io";
    fs::create_directories(dir);
    const GraphCurve c = make_gamma0(257);

    write_curve_csv(c, (dir / "c.csv").string());
    const GraphCurve r = read_curve_csv((dir / "c.csv").string());
    REQUIRE(r.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(r.f[i] == doctest::Approx(c.f[i]).epsilon(1e-15));

    write_curve_spectral(c, (dir / "c.spectral").string());
    const GraphCurve s = read_curve_spectral((dir / "c.spectral").string());
    REQUIRE(s.spectral.has_value());
    CHECK(s.spectral->a == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(s.spectral->coeff[0] ==
          doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));

    CHECK_THROWS_AS((void)read_curve_csv((dir / "missing.csv").string()), Error);
}

TEST_CASE("builtin parser") {
    CHECK_NOTHROW((void)make_builtin("gamma0"));
    CHECK_NOTHROW((void)make_builtin("cusped:0.1"));
    CHECK_THROWS_AS((void)make_builtin("blob"), Error);
    CHECK_THROWS_AS((void)make_builtin("cusped:0.4"), Error);
}
