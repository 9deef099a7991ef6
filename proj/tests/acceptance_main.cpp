// Acceptance suite: runs every quantitative gate at its stated tolerance and
// prints one PASS/FAIL line per item. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tactoid/asymptotics.hpp"
#include "tactoid/cli.hpp"
#include "tactoid/diagnostics.hpp"
#include "tactoid/energy.hpp"
#include "tactoid/optimize.hpp"
#include "tactoid/parallel.hpp"
#include "tactoid/quadrature.hpp"

using namespace tactoid;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d %-28s %s\n", pass ? "PASS" : "FAIL", id,
                name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_baseline() {
    Timer t;
    const BaselineReport b = baseline_gamma0(1025, 257, 513, 129);
    // self-consistency of the adaptive quadrature: loose vs tight tolerance
    const double loose = quad::adaptive_simpson(
        [](double x) {
            const double s = std::sin(x);
            const double c = std::cos(x) + 1.0;
            double v = std::sqrt(1.0 + s * s / (4.0 * kPi * kPi));
            if (c > 1e-14) {
                const double as = std::asin(s / (2.0 * kPi));
                v += 2.0 * kPi * as * as / c;
                const double num =
                    std::cos(x) * c / std::sqrt(4.0 * kPi * kPi - s * s) +
                    as * s;
                v += num * num / (6.0 * kPi * c);
            } else {
                v += 1.0 / kPi;
            }
            return v;
        },
        -kPi, kPi, 1e-6, 36);
    const double self = std::abs(loose - b.displayed_integral) /
                        b.displayed_integral;
    const double agree =
        std::abs(b.grid_total - b.displayed_integral) / b.displayed_integral;
    const double secs = t.seconds();
    const bool pass = self <= 1e-8 && agree <= 0.01 && secs < 30.0;
    report(1, "baseline reproduction", pass,
           fmt("displayed=%.6f grid=%.6f agree=%.2e self=%.1e paper=12.65 "
               "dev=%.3f [%.1fs]",
               b.displayed_integral, b.grid_total, agree, self,
               b.deviation_from_paper, secs));
}

void criterion_2_solver_order() {
    auto width = [](double x) { return 1.0 + 0.3 * std::sin(kPi * x); };
    auto dwidth = [](double x) { return 0.3 * kPi * std::cos(kPi * x); };
    auto err = [&](std::size_t n, double (*u)(double, double)) {
        const TestDomainField f = solve_test_domain(
            0.0, 1.0, width, dwidth,
            [u](double x, double y) { return u(x, y); }, n, n);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double x = f.grid.xi(i);
                const double y = f.grid.eta(j) * f.grid.width[i];
                worst = std::max(worst, std::abs(f.grid.at(i, j) - u(x, y)));
            }
        return worst;
    };
    double worst_order = 1e300;
    for (auto* u : {+[](double x, double y) { return x * y; },
                    +[](double x, double y) { return x * x - y * y; },
                    +[](double x, double y) { return x * x * x - 3 * x * y * y; }}) {
        std::vector<double> e;
        for (std::size_t n : {33, 65, 129, 257}) e.push_back(err(n, u));
        for (std::size_t k = 0; k + 1 < e.size(); ++k)
            worst_order = std::min(worst_order, std::log2(e[k] / e[k + 1]));
    }
    const double green =
        green_identity_defect(solve_harmonic(make_gamma0(), 1025, 257));
    const bool pass = worst_order >= 1.8 && green < 0.02;
    report(2, "harmonic solver order", pass,
           fmt("min observed order=%.2f green defect=%.2e", worst_order, green));
}

void criterion_3_dirichlet_principle() {
    bool pass = true;
    double min_gap = 1e300;
    for (const GraphCurve& c :
         {make_gamma0(), make_cosine(), make_cusped_semicircle(0.1),
          make_cusped_semicircle(0.2), make_cosine(1025, 0.5)}) {
        const double eh = dirichlet_energy(solve_harmonic(c, 513, 129));
        const double el = dirichlet_energy(linear_extension(c, 513, 129));
        pass = pass && eh <= el && (el - eh) >= 1e-6;
        min_gap = std::min(min_gap, el - eh);
    }
    report(3, "dirichlet principle", pass,
           fmt("5 curves, min strict gap=%.2e", min_gap));
}

void criterion_4_gradient_validation() {
    Timer t;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    OptimConfig cfg;
    cfg.functional = FunctionalId::E;
    cfg.v = 1.0;
    cfg.K = 6;
    cfg.nx = 1025;
    cfg.ny = 257;
    cfg.solver.tolerance = 1e-12;

    double worst = 0.0;
    int pairs = 0;
    for (int rep = 0; rep < 10; ++rep) {
        ShapeParams p;
        p.coeff = {1.0,
                   0.10 * U(rng),
                   0.05 * U(rng),
                   0.03 * U(rng),
                   0.02 * U(rng),
                   0.01 * U(rng)};
        // random direction in coefficient space = admissible g = 2 h phi
        std::vector<double> d(cfg.K);
        double dn = 0.0;
        for (double& v : d) {
            v = U(rng);
            dn += v * v;
        }
        dn = std::sqrt(dn);
        for (double& v : d) v /= dn;

        SolveOptions frozen = cfg.solver;
        {
            const AngleField probe = solve_harmonic(
                curve_from_params(p, cfg.curve_samples), cfg.nx, cfg.ny,
                cfg.solver);
            frozen.fixed_clip_left = static_cast<long>(probe.grid.clip_left);
            frozen.fixed_clip_right = static_cast<long>(probe.grid.clip_right);
        }
        OptimConfig run = cfg;
        run.solver = frozen;

        const GradientContext ctx = make_gradient_context(p, run);
        const SpectralForm& s = *ctx.curve.spectral;
        auto g = [&](double x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d.size(); ++k)
                acc += d[k] * std::cos(s.omega(k) * x);
            return 2.0 * s.h(x) * acc;
        };
        auto dg = [&](double x) {
            double acc = 0.0, dacc = 0.0;
            for (std::size_t k = 0; k < d.size(); ++k) {
                acc += d[k] * std::cos(s.omega(k) * x);
                dacc -= d[k] * s.omega(k) * std::sin(s.omega(k) * x);
            }
            return 2.0 * (s.dh(x) * acc + s.h(x) * dacc);
        };
        const double an = shape_gradient(ctx, run, g, dg);
        const double step = 1e-4;
        auto at = [&](double tt) {
            ShapeParams q = p;
            for (std::size_t k = 0; k < d.size(); ++k)
                q.coeff[k] += tt * d[k];
            return functional_value(q, run);
        };
        const double fd = (at(step) - at(-step)) / (2.0 * step);
        worst = std::max(worst, std::abs(an - fd) / std::abs(fd));
        ++pairs;
    }
    const double secs = t.seconds();
    const bool pass = worst <= 1e-3 && pairs >= 10 && secs < 300.0;
    report(4, "shape gradient vs FD", pass,
           fmt("%d pairs, worst rel=%.2e [%.0fs]", pairs, worst, secs));
}

void criterion_5_small_volume_profile() {
    const double target = 3.0 * std::pow(kPi, 2.0 / 3.0);
    // analytic-integration oracle first: 4 int h'^2 = pi^{2/3}, 2/sqrt(int g)
    const double oracle_first =
        4.0 * std::pow(kPi, -4.0 / 3.0) * kPi * kPi / 4.0;
    const double oracle_second = 2.0 * std::pow(kPi, 2.0 / 3.0);
    const bool oracle_ok =
        std::abs(oracle_first + oracle_second - target) < 1e-12;

    OptimConfig cfg;
    cfg.functional = FunctionalId::E0;
    cfg.K = 8;
    cfg.tol = 1e-10;
    cfg.max_iter = 300;
    ShapeParams start;
    start.coeff.assign(8, 0.0);
    start.coeff[0] = 1.0;
    const OptimResult r = minimize(start, cfg);
    const double e0 = r.energy_trace.back();

    const CurveFun fa(curve_from_params(r.params));
    const double l2 = std::sqrt(oracle::romberg(
        [&](double x) {
            const double gx =
                std::pow(kPi, -4.0 / 3.0) * (1.0 + std::cos(kPi * x)) / 2.0;
            const double dd = fa.f(x) - gx;
            return dd * dd;
        },
        -1.0, 1.0));
    const double ode = ode_check();
    const bool pass = oracle_ok && std::abs(e0 - target) <= 1e-6 &&
                      l2 <= 1e-3 && ode <= 1e-10;
    report(5, "small-volume profile", pass,
           fmt("E0=%.12f (target %.12f) L2=%.2e ode=%.2e", e0, target, l2, ode));
}

void criterion_6_large_volume() {
    Timer t;
    const SweepResult s = large_volume_sweep({1e4, 1e5, 1e6, 1e7, 1e8});
    const bool exponent_ok = std::abs(s.fitted_exponent + 0.25) <= 0.05;

    OptimConfig cfg;
    cfg.functional = FunctionalId::Ev;
    cfg.v = 1e6;
    cfg.K = 16;
    cfg.nx = 257;
    cfg.ny = 65;
    cfg.max_grid_doublings = 1;
    cfg.tol = 3e-3;
    cfg.max_iter = 36;
    const ShapeParams start = fit_params(make_cusped_semicircle(0.045), 16);
    const OptimResult r = minimize(start, cfg);
    const GraphCurve opt = curve_from_params(r.params, 2049);
    const EnergyReport ev = E_v(opt, 1e6, 513, 129);
    const double F = ev.perimeter_term;
    const double target = std::sqrt(2.0 * kPi);
    const bool f_ok = std::abs(F - target) / target <= 0.02;

    // Hausdorff distance to the semicircle after volume normalization
    const ParametricCurve a =
        to_parametric(rescale_to_volume(opt, kPi / 2.0), 1024);
    const ParametricCurve b = oracle::semicircle_arc(1024);
    const double hd = oracle::hausdorff(a.pts, b.pts);
    const bool pass = exponent_ok && f_ok && hd <= 0.05;
    report(6, "large-volume limit", pass,
           fmt("exponent=%.3f F=%.5f (target %.5f) hausdorff=%.3f [%.0fs]",
               s.fitted_exponent, F, target, hd, t.seconds()));
}

void criterion_7_sandwich() {
    const SweepResult s = small_volume_sweep({0.2, 0.1, 0.05, 0.025});
    double lo = 1e300, hi = 0.0;
    for (double r : s.dirichlet_over_eps) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const bool pass = hi / lo <= 5.0 &&
                      std::abs(s.fitted_exponent - 1.0) <= 0.1 &&
                      std::abs(s.total_exponent - 2.0 / 3.0) <= 0.1;
    report(7, "lemma sandwich scaling", pass,
           fmt("window=%.3f dirichlet slope=%.3f total slope=%.3f", hi / lo,
               s.fitted_exponent, s.total_exponent));
}

void criterion_8_diagnostics() {
    bool pass = true;
    std::string detail;

    // straight segment: trivial constants
    const ParametricCurve seg = oracle::segment_curve(513);
    pass = pass && std::abs(two_point_constant(seg) - 1.0) <= 1e-2;
    pass = pass && chord_arc_constant(seg) == 1.0;
    {
        const RTable vm = vanishing_modulus(seg, {0.1, 0.5});
        for (double v : vm.value) pass = pass && v == 0.0;
        const WeilPetersson wp = weil_petersson_suite(seg);
        pass = pass && wp.h32_seminorm == 0.0 && wp.mobius_energy == 0.0 &&
               wp.beta_sq_integral <= 1e-20;
    }

    // unit semicircle
    const ParametricCurve arc = oracle::semicircle_arc(1024);
    const double ca = chord_arc_constant(arc);
    pass = pass && std::abs(ca - kPi / 2.0) <= 1e-3;
    const RTable vm = vanishing_modulus(arc, {0.05, 0.1, 0.2});
    double worst_vm = 0.0;
    for (std::size_t i = 0; i < vm.r.size(); ++i) {
        const double law = vm.r[i] * vm.r[i] / 24.0;
        worst_vm = std::max(worst_vm, std::abs(vm.value[i] - law) / law);
    }
    pass = pass && worst_vm <= 0.10;

    // corner negative control
    const double alpha = kPi / 2.0;
    const double plateau = 1.0 / std::sin(alpha / 2.0) - 1.0;
    const RTable cm =
        vanishing_modulus(oracle::corner_curve(alpha, 512), {0.01, 0.02, 0.05});
    double worst_corner = 0.0;
    for (double v : cm.value)
        worst_corner = std::max(worst_corner, std::abs(v - plateau) / plateau);
    pass = pass && worst_corner <= 0.01;
    double prev_beta = 0.0;
    bool beta_grows = true;
    for (std::size_t n : {256, 512, 1024}) {
        const double b =
            weil_petersson_suite(oracle::corner_curve(alpha, n)).beta_sq_integral;
        beta_grows = beta_grows && b > prev_beta;
        prev_beta = b;
    }
    pass = pass && beta_grows;
    report(8, "diagnostics oracles", pass,
           fmt("chord-arc=%.6f vm err=%.1f%% corner err=%.2f%% beta grows=%d",
               ca, 100.0 * worst_vm, 100.0 * worst_corner, beta_grows ? 1 : 0));
}

void criterion_9_el_regression() {
    Timer t;
    // E0 analytic minimizer: residual decays under 1-D grid refinement
    std::vector<double> r_e0;
    for (std::size_t n : {513, 1025, 2049}) {
        ElOptions eo;
        eo.mode = ElMode::e0;
        eo.nx = n;
        r_e0.push_back(el_residual(make_profile_g(), eo).residual_norm);
    }
    const bool e0_ok = r_e0[1] < r_e0[0] && r_e0[2] < r_e0[1];

    // optimized Problem-P curve: residual decays over the grid ladder
    OptimConfig cfg;
    cfg.functional = FunctionalId::E;
    cfg.v = 1.0;
    cfg.K = 12;
    cfg.nx = 129;
    cfg.ny = 33;
    cfg.max_grid_doublings = 1;
    cfg.tol = 0.03;
    cfg.max_iter = 60;
    ShapeParams start;
    start.coeff.assign(12, 0.0);
    start.coeff[0] = 1.0;
    const OptimResult opt = minimize(start, cfg);
    const GraphCurve curve = curve_from_params(opt.params, 1025);
    std::vector<double> r_opt;
    for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{129, 33},
                          {257, 65},
                          {513, 129}}) {
        ElOptions eo;
        eo.nx = nx;
        eo.ny = ny;
        r_opt.push_back(el_residual(curve, eo).residual_norm);
    }
    const bool opt_ok = r_opt[1] < r_opt[0] && r_opt[2] < r_opt[1];

    // deliberately non-optimal curve: no monotone decay
    std::vector<double> r_bad;
    for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{129, 33},
                          {257, 65},
                          {513, 129}}) {
        ElOptions eo;
        eo.nx = nx;
        eo.ny = ny;
        r_bad.push_back(el_residual(make_cosine(), eo).residual_norm);
    }
    const bool bad_ok = !(r_bad[1] < r_bad[0] && r_bad[2] < r_bad[1]);

    const bool pass = e0_ok && opt_ok && bad_ok;
    report(9, "EL residual regression", pass,
           fmt("e0:%.1e>%.1e>%.1e opt:%.3f>%.3f>%.3f control flat:%d [%.0fs]",
               r_e0[0], r_e0[1], r_e0[2], r_opt[0], r_opt[1], r_opt[2],
               bad_ok ? 1 : 0, t.seconds()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10_determinism() {
    cli::RunConfig cfg;
    cfg.command = "energy";
    cfg.builtin = "gamma0";
    cfg.nx = 65;
    cfg.ny = 17;
    cfg.serial = true;
    const fs::path base = fs::temp_directory_path() / "tactoid_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    cfg.out_dir = (base / "run").string();
    const int s1 = cli::run(cfg);
    const std::string first = slurp(base / "run" / "energy.json");
    const int s2 = cli::run(cfg);
    const std::string second = slurp(base / "run" / "energy.json");
    par::set_serial(false);
    const bool pass = s1 == 0 && s2 == 0 && !first.empty() && first == second;
    report(10, "serial determinism", pass,
           pass ? "byte-identical reports" : "reports differ");
}

}  // namespace

int main() {
    Timer total;
    criterion_1_baseline();
    criterion_2_solver_order();
    criterion_3_dirichlet_principle();
    criterion_4_gradient_validation();
    criterion_5_small_volume_profile();
    criterion_6_large_volume();
    criterion_7_sandwich();
    criterion_8_diagnostics();
    criterion_9_el_regression();
    criterion_10_determinism();
    std::printf("%d/10 criteria passed [%.0fs total]\n", 10 - g_failures,
                total.seconds());
    return g_failures;
}
