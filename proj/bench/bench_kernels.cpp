// Timing comparison of the OpenMP kernels against their serial reference
// loops: stencil application, full CG solves, and the diagnostics scans.

#include <chrono>
#include <cstdio>
#include <vector>

#include "tactoid/diagnostics.hpp"
#include "tactoid/field.hpp"
#include "tactoid/parallel.hpp"

using namespace tactoid;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class Fn>
double time_best(Fn&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now();
        fn();
        best = std::min(best, now() - t0);
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.4f ms %10.4f ms   x%.2f\n", name, 1e3 * serial,
                1e3 * parallel, serial / parallel);
}

}  // namespace

int main() {
    std::printf("%-34s %13s %13s   %s  (%d threads)\n", "kernel", "serial",
                "openmp", "speedup", par::max_threads());

    // stencil matvec
    for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{513, 129},
                          {1025, 257}}) {
        const AngleField f = solve_harmonic(make_gamma0(), nx, ny);
        const kernels::Stencil st = kernels::assemble_stencil(f.grid);
        std::vector<double> x(st.nx * st.ny, 1.0), y(x.size());
        const double ts = time_best(
            [&] { kernels::apply_stencil_serial(st, x.data(), y.data()); }, 20);
        const double tp = time_best(
            [&] { kernels::apply_stencil_omp(st, x.data(), y.data()); }, 20);
        char name[64];
        std::snprintf(name, sizeof name, "stencil matvec %zux%zu", nx, ny);
        row(name, ts, tp);
    }

    // full solve
    {
        const GraphCurve g0 = make_gamma0();
        par::set_serial(true);
        const double ts =
            time_best([&] { (void)solve_harmonic(g0, 513, 129); }, 3);
        par::set_serial(false);
        const double tp =
            time_best([&] { (void)solve_harmonic(g0, 513, 129); }, 3);
        row("cg solve 513x129", ts, tp);
    }

    // diagnostics scans
    {
        const ParametricCurve p = to_parametric(make_gamma0(), 512);
        par::set_serial(true);
        const double t3s = time_best([&] { (void)two_point_constant(p); }, 3);
        const double h3s =
            time_best([&] { (void)weil_petersson_suite(p); }, 3);
        par::set_serial(false);
        const double t3p = time_best([&] { (void)two_point_constant(p); }, 3);
        const double h3p =
            time_best([&] { (void)weil_petersson_suite(p); }, 3);
        row("triple scan n=512", t3s, t3p);
        row("weil-petersson suite n=512", h3s, h3p);
    }
    return 0;
}
