#include "tactoid/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "tactoid/parallel.hpp"

namespace tactoid {

namespace {

constexpr double kGaussOff = 0.28867513459481287;  // 1/(2 sqrt 3)
const double kNan = std::numeric_limits<double>::quiet_NaN();

// SPD coefficient of the transformed Dirichlet form,
//   A = f * [[1, -c], [-c, c^2 + 1/f^2]],  c = eta f'/f.
struct Coef {
    double a11, a12, a22;
};

inline Coef coef_at(double f, double df, double eta) {
    const double fs = std::max(f, 1e-280);
    const double c = eta * df / fs;
    return {fs, -c * fs, c * c * fs + 1.0 / fs};
}

}  // namespace

namespace kernels {

void apply_stencil_serial(const Stencil& s, const double* x, double* y) {
    const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(s.nx);
    const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(s.ny);
    for (std::ptrdiff_t i = 0; i < nx; ++i) {
        for (std::ptrdiff_t j = 0; j < ny; ++j) {
            const std::ptrdiff_t n = i * ny + j;
            if (!s.free_node[static_cast<std::size_t>(n)]) {
                y[n] = 0.0;
                continue;
            }
            const double* c = &s.coef[static_cast<std::size_t>(n) * 9];
            double acc = 0.0;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    acc += c[3 * (di + 1) + (dj + 1)] * x[n + di * ny + dj];
            y[n] = acc;
        }
    }
}

void apply_stencil_omp(const Stencil& s, const double* x, double* y) {
    const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(s.nx);
    const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(s.ny);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nx; ++i) {
        for (std::ptrdiff_t j = 0; j < ny; ++j) {
            const std::ptrdiff_t n = i * ny + j;
            if (!s.free_node[static_cast<std::size_t>(n)]) {
                y[n] = 0.0;
                continue;
            }
            const double* c = &s.coef[static_cast<std::size_t>(n) * 9];
            double acc = 0.0;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    acc += c[3 * (di + 1) + (dj + 1)] * x[n + di * ny + dj];
            y[n] = acc;
        }
    }
}

void apply_stencil(const Stencil& s, const double* x, double* y) {
    if (par::serial_mode())
        apply_stencil_serial(s, x, y);
    else
        apply_stencil_omp(s, x, y);
}

}  // namespace kernels

namespace {

// Element stiffness of one cell for the transformed form; local node
// order (i,j), (i+1,j), (i,j+1), (i+1,j+1).
void element_stiffness(double dxi, double deta, double f0, double df0,
                       double f1, double df1, double eta_lo, double K[4][4]) {
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) K[p][q] = 0.0;
    const double w = 0.25 * dxi * deta;
    for (int gu = 0; gu < 2; ++gu) {
        const double u = 0.5 + (gu == 0 ? -kGaussOff : kGaussOff);
        const double fu = gu == 0 ? f0 : f1;
        const double dfu = gu == 0 ? df0 : df1;
        for (int gv = 0; gv < 2; ++gv) {
            const double v = 0.5 + (gv == 0 ? -kGaussOff : kGaussOff);
            const double eta = eta_lo + v * deta;
            const Coef A = coef_at(fu, dfu, eta);
            // grad of bilinear shapes at (u, v)
            const double gx[4] = {-(1.0 - v) / dxi, (1.0 - v) / dxi, -v / dxi,
                                  v / dxi};
            const double gy[4] = {-(1.0 - u) / deta, -u / deta, (1.0 - u) / deta,
                                  u / deta};
            for (int p = 0; p < 4; ++p) {
                const double ax = A.a11 * gx[p] + A.a12 * gy[p];
                const double ay = A.a12 * gx[p] + A.a22 * gy[p];
                for (int q = p; q < 4; ++q)
                    K[p][q] += w * (ax * gx[q] + ay * gy[q]);
            }
        }
    }
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < p; ++q) K[p][q] = K[q][p];
}

// Width and slope at the two Gauss stations of every cell column; stored in
// the grid so the solve and every later energy evaluation use the exact same
// quadratic form (the discrete Dirichlet principle depends on this).
void fill_gauss_columns(FieldGrid& g, const CurveFun& fn) {
    const std::size_t ncx = g.nx - 1;
    const double dxi = (g.x_hi - g.x_lo) / static_cast<double>(ncx);
    g.gauss_f.resize(2 * ncx);
    g.gauss_df.resize(2 * ncx);
    for (std::size_t i = 0; i < ncx; ++i) {
        for (int gu = 0; gu < 2; ++gu) {
            const double u = 0.5 + (gu == 0 ? -kGaussOff : kGaussOff);
            const double x = g.x_lo + (static_cast<double>(i) + u) * dxi;
            g.gauss_f[2 * i + gu] = std::max(fn.f(x), 0.0);
            g.gauss_df[2 * i + gu] = fn.df(x);
        }
    }
}

kernels::Stencil assemble(const FieldGrid& g, const std::vector<double>& fg,
                          const std::vector<double>& dfg,
                          const std::vector<unsigned char>& free_node) {
    kernels::Stencil s;
    s.nx = g.nx;
    s.ny = g.ny;
    s.free_node = free_node;
    s.coef.assign(g.nx * g.ny * 9, 0.0);
    const std::size_t ncx = g.nx - 1, ncy = g.ny - 1;
    const double dxi = (g.x_hi - g.x_lo) / static_cast<double>(ncx);
    const double deta = 1.0 / static_cast<double>(ncy);

    // per-cell element matrices
    std::vector<double> cell(ncx * ncy * 16);
    par::for_each(static_cast<std::ptrdiff_t>(ncx), [&](std::ptrdiff_t ci) {
        const double f0 = fg[2 * static_cast<std::size_t>(ci)];
        const double f1 = fg[2 * static_cast<std::size_t>(ci) + 1];
        const double d0 = dfg[2 * static_cast<std::size_t>(ci)];
        const double d1 = dfg[2 * static_cast<std::size_t>(ci) + 1];
        double K[4][4];
        for (std::size_t cj = 0; cj < ncy; ++cj) {
            element_stiffness(dxi, deta, f0, d0, f1, d1,
                              static_cast<double>(cj) * deta, K);
            double* dst = &cell[(static_cast<std::size_t>(ci) * ncy + cj) * 16];
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) dst[4 * p + q] = K[p][q];
        }
    });

    // gather per-node 9-point rows; local node p of cell (ci,cj) is the
    // grid node (ci + p%2, cj + p/2)
    par::for_each(static_cast<std::ptrdiff_t>(g.nx), [&](std::ptrdiff_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < g.ny; ++j) {
            double* row = &s.coef[(i * g.ny + j) * 9];
            for (int p = 0; p < 4; ++p) {
                const int pu = p % 2, pv = p / 2;
                const std::ptrdiff_t ci = static_cast<std::ptrdiff_t>(i) - pu;
                const std::ptrdiff_t cj = static_cast<std::ptrdiff_t>(j) - pv;
                if (ci < 0 || cj < 0 ||
                    ci >= static_cast<std::ptrdiff_t>(ncx) ||
                    cj >= static_cast<std::ptrdiff_t>(ncy))
                    continue;
                const double* K =
                    &cell[(static_cast<std::size_t>(ci) * ncy +
                           static_cast<std::size_t>(cj)) * 16];
                for (int q = 0; q < 4; ++q) {
                    const int qu = q % 2, qv = q / 2;
                    const int di = qu - pu, dj = qv - pv;
                    row[3 * (di + 1) + (dj + 1)] += K[4 * p + q];
                }
            }
        }
    });

    s.diag.resize(g.nx * g.ny);
    for (std::size_t n = 0; n < g.nx * g.ny; ++n)
        s.diag[n] = s.coef[n * 9 + 4] > 0.0 ? s.coef[n * 9 + 4] : 1.0;
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return par::block_sum(static_cast<std::ptrdiff_t>(a.size()),
                          [&](std::ptrdiff_t i) { return a[i] * b[i]; });
}

// Preconditioned CG over the free nodes; theta carries the Dirichlet values
// and is updated in place.
void cg_solve(const kernels::Stencil& st, FieldGrid& g,
              const SolveOptions& opts) {
    const std::size_t n = g.nx * g.ny;
    std::vector<double> r(n, 0.0), z(n, 0.0), p(n, 0.0), Ap(n, 0.0);

    // r = -A theta on free nodes (theta includes boundary data)
    kernels::apply_stencil(st, g.theta.data(), r.data());
    for (std::size_t k = 0; k < n; ++k) r[k] = st.free_node[k] ? -r[k] : 0.0;

    // reference scale: residual with zero interior
    double bnorm;
    {
        std::vector<double> zero = g.theta;
        for (std::size_t k = 0; k < n; ++k)
            if (st.free_node[k]) zero[k] = 0.0;
        kernels::apply_stencil(st, zero.data(), Ap.data());
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (st.free_node[k]) s += Ap[k] * Ap[k];
        bnorm = std::sqrt(s);
        if (bnorm <= 0.0) bnorm = 1.0;
    }

    const long cap = opts.max_iterations > 0
                         ? opts.max_iterations
                         : 50l * static_cast<long>(g.nx) *
                               static_cast<long>(g.ny);
    double rnorm = std::sqrt(dot(r, r));
    long it = 0;
    if (rnorm > opts.tolerance * bnorm) {
        for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / st.diag[k];
        for (std::size_t k = 0; k < n; ++k)
            if (!st.free_node[k]) z[k] = 0.0;
        p = z;
        double rz = dot(r, z);
        for (; it < cap; ++it) {
            kernels::apply_stencil(st, p.data(), Ap.data());
            const double pAp = dot(p, Ap);
            if (!(pAp > 0.0)) break;
            const double alpha = rz / pAp;
            for (std::size_t k = 0; k < n; ++k)
                if (st.free_node[k]) {
                    g.theta[k] += alpha * p[k];
                    r[k] -= alpha * Ap[k];
                }
            rnorm = std::sqrt(dot(r, r));
            if (rnorm <= opts.tolerance * bnorm) {
                ++it;
                break;
            }
            double rz_new = 0.0;
            for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / st.diag[k];
            for (std::size_t k = 0; k < n; ++k)
                if (!st.free_node[k]) z[k] = 0.0;
            rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t k = 0; k < n; ++k)
                p[k] = z[k] + beta * p[k];
        }
    }
    g.cg_iterations = static_cast<std::size_t>(it);
    g.cg_residual = rnorm / bnorm;
    if (g.cg_residual > opts.tolerance)
        throw Error(ErrorKind::solver_failure,
                    "CG did not converge: relative residual " +
                        std::to_string(g.cg_residual));
}

FieldGrid make_droplet_grid(const GraphCurve& curve, std::size_t nx,
                            std::size_t ny,
                            const std::function<double(double)>& data,
                            const SolveOptions& opts, const CurveFun& fn) {
    if (nx < 33 || ny < 17)
        throw Error(ErrorKind::domain_error, "resolution must be >= 33 x 17");
    FieldGrid g;
    g.nx = nx;
    g.ny = ny;
    g.x_lo = -curve.a;
    g.x_hi = curve.a;
    g.width.resize(nx);
    g.dwidth.resize(nx);
    g.top.resize(nx);
    g.bottom.assign(nx, 0.0);
    double fmax = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        g.width[i] = std::max(0.0, fn.f(g.xi(i)));
        fmax = std::max(fmax, g.width[i]);
    }
    g.width.front() = 0.0;
    g.width.back() = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        g.dwidth[i] = fn.df(g.xi(i));
        g.top[i] = data(g.xi(i));
    }
    if (!std::isfinite(g.top.front())) g.top.front() = g.top[1];
    if (!std::isfinite(g.top.back())) g.top.back() = g.top[nx - 2];
    if (!std::isfinite(g.dwidth.front())) g.dwidth.front() = g.dwidth[1];
    if (!std::isfinite(g.dwidth.back())) g.dwidth.back() = g.dwidth[nx - 2];

    const double floor = fmax * opts.clip_rel;
    if (opts.fixed_clip_left >= 0 && opts.fixed_clip_right >= 0) {
        // explicit margins: the caller owns the conditioning trade-off (the
        // optimizer freezes them so perturbed solves share one functional)
        g.clip_left = std::max<std::size_t>(
            static_cast<std::size_t>(opts.fixed_clip_left), 1);
        g.clip_right = std::max<std::size_t>(
            static_cast<std::size_t>(opts.fixed_clip_right), 1);
    } else {
        std::size_t cl = 0;
        while (cl < nx && g.width[cl] < floor) ++cl;
        std::size_t cr = 0;
        while (cr < nx && g.width[nx - 1 - cr] < floor) ++cr;
        g.clip_left = std::max<std::size_t>(cl, 1);
        g.clip_right = std::max<std::size_t>(cr, 1);
        if (g.clip_left + g.clip_right >
            static_cast<std::size_t>(opts.max_clip_fraction *
                                     static_cast<double>(nx)))
            throw Error(ErrorKind::degenerate_domain,
                        "width below floor over too many columns");
        for (std::size_t i = g.clip_left; i + g.clip_right < nx; ++i)
            if (g.width[i] < floor)
                throw Error(ErrorKind::degenerate_domain,
                            "width below floor in the interior");
    }

    // linear-in-eta start; exact data on the clipped columns
    g.theta.assign(nx * ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            g.at(i, j) = g.eta(j) * g.top[i];
    fill_gauss_columns(g, fn);
    return g;
}

std::vector<unsigned char> droplet_free_mask(const FieldGrid& g) {
    std::vector<unsigned char> free_node(g.nx * g.ny, 0);
    for (std::size_t i = g.clip_left; i + g.clip_right < g.nx; ++i)
        for (std::size_t j = 1; j + 1 < g.ny; ++j)
            free_node[i * g.ny + j] = 1;
    return free_node;
}

}  // namespace

namespace kernels {

Stencil assemble_stencil(const FieldGrid& g) {
    return assemble(g, g.gauss_f, g.gauss_df, droplet_free_mask(g));
}

}  // namespace kernels

AngleField solve_harmonic_with_data(const GraphCurve& curve, std::size_t nx,
                                    std::size_t ny,
                                    const std::function<double(double)>& data,
                                    const SolveOptions& opts) {
    validate(curve);
    if (!(opts.tolerance > 0.0))
        throw Error(ErrorKind::domain_error, "tolerance must be positive");
    const CurveFun fn(curve);
    AngleField out{curve, make_droplet_grid(curve, nx, ny, data, opts, fn)};
    const auto st = assemble(out.grid, out.grid.gauss_f, out.grid.gauss_df,
                             droplet_free_mask(out.grid));
    cg_solve(st, out.grid, opts);
    return out;
}

AngleField solve_harmonic(const GraphCurve& curve, std::size_t nx,
                          std::size_t ny, const SolveOptions& opts) {
    const CurveFun fn(curve);
    return solve_harmonic_with_data(
        curve, nx, ny, [&fn](double x) { return std::atan(fn.df(x)); }, opts);
}

AngleField linear_extension_with_data(
    const GraphCurve& curve, std::size_t nx, std::size_t ny,
    const std::function<double(double)>& data, const SolveOptions& opts) {
    validate(curve);
    const CurveFun fn(curve);
    return AngleField{curve, make_droplet_grid(curve, nx, ny, data, opts, fn)};
}

AngleField linear_extension(const GraphCurve& curve, std::size_t nx,
                            std::size_t ny, const SolveOptions& opts) {
    const CurveFun fn(curve);
    return linear_extension_with_data(
        curve, nx, ny, [&fn](double x) { return std::atan(fn.df(x)); }, opts);
}

TestDomainField solve_test_domain(
    double x_lo, double x_hi, const std::function<double(double)>& width,
    const std::function<double(double)>& dwidth,
    const std::function<double(double, double)>& data, std::size_t nx,
    std::size_t ny, const SolveOptions& opts) {
    if (nx < 17 || ny < 9)
        throw Error(ErrorKind::domain_error, "test-domain grid too coarse");
    TestDomainField out;
    FieldGrid& g = out.grid;
    g.nx = nx;
    g.ny = ny;
    g.x_lo = x_lo;
    g.x_hi = x_hi;
    g.width.resize(nx);
    g.dwidth.resize(nx);
    g.top.resize(nx);
    g.bottom.resize(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.xi(i);
        g.width[i] = width(x);
        if (!(g.width[i] > 0.0))
            throw Error(ErrorKind::degenerate_domain,
                        "test domain width must be positive");
        g.dwidth[i] = dwidth(x);
        g.top[i] = data(x, g.width[i]);
        g.bottom[i] = data(x, 0.0);
    }
    g.clip_left = 1;
    g.clip_right = 1;
    g.theta.assign(nx * ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const double eta = g.eta(j);
            const bool bdy = i == 0 || i + 1 == nx || j == 0 || j + 1 == ny;
            g.at(i, j) = bdy ? data(g.xi(i), eta * g.width[i])
                             : (1.0 - eta) * g.bottom[i] + eta * g.top[i];
        }
    std::vector<unsigned char> free_node(nx * ny, 0);
    for (std::size_t i = 1; i + 1 < nx; ++i)
        for (std::size_t j = 1; j + 1 < ny; ++j) free_node[i * ny + j] = 1;
    const std::size_t ncx = nx - 1;
    const double dxi = (x_hi - x_lo) / static_cast<double>(ncx);
    g.gauss_f.resize(2 * ncx);
    g.gauss_df.resize(2 * ncx);
    for (std::size_t i = 0; i < ncx; ++i)
        for (int gu = 0; gu < 2; ++gu) {
            const double u = 0.5 + (gu == 0 ? -kGaussOff : kGaussOff);
            const double x = x_lo + (static_cast<double>(i) + u) * dxi;
            g.gauss_f[2 * i + gu] = width(x);
            g.gauss_df[2 * i + gu] = dwidth(x);
        }
    const auto st = assemble(g, g.gauss_f, g.gauss_df, free_node);
    cg_solve(st, g, opts);
    return out;
}

double dirichlet_energy(const FieldGrid& g) {
    const std::size_t ncx = g.nx - 1, ncy = g.ny - 1;
    const double dxi = (g.x_hi - g.x_lo) / static_cast<double>(ncx);
    const double deta = 1.0 / static_cast<double>(ncy);
    const std::vector<double>& fg = g.gauss_f;
    const std::vector<double>& dfg = g.gauss_df;
    return par::block_sum(
        static_cast<std::ptrdiff_t>(ncx * ncy), [&](std::ptrdiff_t c) {
            const std::size_t ci = static_cast<std::size_t>(c) / ncy;
            const std::size_t cj = static_cast<std::size_t>(c) % ncy;
            const double t00 = g.at(ci, cj), t10 = g.at(ci + 1, cj);
            const double t01 = g.at(ci, cj + 1), t11 = g.at(ci + 1, cj + 1);
            double acc = 0.0;
            const double w = 0.25 * dxi * deta;
            for (int gu = 0; gu < 2; ++gu) {
                const double u = 0.5 + (gu == 0 ? -kGaussOff : kGaussOff);
                const double f = fg[2 * ci + gu];
                const double df = dfg[2 * ci + gu];
                for (int gv = 0; gv < 2; ++gv) {
                    const double v = 0.5 + (gv == 0 ? -kGaussOff : kGaussOff);
                    const double eta = (static_cast<double>(cj) + v) * deta;
                    const double tx =
                        ((1.0 - v) * (t10 - t00) + v * (t11 - t01)) / dxi;
                    const double ty =
                        ((1.0 - u) * (t01 - t00) + u * (t11 - t10)) / deta;
                    const Coef A = coef_at(f, df, eta);
                    acc += w * (A.a11 * tx * tx + 2.0 * A.a12 * tx * ty +
                                A.a22 * ty * ty);
                }
            }
            return acc;
        });
}

namespace {

// one-sided second-order eta derivative at the top/bottom row
double deta_top(const FieldGrid& g, std::size_t i) {
    const std::size_t J = g.ny - 1;
    const double deta = 1.0 / static_cast<double>(g.ny - 1);
    return (3.0 * g.at(i, J) - 4.0 * g.at(i, J - 1) + g.at(i, J - 2)) /
           (2.0 * deta);
}

double deta_bottom(const FieldGrid& g, std::size_t i) {
    const double deta = 1.0 / static_cast<double>(g.ny - 1);
    return (-3.0 * g.at(i, 0) + 4.0 * g.at(i, 1) - g.at(i, 2)) / (2.0 * deta);
}

std::vector<double> ddata_top(const FieldGrid& g) {
    const double dxi = (g.x_hi - g.x_lo) / static_cast<double>(g.nx - 1);
    std::vector<double> d(g.nx, 0.0);
    for (std::size_t i = 1; i + 1 < g.nx; ++i)
        d[i] = (g.top[i + 1] - g.top[i - 1]) / (2.0 * dxi);
    d[0] = (-3.0 * g.top[0] + 4.0 * g.top[1] - g.top[2]) / (2.0 * dxi);
    d[g.nx - 1] = (3.0 * g.top[g.nx - 1] - 4.0 * g.top[g.nx - 2] +
                   g.top[g.nx - 3]) /
                  (2.0 * dxi);
    return d;
}

}  // namespace

std::vector<double> dtn_trace(const FieldGrid& g) {
    if (g.ny < 4)
        throw Error(ErrorKind::domain_error, "grid too coarse for dtn stencil");
    const std::vector<double> bd = ddata_top(g);
    std::vector<double> q(g.nx, kNan);
    for (std::size_t i = g.clip_left; i + g.clip_right < g.nx; ++i) {
        const double fp = g.dwidth[i];
        const double ty = deta_top(g, i) / g.width[i];
        q[i] = (-fp * bd[i] + (1.0 + fp * fp) * ty) / std::hypot(1.0, fp);
    }
    return q;
}

BoundaryTrace boundary_trace(const AngleField& f) {
    const FieldGrid& g = f.grid;
    BoundaryTrace t;
    t.clip_left = g.clip_left;
    t.clip_right = g.clip_right;
    t.x.resize(g.nx);
    for (std::size_t i = 0; i < g.nx; ++i) t.x[i] = g.xi(i);
    t.data = g.top;
    t.ddata = ddata_top(g);
    t.slope = g.dwidth;
    t.dnu.assign(g.nx, kNan);
    t.theta_x.assign(g.nx, kNan);
    t.theta_y.assign(g.nx, kNan);
    // Traces cover every interior column. Within the clipped margins the
    // stored values are the interpolated data, whose eta-linear profile is
    // the leading cusp asymptotic; shape-derivative integrands keep an O(1)
    // density right up to the contact points, so the margins must not be
    // dropped there (consumers that do want the margins masked read
    // clip_left/clip_right).
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        const double fp = g.dwidth[i];
        t.theta_y[i] = deta_top(g, i) / g.width[i];
        t.theta_x[i] = t.ddata[i] - fp * t.theta_y[i];
        t.dnu[i] = (-fp * t.ddata[i] + (1.0 + fp * fp) * t.theta_y[i]) /
                   std::hypot(1.0, fp);
    }
    return t;
}

namespace {

// trapezoid weight over a contiguous index range
double trap_w(std::size_t i, std::size_t lo, std::size_t hi) {
    return (i == lo || i == hi) ? 0.5 : 1.0;
}

}  // namespace

double green_identity_defect(const AngleField& f) {
    const FieldGrid& g = f.grid;
    const std::vector<double> bd = ddata_top(g);
    const double dxi = (g.x_hi - g.x_lo) / static_cast<double>(g.nx - 1);
    // The flux density Theta dTheta/dnu stays O(1) into the clipped margins
    // and has a finite nonzero limit at the contact points; interior columns
    // are evaluated directly and the endpoint columns by extrapolation.
    std::vector<double> phi(g.nx, 0.0);
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        const double fp = g.dwidth[i];
        const double ty = deta_top(g, i) / g.width[i];
        const double q = (-fp * bd[i] + (1.0 + fp * fp) * ty) /
                         std::hypot(1.0, fp);
        phi[i] = g.top[i] * q * std::hypot(1.0, fp);
    }
    phi[0] = 2.0 * phi[1] - phi[2];
    phi[g.nx - 1] = 2.0 * phi[g.nx - 2] - phi[g.nx - 3];
    double flux = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i)
        flux += trap_w(i, 0, g.nx - 1) * phi[i] * dxi;
    const double e = dirichlet_energy(g);
    return std::abs(flux - e) / std::max(e, 1e-300);
}

double green_identity_defect(const TestDomainField& f) {
    const FieldGrid& g = f.grid;
    const double dxi = (g.x_hi - g.x_lo) / static_cast<double>(g.nx - 1);
    const double deta = 1.0 / static_cast<double>(g.ny - 1);
    const std::vector<double> bd = ddata_top(g);
    double flux = 0.0;
    // top edge: dH = sqrt(1 + f'^2) dxi
    for (std::size_t i = 0; i < g.nx; ++i) {
        const double fp = g.dwidth[i];
        const double ty = deta_top(g, i) / g.width[i];
        const double q = (-fp * bd[i] + (1.0 + fp * fp) * ty) /
                         std::hypot(1.0, fp);
        flux += trap_w(i, 0, g.nx - 1) * g.top[i] * q *
                std::hypot(1.0, fp) * dxi;
    }
    // bottom edge: outward normal (0,-1)
    for (std::size_t i = 0; i < g.nx; ++i) {
        const double q = -deta_bottom(g, i) / g.width[i];
        flux += trap_w(i, 0, g.nx - 1) * g.bottom[i] * q * dxi;
    }
    // lateral edges: outward normal (+-1, 0), dH = f dEta
    for (std::size_t side = 0; side < 2; ++side) {
        const bool right = side == 1;
        const std::size_t i = right ? g.nx - 1 : 0;
        const double sgn = right ? 1.0 : -1.0;
        const double fcol = g.width[i], dcol = g.dwidth[i];
        for (std::size_t j = 0; j < g.ny; ++j) {
            double txi;
            if (right)
                txi = (3.0 * g.at(i, j) - 4.0 * g.at(i - 1, j) +
                       g.at(i - 2, j)) /
                      (2.0 * dxi);
            else
                txi = (-3.0 * g.at(0, j) + 4.0 * g.at(1, j) - g.at(2, j)) /
                      (2.0 * dxi);
            double teta;
            if (j == 0)
                teta = deta_bottom(g, i);
            else if (j + 1 == g.ny)
                teta = deta_top(g, i);
            else
                teta = (g.at(i, j + 1) - g.at(i, j - 1)) / (2.0 * deta);
            const double ux = txi - g.eta(j) * (dcol / fcol) * teta;
            flux += trap_w(j, 0, g.ny - 1) * g.at(i, j) * sgn * ux * fcol *
                    deta;
        }
    }
    const double e = dirichlet_energy(g);
    return std::abs(flux - e) / std::max(e, 1e-300);
}

void write_field_csv(const FieldGrid& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out.precision(17);
    out << "xi,eta,theta\n";
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t j = 0; j < g.ny; ++j)
            out << g.xi(i) << "," << g.eta(j) << "," << g.at(i, j) << "\n";
}

}  // namespace tactoid
