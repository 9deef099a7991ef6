#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tactoid/curve.hpp"

namespace tactoid {

// Discrete angle field on the mapped rectangle (xi, eta) in
// [x_lo, x_hi] x [0, 1], eta = y / f(xi). Row-major grid, eta fastest.
struct FieldGrid {
    std::size_t nx = 0, ny = 0;
    double x_lo = 0.0, x_hi = 0.0;
    std::vector<double> theta;       // nx * ny values
    std::vector<double> width;       // f(xi_i) per column
    std::vector<double> dwidth;      // f'(xi_i) per column
    std::vector<double> gauss_f;     // f at the 2 Gauss stations per cell
    std::vector<double> gauss_df;    // f' at the 2 Gauss stations per cell
    std::vector<double> top;         // Dirichlet data at eta = 1
    std::vector<double> bottom;      // Dirichlet data at eta = 0
    std::size_t clip_left = 0;       // Dirichlet-interpolated endpoint columns
    std::size_t clip_right = 0;
    std::size_t cg_iterations = 0;
    double cg_residual = 0.0;

    double xi(std::size_t i) const {
        return x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                          static_cast<double>(nx - 1);
    }
    double eta(std::size_t j) const {
        return static_cast<double>(j) / static_cast<double>(ny - 1);
    }
    double& at(std::size_t i, std::size_t j) { return theta[i * ny + j]; }
    double at(std::size_t i, std::size_t j) const { return theta[i * ny + j]; }
};

struct AngleField {
    GraphCurve curve;
    FieldGrid grid;
};

// Verification harness: arbitrary positive-width graph domain with
// Dirichlet data prescribed on all four sides.
struct TestDomainField {
    FieldGrid grid;
};

struct SolveOptions {
    double tolerance = 1e-10;
    double clip_rel = 1e-3;          // clip columns with f < max(f) * clip_rel
    double max_clip_fraction = 0.25; // more than this -> degenerate domain
    long max_iterations = 0;         // 0 -> 50 * nx * ny
    // fixed clip column counts (used to freeze the clip set across
    // finite-difference perturbations); negative -> derive from clip_rel
    long fixed_clip_left = -1;
    long fixed_clip_right = -1;
};

// Solves the coordinate-transformed Laplace equation with data Theta = 0 on
// eta = 0 and Theta = arctan f' on eta = 1 by minimizing the transformed
// Dirichlet form (Q1 elements, 2x2 Gauss points, Jacobi-preconditioned CG).
AngleField solve_harmonic(const GraphCurve& curve, std::size_t nx,
                          std::size_t ny, const SolveOptions& opts = {});

// Same solve with top boundary data overridden (the arcsin-vs-arctan
// comparison needs this).
AngleField solve_harmonic_with_data(const GraphCurve& curve, std::size_t nx,
                                    std::size_t ny,
                                    const std::function<double(double)>& data,
                                    const SolveOptions& opts = {});

// The linear-in-eta extension Theta = eta * data(xi); no solve.
AngleField linear_extension(const GraphCurve& curve, std::size_t nx,
                            std::size_t ny, const SolveOptions& opts = {});
AngleField linear_extension_with_data(
    const GraphCurve& curve, std::size_t nx, std::size_t ny,
    const std::function<double(double)>& data, const SolveOptions& opts = {});

// Verification solve on the domain 0 <= y <= width(x), x in [x_lo, x_hi],
// with Dirichlet data(x, y) on all of the boundary.
TestDomainField solve_test_domain(
    double x_lo, double x_hi, const std::function<double(double)>& width,
    const std::function<double(double)>& dwidth,
    const std::function<double(double, double)>& data, std::size_t nx,
    std::size_t ny, const SolveOptions& opts = {});

// Transformed-form Dirichlet energy of the stored grid values; for solved
// fields this is exactly the quadratic form the solver minimized.
double dirichlet_energy(const FieldGrid& g);
inline double dirichlet_energy(const AngleField& f) {
    return dirichlet_energy(f.grid);
}
inline double dirichlet_energy(const TestDomainField& f) {
    return dirichlet_energy(f.grid);
}

// Outward normal derivative on the top boundary, physical coordinates,
// per grid column (clipped columns excluded -> NaN).
std::vector<double> dtn_trace(const FieldGrid& g);
inline std::vector<double> dtn_trace(const AngleField& f) {
    return dtn_trace(f.grid);
}

// |int_bdy Theta dTheta/dnu - int |grad Theta|^2| / int |grad Theta|^2.
// For droplet fields only the top boundary carries data; for test domains
// all four sides contribute.
double green_identity_defect(const AngleField& f);
double green_identity_defect(const TestDomainField& f);

// Boundary traces on the top edge needed by the shape derivative: value,
// tangential derivative of the data, dTheta/dnu, Theta_x, Theta_y.
struct BoundaryTrace {
    std::vector<double> x;         // xi per column
    std::vector<double> data;      // Theta on Gamma
    std::vector<double> ddata;     // d/dx of the data
    std::vector<double> dnu;       // dTheta/dnu
    std::vector<double> theta_x;
    std::vector<double> theta_y;
    std::vector<double> slope;     // f'
    std::size_t clip_left = 0, clip_right = 0;
};
BoundaryTrace boundary_trace(const AngleField& f);

// Field dump: CSV grid `xi,eta,theta` plus a sidecar metadata record.
void write_field_csv(const FieldGrid& g, const std::string& path);

// The 9-point stencil the CG solve applies. The OpenMP kernel is the
// production path; the serial loop is the reference the tests and the
// benchmark compare against.
namespace kernels {

struct Stencil {
    std::size_t nx = 0, ny = 0;
    std::vector<double> coef;              // nx*ny*9, (di,dj) -> 3*(di+1)+(dj+1)
    std::vector<unsigned char> free_node;  // 1 for unknowns
    std::vector<double> diag;
};

void apply_stencil_serial(const Stencil& s, const double* x, double* y);
void apply_stencil_omp(const Stencil& s, const double* x, double* y);
void apply_stencil(const Stencil& s, const double* x, double* y);

// Rebuilds the solve stencil of a droplet field from its stored grid.
Stencil assemble_stencil(const FieldGrid& g);

}  // namespace kernels

}  // namespace tactoid
