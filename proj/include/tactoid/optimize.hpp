#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tactoid/energy.hpp"

namespace tactoid {

// Coefficients of h in the half-integer cosine basis; f = h^2. Every basis
// element vanishes at +-a, so positivity and endpoint pinning are structural
// and the feasible set is unconstrained.
struct ShapeParams {
    std::vector<double> coeff;
    double a = 1.0;
};

struct OptimConfig {
    FunctionalId functional = FunctionalId::E;  // E (v-normalized), Ev, E0
    double v = 1.0;
    std::size_t K = 16;
    std::size_t nx = 257, ny = 65;
    std::size_t curve_samples = 1025;
    double tol = 1e-5;      // coefficient-space gradient norm
    std::size_t max_iter = 200;
    std::size_t max_grid_doublings = 0;  // refine when |grad| < 10 tol
    std::size_t checkpoint_every = 0;
    std::string checkpoint_dir;
    unsigned seed = 0;
    SolveOptions solver;
};

struct OptimResult {
    ShapeParams params;
    std::vector<double> energy_trace;
    std::vector<double> gradient_norm_trace;
    std::vector<std::size_t> grid_trace;  // nx per recorded iteration
    double lambda = 0.0;
    double el_residual = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t final_nx = 0, final_ny = 0;
    std::string note;
};

GraphCurve curve_from_params(const ShapeParams& p, std::size_t n = 1025);

// Scale-invariant objective driven by the optimizer:
//   E   : int|grad|^2 + sqrt(v) l(Gamma)/sqrt|Omega|
//   E_v : (1/sqrt v) int|grad|^2 + l(Gamma)/sqrt|Omega|
//   E0  : 4 int h'^2 + 2/sqrt(int h^2)   (exact in coefficient space)
double functional_value(const ShapeParams& p, const OptimConfig& cfg);

// One harmonic solve shared by all direction evaluations.
struct GradientContext {
    GraphCurve curve;
    BoundaryTrace trace;
    double dirichlet = 0.0;
    double length = 0.0;
    double vol = 0.0;
    double green_defect = 0.0;
    bool low_accuracy = false;  // Green-identity check > 10%
};

GradientContext make_gradient_context(const ShapeParams& p,
                                      const OptimConfig& cfg);
GradientContext make_gradient_context(const GraphCurve& curve,
                                      const OptimConfig& cfg);

// Boundary-form shape derivative along the perturbation f -> f + t g:
//   dF1 = int f' g' / sqrt(1+f'^2)
//   dF2 = int { 2 (dTheta/dnu) g'/sqrt(1+f'^2)
//               - 2 (dTheta/dnu) Theta_y g sqrt(1+f'^2) + g |grad Theta|^2 }
// assembled into the functional's derivative including the volume term.
double shape_gradient(const GradientContext& ctx, const OptimConfig& cfg,
                      const std::function<double(double)>& g,
                      const std::function<double(double)>& dg);

// Gradient along all K coefficient directions g_k = 2 h phi_k.
std::vector<double> coefficient_gradient(const GradientContext& ctx,
                                         const ShapeParams& p,
                                         const OptimConfig& cfg);

OptimResult minimize(const ShapeParams& start, const OptimConfig& cfg);

enum class ElMode { full, perimeter_only, e0 };

struct ElOptions {
    ElMode mode = ElMode::full;
    std::size_t nx = 513, ny = 129;
    SolveOptions solver;
};

struct ElResidual {
    double lambda = 0.0;
    double residual_norm = 0.0;
    std::vector<double> x;
    std::vector<double> profile;
    double green_defect = 0.0;
    bool low_accuracy = false;
};

// Pointwise Euler-Lagrange residual
//   R = -d/dx(f'/sqrt(1+f'^2)) - 2 d/dx((dTheta/dnu)/sqrt(1+f'^2))
//       - (dTheta/dnu)(dTheta/dy) sqrt(1+f'^2) + |grad Theta|^2
// evaluated on the non-clipped interior; lambda is the weighted mean of R
// and residual_norm the normalized L2 deviation from it.
ElResidual el_residual(const GraphCurve& curve, const ElOptions& opts = {});
ElResidual el_residual(const ShapeParams& p, const ElOptions& opts = {});

// Least-squares projection of a sampled curve onto K basis modes (used to
// seed the optimizer from a target shape).
ShapeParams fit_params(const GraphCurve& target, std::size_t K);

}  // namespace tactoid
