#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tactoid/energy.hpp"
#include "tactoid/optimize.hpp"

namespace tactoid {

struct SweepResult {
    std::vector<double> params;            // v or eps
    std::vector<EnergyReport> reports;
    std::vector<double> gaps;              // |value - target| per point
    double limit_target = 0.0;
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;
    double endpoint_slope = 0.0;           // two-point slope cross-check
    bool under_resolved = false;           // fits disagree by > 0.1
    // small-volume extras
    std::vector<double> dirichlet_over_eps;
    std::vector<double> total_physical;
    double total_exponent = 0.0;
    std::vector<double> profile_l2;        // optimized-profile distance to g
};

// 1-D reduction of the linear-in-eta extension energy,
//   dy = int arctan(f')^2 / f,  dx = int (f^3/3) |d/dx(arctan(f')/f)|^2.
struct LinExt1D {
    double dy = 0.0;
    double dx = 0.0;
};
LinExt1D linear_extension_dirichlet_1d(const GraphCurve& curve);

// Lemma's witness curve (eps/2)(cos x + 1); the paper states it on [-1,1]
// where it does not reach the axis, so it is built on [-pi, pi] where it is
// an admissible graph.
GraphCurve make_witness(double eps, std::size_t n = 1025);

struct SweepOptions {
    std::size_t nx = 513, ny = 129;
    bool optimize = false;
    std::size_t opt_K = 8;
    SolveOptions solver;
};

// E_v on the cusped-semicircle family with eps = v^{-1/4}; optional
// externally optimized curves evaluated alongside.
SweepResult large_volume_sweep(const std::vector<double>& v_list,
                               const SweepOptions& opts = {},
                               const std::vector<GraphCurve>* optimized = nullptr);

// Witness-curve sandwich c eps <= Dirichlet <= C eps, plus the coupled
// total-energy scaling at v = eps^2 on the recovery profile.
SweepResult small_volume_sweep(const std::vector<double>& eps_list,
                               const SweepOptions& opts = {});

// Max residual of h'' = -h / (4 (int h^2)^{3/2}) for the closed-form h.
double ode_check();
// Same residual for an arbitrary profile (perturbation studies).
double ode_residual_max(const std::function<double(double)>& h,
                        const std::function<double(double)>& d2h,
                        std::size_t n = 4097);

// Table of E_eps(f) against E0(f); the gap column uses the linear-extension
// surrogate of the lower-bound direction. params[0] = 0 holds E0(f) itself.
SweepResult gamma_convergence_table(const GraphCurve& f,
                                    const std::vector<double>& eps_list,
                                    const SweepOptions& opts = {});

}  // namespace tactoid
