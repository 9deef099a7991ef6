#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "tactoid/curve.hpp"
#include "tactoid/field.hpp"

namespace tactoid {

enum class FunctionalId { E, Ev, Eeps, E0, F };

const char* to_string(FunctionalId id);

struct EnergyReport {
    FunctionalId functional = FunctionalId::E;
    double dirichlet = 0.0;       // raw Dirichlet integral (or elastic part of E0)
    double perimeter_term = 0.0;  // the length term as it enters `total`
    double perimeter = 0.0;       // raw curve length
    double volume = 0.0;
    double total = 0.0;
    double v_param = std::nan("");
    double eps_param = std::nan("");
    bool divergent = false;
    std::string note;
    std::size_t nx = 0, ny = 0;
    std::size_t clip_left = 0, clip_right = 0;
    std::size_t cg_iterations = 0;
    double cg_residual = 0.0;
};

struct TotalEnergyOptions {
    // rescale to this volume before evaluating (Problem-P normalization is
    // opt-in; raw functionals never silently rescale)
    std::optional<double> normalize_volume;
    // run the 3-grid refinement probe that drives the divergence flag
    bool probe_divergence = false;
    SolveOptions solver;
};

// E(Gamma) = int |grad Theta|^2 + l(Gamma)
EnergyReport total_energy(const GraphCurve& curve, std::size_t nx,
                          std::size_t ny, const TotalEnergyOptions& opts = {});

// E0(f) = int f'^2/f + 2/sqrt(int f); the h = sqrt(f) substitution
// (4 int h'^2) is used whenever a spectral form is present.
EnergyReport E0(const GraphCurve& curve);

// E_v(Gamma) = (1/sqrt v) int |grad Theta|^2 + l(Gamma)/sqrt|Omega|;
// perimeter_term carries the v-independent part F(Gamma).
EnergyReport E_v(const GraphCurve& curve, double v, std::size_t nx,
                 std::size_t ny, const SolveOptions& solver = {});

// F(Gamma) = l(Gamma)/sqrt|Omega| (no solve)
EnergyReport F_functional(const GraphCurve& curve);

struct EepsOptions {
    bool linear_extension = false;  // use the explicit extension, no solve
    SolveOptions solver;
};

// E_eps(f) = eps^{-2/3} int |grad Theta_{T_eps}|^2
//            + int sqrt(1 + eps^{4/3} f'^2) / sqrt(int f)
EnergyReport E_eps(const GraphCurve& curve, double eps, std::size_t nx,
                   std::size_t ny, const EepsOptions& opts = {});

struct BaselineReport {
    // adaptive quadrature of the three displayed terms
    double displayed_integral = 0.0;
    double displayed_perimeter_part = 0.0;
    double displayed_dy_part = 0.0;
    double displayed_dx_part = 0.0;
    // 2-D grid quadrature of the explicit extension + perimeter
    double grid_total = 0.0;
    double grid_dirichlet = 0.0;
    // harmonic solves with both boundary trace readings
    EnergyReport harmonic_arctan;
    double harmonic_arcsin_dirichlet = 0.0;
    double linear_arctan_dirichlet = 0.0;
    double paper_constant = 12.65;
    double deviation_from_paper = 0.0;
    std::size_t grid_nx = 0, grid_ny = 0;
};

// Evaluates the explicit baseline configuration: the displayed 1-D integral
// by adaptive quadrature, the same energy by 2-D grid quadrature, and the
// harmonic energies for both boundary-trace readings.
BaselineReport baseline_gamma0(std::size_t grid_nx = 1025,
                               std::size_t grid_ny = 257,
                               std::size_t solve_nx = 513,
                               std::size_t solve_ny = 129);

// Non-decaying-increment divergence test over three refinements.
bool increments_diverge(double v0, double v1, double v2);

}  // namespace tactoid
