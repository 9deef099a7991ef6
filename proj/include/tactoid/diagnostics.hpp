#pragma once

#include <cstddef>
#include <vector>

#include "tactoid/curve.hpp"

namespace tactoid {

struct RTable {
    std::vector<double> r;
    std::vector<double> value;
};

// sup over ordered sample triples t1 < t2 < t3 of
// max(|z1 z2|, |z2 z3|) / |z1 z3|; exhaustive for n <= 512.
double two_point_constant(const ParametricCurve& c);

// sup over sample pairs of arc length / chord length.
double chord_arc_constant(const ParametricCurve& c);

// per r: sup over pairs with chord <= r of arc/chord - 1.
RTable vanishing_modulus(const ParametricCurve& c,
                         const std::vector<double>& r_list);

struct CuspTables {
    RTable left;   // max of y/(x+a) within distance r of (-a, 0)
    RTable right;  // max of y/(a-x) within distance r of (a, 0)
};
CuspTables cusp_angle(const ParametricCurve& c,
                      const std::vector<double>& r_list);

// per r: sup over sampled centers of the mean oscillation of the unit
// normal over B(center, r) restricted to the curve.
RTable vmo_oscillation(const ParametricCurve& c,
                       const std::vector<double>& r_list);

struct WeilPetersson {
    double h32_seminorm = 0.0;
    double mobius_energy = 0.0;
    double beta_sq_integral = 0.0;
    std::vector<double> polygon_defect_partial_sums;
    // truncation metadata
    double h32_band = 0.0;
    std::size_t beta_levels = 0;
    double beta_t_min = 0.0, beta_t_max = 0.0;
    std::size_t polygon_max_level = 0;
};
WeilPetersson weil_petersson_suite(const ParametricCurve& c);

struct DiagnosticsReport {
    double two_point_constant = 0.0;
    double chord_arc_constant = 0.0;
    RTable vanishing_modulus;
    CuspTables cusp;
    RTable vmo;
    WeilPetersson wp;
    std::size_t n_samples = 0;
};

DiagnosticsReport diagnose(const ParametricCurve& c,
                           const std::vector<double>& r_list);

// Jones beta number of the sample window within distance t of center;
// least-max line fit by golden-section search over the line angle.
double beta_number(const ParametricCurve& c, std::size_t center, double t);

}  // namespace tactoid
