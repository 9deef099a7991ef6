#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tactoid/error.hpp"

namespace tactoid {

// Half-integer cosine series h(x) = sum_k c_k cos((k+1/2) pi x / a).
// Every basis element vanishes at x = +-a, so f = h^2 is automatically
// nonnegative with pinned endpoints.
struct SpectralForm {
    double a = 1.0;
    std::vector<double> coeff;

    double omega(std::size_t k) const;
    double h(double x) const;
    double dh(double x) const;
    double d2h(double x) const;
    double f(double x) const { double v = h(x); return v * v; }
    double df(double x) const { return 2.0 * h(x) * dh(x); }
    double d2f(double x) const {
        const double hv = h(x), h1 = dh(x);
        return 2.0 * (h1 * h1 + hv * d2h(x));
    }
};

// Closed-form evaluator attached to builtin curves; file-loaded curves
// carry samples only.
struct AnalyticForm {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;  // optional
};

// Droplet upper boundary as the graph of f >= 0 on [-a, a], f(+-a) = 0.
struct GraphCurve {
    double a = 1.0;
    std::vector<double> x;
    std::vector<double> f;
    std::optional<SpectralForm> spectral;
    std::shared_ptr<const AnalyticForm> analytic;

    std::size_t size() const { return x.size(); }
};

// Arc-length sampled curve (x(t_j), y(t_j)) with equal arc steps.
struct ParametricCurve {
    std::vector<std::array<double, 2>> pts;
    double total_length = 0.0;

    std::size_t size() const { return pts.size(); }
};

struct Domain {
    GraphCurve curve;
    double volume = 0.0;
};

// Grids
std::vector<double> uniform_grid(double a, std::size_t n);
// Cosine-clustered grid; resolves the endpoint cusps of minimizers.
std::vector<double> graded_grid(double a, std::size_t n);

// Validation (throws Error{malformed_curve} on violation).
void validate(const GraphCurve& c);
void validate(const ParametricCurve& c);

// Smooth point access: analytic > spectral > cubic spline of the samples.
class CurveFun {
  public:
    explicit CurveFun(const GraphCurve& c);
    double f(double x) const;
    double df(double x) const;
    double d2f(double x) const;
    double a() const { return a_; }
    // false when the slope blows up at the contact points (semicircle).
    bool finite_end_slopes() const;

  private:
    double a_ = 1.0;
    std::shared_ptr<const AnalyticForm> analytic_;
    std::optional<SpectralForm> spectral_;
    // natural cubic spline fallback
    std::vector<double> sx_, sy_, sm_;
    double spline(double x) const;
    double spline_d(double x) const;
    double spline_d2(double x) const;
};

// Measure quantities
double volume(const GraphCurve& c);
double perimeter(const GraphCurve& c);
double perimeter(const ParametricCurve& c);

// Isotropic dilation to the target area; Dirichlet energy of any
// transported angle field is unchanged.
GraphCurve rescale_to_volume(const GraphCurve& c, double v_target);

// Vertical-only compression (x, f) -> (x, m f); the T_eps operator.
GraphCurve vertical_scale(const GraphCurve& c, double m);

// Equal arc-length resampling.
ParametricCurve to_parametric(const GraphCurve& c, std::size_t n_points);

// Trace of the boundary angle: arctan f'(x_i) per sample for graphs,
// arcsin y'(t_j) for unit-speed parametric curves.
std::vector<double> boundary_angle(const GraphCurve& c);
std::vector<double> boundary_angle(const ParametricCurve& c);

// Slopes f'(x_i) at the curve's own samples.
std::vector<double> slopes(const GraphCurve& c);

// Builtins
GraphCurve make_gamma0(std::size_t n = 1025);
GraphCurve make_semicircle(std::size_t n = 2049);
GraphCurve make_cosine(std::size_t n = 1025, double amplitude = 1.0);
GraphCurve make_cusped_semicircle(double eps, std::size_t n = 2049);
GraphCurve make_profile_g(std::size_t n = 1025);
GraphCurve from_spectral(SpectralForm s, std::size_t n = 1025,
                         bool graded = false);
// Parses gamma0 | semicircle | cosine | cusped:EPS | profile_g.
GraphCurve make_builtin(const std::string& name);

// I/O: CSV with header `x,y`; spectral form as a structured-text record.
GraphCurve read_curve_csv(const std::string& path);
void write_curve_csv(const GraphCurve& c, const std::string& path);
GraphCurve read_curve_spectral(const std::string& path);
void write_curve_spectral(const GraphCurve& c, const std::string& path);

}  // namespace tactoid
