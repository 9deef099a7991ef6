#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace tactoid::quad {

// Adaptive Simpson with absolute tolerance, recursion capped at max_depth.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_depth = 40);

// Composite trapezoid over tabulated samples (x ascending, same length).
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares slope/intercept of y against x. Returns {slope, intercept,
// rms residual}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// log-log power-law fit of y = C * x^p; x, y must be positive.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tactoid::quad
