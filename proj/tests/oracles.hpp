#pragma once

// Independent oracles for the test suite. These deliberately avoid the
// library's quadrature and geometry code paths: expected values asserted in
// the tests are computed here by brute force or by a separate integrator.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tactoid/curve.hpp"

namespace oracle {

// Romberg integration; independent of the library's adaptive Simpson.
inline double romberg(const std::function<double(double)>& f, double a,
                      double b, int levels = 18) {
    std::vector<std::vector<double>> R(levels);
    double h = b - a;
    R[0] = {0.5 * h * (f(a) + f(b))};
    for (int k = 1; k < levels; ++k) {
        h *= 0.5;
        double s = 0.0;
        const long m = 1l << (k - 1);
        for (long i = 0; i < m; ++i)
            s += f(a + (2.0 * static_cast<double>(i) + 1.0) * h);
        R[k].resize(static_cast<std::size_t>(k) + 1);
        R[k][0] = 0.5 * R[k - 1][0] + h * s;
        double p4 = 4.0;
        for (int j = 1; j <= k; ++j) {
            R[k][static_cast<std::size_t>(j)] =
                (p4 * R[k][static_cast<std::size_t>(j - 1)] -
                 R[k - 1][static_cast<std::size_t>(j - 1)]) /
                (p4 - 1.0);
            p4 *= 4.0;
        }
        if (k > 4 && std::abs(R[k][static_cast<std::size_t>(k)] -
                              R[k - 1][static_cast<std::size_t>(k - 1)]) <
                         1e-13 * (1.0 + std::abs(R[k][static_cast<std::size_t>(k)])))
            return R[k][static_cast<std::size_t>(k)];
    }
    return R[levels - 1][static_cast<std::size_t>(levels - 1)];
}

// central finite difference of a scalar functional
inline double central_diff(const std::function<double(double)>& phi,
                           double t = 1e-4) {
    return (phi(t) - phi(-t)) / (2.0 * t);
}

// Hausdorff distance between two polylines (symmetric, point-to-segment).
inline double hausdorff(const std::vector<std::array<double, 2>>& A,
                        const std::vector<std::array<double, 2>>& B) {
    auto one_sided = [](const std::vector<std::array<double, 2>>& P,
                        const std::vector<std::array<double, 2>>& Q) {
        double worst = 0.0;
        for (const auto& p : P) {
            double best = 1e300;
            for (std::size_t i = 0; i + 1 < Q.size(); ++i) {
                const double ax = Q[i][0], ay = Q[i][1];
                const double dx = Q[i + 1][0] - ax, dy = Q[i + 1][1] - ay;
                const double dd = dx * dx + dy * dy;
                double t = dd > 0.0 ? ((p[0] - ax) * dx + (p[1] - ay) * dy) / dd
                                    : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                best = std::min(best,
                                std::hypot(ax + t * dx - p[0], ay + t * dy - p[1]));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(A, B), one_sided(B, A));
}

// test curves for the diagnostics suite
inline tactoid::ParametricCurve segment_curve(std::size_t n) {
    tactoid::ParametricCurve c;
    for (std::size_t i = 0; i < n; ++i)
        c.pts.push_back({-1.0 + 2.0 * static_cast<double>(i) /
                                    static_cast<double>(n - 1),
                         0.0});
    c.total_length = 2.0;
    return c;
}

// tent with interior angle alpha at the apex, endpoints on the axis
inline tactoid::ParametricCurve corner_curve(double alpha, std::size_t n) {
    tactoid::ParametricCurve c;
    const double half = alpha / 2.0;
    const double apex_y = std::cos(half), base = std::sin(half);
    const std::size_t m = n / 2;
    for (std::size_t i = 0; i <= m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m);
        c.pts.push_back({-base + t * base, t * apex_y});
    }
    for (std::size_t i = 1; i <= m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m);
        c.pts.push_back({t * base, (1.0 - t) * apex_y});
    }
    c.total_length = 2.0;
    return c;
}

// upper unit semicircle sampled at equal arc steps
inline tactoid::ParametricCurve semicircle_arc(std::size_t n) {
    tactoid::ParametricCurve c;
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = pi * static_cast<double>(i) / static_cast<double>(n - 1);
        c.pts.push_back({-std::cos(phi), std::sin(phi)});
    }
    c.total_length = pi;
    return c;
}

}  // namespace oracle
