#include "tactoid/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "tactoid/quadrature.hpp"

namespace tactoid {

namespace {
constexpr double kPi = std::numbers::pi;
}

// ---------------------------------------------------------------------------
// SpectralForm

double SpectralForm::omega(std::size_t k) const {
    return (static_cast<double>(k) + 0.5) * kPi / a;
}

double SpectralForm::h(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k)
        s += coeff[k] * std::cos(omega(k) * x);
    return s;
}

double SpectralForm::dh(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        const double w = omega(k);
        s -= coeff[k] * w * std::sin(w * x);
    }
    return s;
}

double SpectralForm::d2h(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        const double w = omega(k);
        s -= coeff[k] * w * w * std::cos(w * x);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Grids

std::vector<double> uniform_grid(double a, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = -a + 2.0 * a * static_cast<double>(i) / static_cast<double>(n - 1);
    x.front() = -a;
    x.back() = a;
    return x;
}

std::vector<double> graded_grid(double a, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = -a * std::cos(kPi * static_cast<double>(i) /
                             static_cast<double>(n - 1));
    x.front() = -a;
    x.back() = a;
    return x;
}

// ---------------------------------------------------------------------------
// Validation

void validate(const GraphCurve& c) {
    if (c.size() < 3)
        throw Error(ErrorKind::malformed_curve, "need at least 3 samples");
    if (c.x.size() != c.f.size())
        throw Error(ErrorKind::malformed_curve, "x/f size mismatch");
    if (!(c.a > 0.0))
        throw Error(ErrorKind::malformed_curve, "half-width must be positive");
    if (c.x.front() != -c.a || c.x.back() != c.a)
        throw Error(ErrorKind::malformed_curve, "x range must be [-a, a]");
    if (c.f.front() != 0.0 || c.f.back() != 0.0)
        throw Error(ErrorKind::malformed_curve, "f must vanish at the endpoints");
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (!(c.x[i] < c.x[i + 1]))
            throw Error(ErrorKind::malformed_curve, "x grid not strictly increasing");
    for (std::size_t i = 1; i + 1 < c.size(); ++i)
        if (!(c.f[i] > 0.0))
            throw Error(ErrorKind::malformed_curve, "f must be positive inside");
    if (c.spectral) {
        const auto& s = *c.spectral;
        double scale = 0.0;
        for (double v : c.f) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double v = s.f(c.x[i]);
            if (std::abs(v - c.f[i]) > 1e-12 * std::max(scale, 1e-300))
                throw Error(ErrorKind::malformed_curve,
                            "spectral form does not reproduce samples");
        }
    }
}

namespace {

bool segments_intersect(const std::array<double, 2>& p1,
                        const std::array<double, 2>& p2,
                        const std::array<double, 2>& q1,
                        const std::array<double, 2>& q2, double tol) {
    auto cross = [](double ax, double ay, double bx, double by) {
        return ax * by - ay * bx;
    };
    const double rx = p2[0] - p1[0], ry = p2[1] - p1[1];
    const double sx = q2[0] - q1[0], sy = q2[1] - q1[1];
    const double denom = cross(rx, ry, sx, sy);
    const double qpx = q1[0] - p1[0], qpy = q1[1] - p1[1];
    if (std::abs(denom) <= tol) {
        // parallel: overlap counts as intersection
        if (std::abs(cross(qpx, qpy, rx, ry)) > tol) return false;
        const double rr = rx * rx + ry * ry;
        if (rr <= tol) return false;
        double t0 = (qpx * rx + qpy * ry) / rr;
        double t1 = t0 + (sx * rx + sy * ry) / rr;
        if (t0 > t1) std::swap(t0, t1);
        return t1 > tol && t0 < 1.0 - tol;
    }
    const double t = cross(qpx, qpy, sx, sy) / denom;
    const double u = cross(qpx, qpy, rx, ry) / denom;
    return t > tol && t < 1.0 - tol && u > tol && u < 1.0 - tol;
}

}  // namespace

void validate(const ParametricCurve& c) {
    const std::size_t n = c.size();
    if (n < 3)
        throw Error(ErrorKind::malformed_curve, "need at least 3 points");
    double diam = 0.0;
    for (const auto& p : c.pts)
        diam = std::max({diam, std::abs(p[0]), std::abs(p[1])});
    const double tol = 1e-9 * std::max(diam, 1e-30);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (c.pts[j + 1][0] - c.pts[j][0] < -tol)
            throw Error(ErrorKind::malformed_curve, "x not monotone");
        const double dx = c.pts[j + 1][0] - c.pts[j][0];
        const double dy = c.pts[j + 1][1] - c.pts[j][1];
        if (dx * dx + dy * dy <= tol * tol)
            throw Error(ErrorKind::malformed_curve, "repeated sample points");
    }
    for (const auto& p : c.pts)
        if (p[1] < -tol)
            throw Error(ErrorKind::malformed_curve, "y must be nonnegative");
    if (std::abs(c.pts.front()[1]) > tol || std::abs(c.pts.back()[1]) > tol)
        throw Error(ErrorKind::malformed_curve, "endpoints must lie on the x-axis");

    // Pairwise segment sweep. With monotone x only segments whose
    // x-intervals overlap can cross, so the backward scan window stays small.
    const double itol = 1e-12 * std::max(diam, 1e-30);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double xlo = std::min(c.pts[j][0], c.pts[j + 1][0]) - itol;
        for (std::size_t i = j; i-- > 0;) {
            if (std::max(c.pts[i][0], c.pts[i + 1][0]) < xlo) break;
            if (i + 1 == j) {
                // neighbors share a vertex; they still overlap when the
                // polyline doubles back along the same line
                const double ax = c.pts[i + 1][0] - c.pts[i][0];
                const double ay = c.pts[i + 1][1] - c.pts[i][1];
                const double bx = c.pts[j + 1][0] - c.pts[j][0];
                const double by = c.pts[j + 1][1] - c.pts[j][1];
                if (std::abs(ax * by - ay * bx) <= itol &&
                    ax * bx + ay * by < 0.0)
                    throw Error(ErrorKind::malformed_curve, "self-intersection");
                continue;
            }
            if (segments_intersect(c.pts[i], c.pts[i + 1], c.pts[j],
                                   c.pts[j + 1], itol))
                throw Error(ErrorKind::malformed_curve, "self-intersection");
        }
    }
}

// ---------------------------------------------------------------------------
// CurveFun

CurveFun::CurveFun(const GraphCurve& c)
    : a_(c.a), analytic_(c.analytic), spectral_(c.spectral) {
    if (analytic_ || spectral_) return;
    // natural cubic spline through the samples
    sx_ = c.x;
    sy_ = c.f;
    const std::size_t n = sx_.size();
    sm_.assign(n, 0.0);
    std::vector<double> l(n, 0.0), mu(n, 0.0), z(n, 0.0);
    l[0] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = sx_[i] - sx_[i - 1], h1 = sx_[i + 1] - sx_[i];
        // second-derivative system: h0 M_{i-1} + 2(h0+h1) M_i + h1 M_{i+1}
        //                           = 6 (dd_i - dd_{i-1})
        const double alpha = 6.0 * ((sy_[i + 1] - sy_[i]) / h1 -
                                    (sy_[i] - sy_[i - 1]) / h0);
        l[i] = 2.0 * (sx_[i + 1] - sx_[i - 1]) - h0 * mu[i - 1];
        mu[i] = h1 / l[i];
        z[i] = (alpha - h0 * z[i - 1]) / l[i];
    }
    for (std::size_t i = n - 1; i-- > 0;)
        sm_[i] = z[i] - mu[i] * sm_[i + 1];
}

double CurveFun::spline(double x) const {
    const auto it = std::upper_bound(sx_.begin(), sx_.end(), x);
    std::size_t i = it == sx_.begin() ? 0 : static_cast<std::size_t>(it - sx_.begin()) - 1;
    if (i + 1 >= sx_.size()) i = sx_.size() - 2;
    const double h = sx_[i + 1] - sx_[i];
    const double t = x - sx_[i], u = sx_[i + 1] - x;
    return (sm_[i] * u * u * u + sm_[i + 1] * t * t * t) / (6.0 * h) +
           (sy_[i] / h - sm_[i] * h / 6.0) * u +
           (sy_[i + 1] / h - sm_[i + 1] * h / 6.0) * t;
}

double CurveFun::spline_d(double x) const {
    const auto it = std::upper_bound(sx_.begin(), sx_.end(), x);
    std::size_t i = it == sx_.begin() ? 0 : static_cast<std::size_t>(it - sx_.begin()) - 1;
    if (i + 1 >= sx_.size()) i = sx_.size() - 2;
    const double h = sx_[i + 1] - sx_[i];
    const double t = x - sx_[i], u = sx_[i + 1] - x;
    return (-sm_[i] * u * u + sm_[i + 1] * t * t) / (2.0 * h) -
           (sy_[i] / h - sm_[i] * h / 6.0) +
           (sy_[i + 1] / h - sm_[i + 1] * h / 6.0);
}

double CurveFun::spline_d2(double x) const {
    const auto it = std::upper_bound(sx_.begin(), sx_.end(), x);
    std::size_t i = it == sx_.begin() ? 0 : static_cast<std::size_t>(it - sx_.begin()) - 1;
    if (i + 1 >= sx_.size()) i = sx_.size() - 2;
    const double h = sx_[i + 1] - sx_[i];
    const double t = x - sx_[i], u = sx_[i + 1] - x;
    return (sm_[i] * u + sm_[i + 1] * t) / h;
}

double CurveFun::f(double x) const {
    if (analytic_) return analytic_->f(x);
    if (spectral_) return spectral_->f(x);
    return spline(x);
}

double CurveFun::df(double x) const {
    if (analytic_) return analytic_->df(x);
    if (spectral_) return spectral_->df(x);
    return spline_d(x);
}

double CurveFun::d2f(double x) const {
    if (analytic_) {
        if (analytic_->d2f) return analytic_->d2f(x);
        const double step = 1e-5 * a_;
        return (analytic_->df(x + step) - analytic_->df(x - step)) /
               (2.0 * step);
    }
    if (spectral_) return spectral_->d2f(x);
    return spline_d2(x);
}

bool CurveFun::finite_end_slopes() const {
    const double s0 = df(-a_ * (1.0 - 1e-9)), s1 = df(a_ * (1.0 - 1e-9));
    return std::isfinite(s0) && std::isfinite(s1) && std::abs(s0) < 1e4 &&
           std::abs(s1) < 1e4;
}

// ---------------------------------------------------------------------------
// Measures

double volume(const GraphCurve& c) {
    validate(c);
    const double v = quad::trapezoid(c.x, c.f);
    if (!(v > 0.0))
        throw Error(ErrorKind::malformed_curve, "nonpositive volume");
    return v;
}

namespace {

double chord_sum(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += std::hypot(x[i + 1] - x[i], y[i + 1] - y[i]);
    return s;
}

// Fine polyline used for arc-length work; graded so endpoint slope
// blowups (semicircle) stay resolved.
void fine_polyline(const GraphCurve& c, std::size_t m, std::vector<double>& x,
                   std::vector<double>& y) {
    if (c.analytic || c.spectral) {
        const CurveFun fn(c);
        x = graded_grid(c.a, m);
        y.resize(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = fn.f(x[i]);
        y.front() = 0.0;
        y.back() = 0.0;
    } else {
        x = c.x;
        y = c.f;
    }
}

}  // namespace

double perimeter(const GraphCurve& c) {
    validate(c);
    const CurveFun fn(c);
    if ((c.analytic || c.spectral) && fn.finite_end_slopes()) {
        return quad::adaptive_simpson(
            [&fn](double x) { return std::hypot(1.0, fn.df(x)); }, -c.a, c.a,
            1e-12, 48);
    }
    std::vector<double> x, y;
    fine_polyline(c, 1 << 16, x, y);
    return chord_sum(x, y);
}

double perimeter(const ParametricCurve& c) {
    if (c.size() < 2)
        throw Error(ErrorKind::malformed_curve, "need at least 2 points");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        s += std::hypot(c.pts[i + 1][0] - c.pts[i][0],
                        c.pts[i + 1][1] - c.pts[i][1]);
    return s;
}

// ---------------------------------------------------------------------------
// Rescale / transform

GraphCurve rescale_to_volume(const GraphCurve& c, double v_target) {
    if (!(v_target > 0.0))
        throw Error(ErrorKind::domain_error, "target volume must be positive");
    const double v = volume(c);
    const double s = std::sqrt(v_target / v);
    GraphCurve out;
    out.a = s * c.a;
    out.x.resize(c.size());
    out.f.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.x[i] = s * c.x[i];
        out.f[i] = s * c.f[i];
    }
    out.x.front() = -out.a;
    out.x.back() = out.a;
    if (c.spectral) {
        SpectralForm sf = *c.spectral;
        sf.a *= s;
        for (double& ck : sf.coeff) ck *= std::sqrt(s);
        out.spectral = sf;
    }
    if (c.analytic) {
        auto base = c.analytic;
        auto wrapped = std::make_shared<AnalyticForm>();
        wrapped->f = [base, s](double x) { return s * base->f(x / s); };
        wrapped->df = [base, s](double x) { return base->df(x / s); };
        if (base->d2f)
            wrapped->d2f = [base, s](double x) { return base->d2f(x / s) / s; };
        out.analytic = wrapped;
    }
    return out;
}

GraphCurve vertical_scale(const GraphCurve& c, double m) {
    if (!(m > 0.0))
        throw Error(ErrorKind::domain_error, "scale must be positive");
    GraphCurve out = c;
    for (double& v : out.f) v *= m;
    if (out.spectral)
        for (double& ck : out.spectral->coeff) ck *= std::sqrt(m);
    if (c.analytic) {
        auto base = c.analytic;
        auto wrapped = std::make_shared<AnalyticForm>();
        wrapped->f = [base, m](double x) { return m * base->f(x); };
        wrapped->df = [base, m](double x) { return m * base->df(x); };
        if (base->d2f)
            wrapped->d2f = [base, m](double x) { return m * base->d2f(x); };
        out.analytic = wrapped;
    }
    return out;
}

ParametricCurve to_parametric(const GraphCurve& c, std::size_t n_points) {
    validate(c);
    if (n_points < 3)
        throw Error(ErrorKind::domain_error, "need at least 3 output points");
    std::vector<double> x, y;
    const std::size_t m =
        std::max<std::size_t>(16 * n_points, std::size_t{1} << 15) | 1;
    fine_polyline(c, m, x, y);
    std::vector<double> t(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i)
        t[i] = t[i - 1] + std::hypot(x[i] - x[i - 1], y[i] - y[i - 1]);
    const double total = t.back();
    ParametricCurve out;
    out.total_length = total;
    out.pts.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double s = total * static_cast<double>(k) /
                         static_cast<double>(n_points - 1);
        const auto it = std::lower_bound(t.begin(), t.end(), s);
        std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        if (i + 1 >= t.size()) i = t.size() - 2;
        const double seg = t[i + 1] - t[i];
        const double w = seg > 0.0 ? (s - t[i]) / seg : 0.0;
        out.pts[k] = {x[i] + w * (x[i + 1] - x[i]), y[i] + w * (y[i + 1] - y[i])};
    }
    out.pts.front() = {-c.a, 0.0};
    out.pts.back() = {c.a, 0.0};
    return out;
}

// ---------------------------------------------------------------------------
// Boundary angle and slopes

std::vector<double> slopes(const GraphCurve& c) {
    std::vector<double> d(c.size());
    if (c.analytic || c.spectral) {
        const CurveFun fn(c);
        for (std::size_t i = 0; i < c.size(); ++i) d[i] = fn.df(c.x[i]);
        return d;
    }
    const std::size_t n = c.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = c.x[i] - c.x[i - 1], h1 = c.x[i + 1] - c.x[i];
        // second-order on a possibly nonuniform grid
        d[i] = (c.f[i + 1] * h0 * h0 - c.f[i - 1] * h1 * h1 +
                c.f[i] * (h1 * h1 - h0 * h0)) /
               (h0 * h1 * (h0 + h1));
    }
    {
        const double h0 = c.x[1] - c.x[0], h1 = c.x[2] - c.x[1];
        d[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * c.f[0] +
               (h0 + h1) / (h0 * h1) * c.f[1] -
               h0 / (h1 * (h0 + h1)) * c.f[2];
        const double g1 = c.x[n - 1] - c.x[n - 2], g0 = c.x[n - 2] - c.x[n - 3];
        d[n - 1] = (2.0 * g1 + g0) / (g1 * (g0 + g1)) * c.f[n - 1] -
                   (g0 + g1) / (g0 * g1) * c.f[n - 2] +
                   g1 / (g0 * (g0 + g1)) * c.f[n - 3];
    }
    return d;
}

std::vector<double> boundary_angle(const GraphCurve& c) {
    validate(c);
    const std::vector<double> d = slopes(c);
    std::vector<double> theta(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i > 0 && i + 1 < d.size() && !std::isfinite(d[i]))
            throw Error(ErrorKind::vertical_tangent,
                        "infinite slope at an interior sample");
        theta[i] = std::atan(d[i]);
    }
    return theta;
}

std::vector<double> boundary_angle(const ParametricCurve& c) {
    const std::size_t n = c.size();
    if (n < 2)
        throw Error(ErrorKind::malformed_curve, "need at least 2 points");
    std::vector<double> theta(n);
    auto angle = [&c](std::size_t i, std::size_t j) {
        return std::atan2(c.pts[j][1] - c.pts[i][1], c.pts[j][0] - c.pts[i][0]);
    };
    theta[0] = angle(0, 1);
    theta[n - 1] = angle(n - 2, n - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) theta[i] = angle(i - 1, i + 1);
    return theta;
}

// ---------------------------------------------------------------------------
// Builtins

GraphCurve from_spectral(SpectralForm s, std::size_t n, bool graded) {
    GraphCurve c;
    c.a = s.a;
    c.x = graded ? graded_grid(s.a, n) : uniform_grid(s.a, n);
    c.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.f[i] = s.f(c.x[i]);
    c.f.front() = 0.0;
    c.f.back() = 0.0;
    c.spectral = std::move(s);
    return c;
}

GraphCurve make_gamma0(std::size_t n) {
    // f0 = (cos x + 1)/(2 pi) = h^2 with h = cos(x/2)/sqrt(pi) on [-pi, pi]
    SpectralForm s;
    s.a = kPi;
    s.coeff = {1.0 / std::sqrt(kPi)};
    return from_spectral(std::move(s), n, false);
}

GraphCurve make_semicircle(std::size_t n) {
    GraphCurve c;
    c.a = 1.0;
    c.x = graded_grid(1.0, n);
    c.f.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        c.f[i] = std::sqrt(std::max(0.0, 1.0 - c.x[i] * c.x[i]));
    c.f.front() = 0.0;
    c.f.back() = 0.0;
    auto an = std::make_shared<AnalyticForm>();
    an->f = [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); };
    an->df = [](double x) {
        const double r = 1.0 - x * x;
        if (r > 0.0) return -x / std::sqrt(r);
        return x < 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    };
    an->d2f = [](double x) {
        const double r = std::max(1.0 - x * x, 0.0);
        return r > 0.0 ? -1.0 / (r * std::sqrt(r))
                       : -std::numeric_limits<double>::infinity();
    };
    c.analytic = an;
    return c;
}

GraphCurve make_cosine(std::size_t n, double amplitude) {
    SpectralForm s;
    s.a = 1.0;
    s.coeff = {std::sqrt(amplitude)};
    return from_spectral(std::move(s), n, false);
}

GraphCurve make_profile_g(std::size_t n) {
    SpectralForm s;
    s.a = 1.0;
    s.coeff = {std::pow(kPi, -2.0 / 3.0)};
    return from_spectral(std::move(s), n, false);
}

GraphCurve make_cusped_semicircle(double eps, std::size_t n) {
    if (!(eps > 0.0 && eps < 0.25))
        throw Error(ErrorKind::domain_error, "eps must lie in (0, 1/4)");
    const double rho = eps / (1.0 - eps);
    const double c0 = std::sqrt((1.0 + eps) / (1.0 - eps));
    const double xs = std::sqrt(1.0 - eps * eps);
    auto fbar = [rho, c0, xs](double xb) {
        xb = std::abs(xb);
        if (xb <= xs) return std::sqrt(std::max(0.0, 1.0 - xb * xb));
        if (xb >= c0) return 0.0;
        const double d = c0 - xb;
        return rho - std::sqrt(std::max(0.0, rho * rho - d * d));
    };
    auto dfbar = [rho, c0, xs](double xb) {
        const double sgn = xb < 0.0 ? -1.0 : 1.0;
        const double ax = std::abs(xb);
        if (ax <= xs) return -sgn * ax / std::sqrt(1.0 - ax * ax);
        if (ax >= c0) return 0.0;
        const double d = c0 - ax;
        return sgn * d / std::sqrt(rho * rho - d * d);
    };
    auto d2fbar = [rho, c0, xs](double xb) {
        const double ax = std::abs(xb);
        if (ax <= xs) {
            const double r = 1.0 - ax * ax;
            return -1.0 / (r * std::sqrt(r));
        }
        if (ax >= c0) return 0.0;
        const double d = c0 - ax;
        const double r = rho * rho - d * d;
        return rho * rho / (r * std::sqrt(r));
    };
    GraphCurve c;
    c.a = 1.0;
    c.x = graded_grid(1.0, n);
    auto an = std::make_shared<AnalyticForm>();
    an->f = [fbar, c0](double x) { return fbar(c0 * x); };
    an->df = [dfbar, c0](double x) { return c0 * dfbar(c0 * x); };
    an->d2f = [d2fbar, c0](double x) { return c0 * c0 * d2fbar(c0 * x); };
    c.analytic = an;
    c.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.f[i] = an->f(c.x[i]);
    c.f.front() = 0.0;
    c.f.back() = 0.0;
    return c;
}

GraphCurve make_builtin(const std::string& name) {
    if (name == "gamma0") return make_gamma0();
    if (name == "semicircle") return make_semicircle();
    if (name == "cosine") return make_cosine();
    if (name == "profile_g") return make_profile_g();
    if (name.rfind("cusped:", 0) == 0) {
        const double eps = std::stod(name.substr(7));
        return make_cusped_semicircle(eps);
    }
    throw Error(ErrorKind::domain_error, "unknown builtin curve: " + name);
}

// ---------------------------------------------------------------------------
// I/O

GraphCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io_error, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y", 0) != 0)
        throw Error(ErrorKind::io_error, "expected x,y header in " + path);
    GraphCurve c;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x, y;
        char comma;
        if (!(ss >> x >> comma >> y) || comma != ',')
            throw Error(ErrorKind::io_error, "malformed CSV row: " + line);
        c.x.push_back(x);
        c.f.push_back(y);
    }
    if (c.x.size() < 3)
        throw Error(ErrorKind::io_error, "curve file too short: " + path);
    c.a = c.x.back();
    if (std::abs(c.x.front() + c.a) > 1e-12 * std::max(1.0, c.a))
        throw Error(ErrorKind::io_error, "curve must span [-a, a]");
    c.x.front() = -c.a;
    validate(c);
    return c;
}

void write_curve_csv(const GraphCurve& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out.precision(17);
    out << "x,y\n";
    for (std::size_t i = 0; i < c.size(); ++i)
        out << c.x[i] << "," << c.f[i] << "\n";
}

GraphCurve read_curve_spectral(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io_error, "cannot open " + path);
    std::string tag;
    SpectralForm s;
    std::size_t n = 0;
    if (!(in >> tag >> s.a >> n) || tag != "spectral")
        throw Error(ErrorKind::io_error, "expected `spectral a K` header");
    s.coeff.resize(n);
    for (double& v : s.coeff)
        if (!(in >> v))
            throw Error(ErrorKind::io_error, "truncated coefficient list");
    return from_spectral(std::move(s));
}

void write_curve_spectral(const GraphCurve& c, const std::string& path) {
    if (!c.spectral)
        throw Error(ErrorKind::io_error, "curve has no spectral form");
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out.precision(17);
    out << "spectral " << c.spectral->a << " " << c.spectral->coeff.size()
        << "\n";
    for (double v : c.spectral->coeff) out << v << "\n";
}

}  // namespace tactoid
