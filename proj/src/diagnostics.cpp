#include "tactoid/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tactoid/parallel.hpp"

namespace tactoid {

namespace {

std::vector<double> cumulative_arc(const ParametricCurve& c) {
    std::vector<double> t(c.size(), 0.0);
    for (std::size_t i = 1; i < c.size(); ++i)
        t[i] = t[i - 1] + std::hypot(c.pts[i][0] - c.pts[i - 1][0],
                                     c.pts[i][1] - c.pts[i - 1][1]);
    return t;
}

double dist(const std::array<double, 2>& p, const std::array<double, 2>& q) {
    return std::hypot(p[0] - q[0], p[1] - q[1]);
}

// stride that brings the sample count at or below cap
std::vector<std::size_t> strided_indices(std::size_t n, std::size_t cap) {
    std::vector<std::size_t> idx;
    if (n <= cap) {
        idx.resize(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        return idx;
    }
    const std::size_t stride = (n - 1 + cap - 2) / (cap - 1);
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

// unit tangents at the stations from normalized centered chords
std::vector<std::array<double, 2>> unit_tangents(const ParametricCurve& c) {
    const std::size_t n = c.size();
    std::vector<std::array<double, 2>> tau(n);
    auto set = [&](std::size_t k, double dx, double dy) {
        const double h = std::hypot(dx, dy);
        tau[k] = {dx / h, dy / h};
    };
    set(0, c.pts[1][0] - c.pts[0][0], c.pts[1][1] - c.pts[0][1]);
    set(n - 1, c.pts[n - 1][0] - c.pts[n - 2][0],
        c.pts[n - 1][1] - c.pts[n - 2][1]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        set(i, c.pts[i + 1][0] - c.pts[i - 1][0],
            c.pts[i + 1][1] - c.pts[i - 1][1]);
    return tau;
}

}  // namespace

double two_point_constant(const ParametricCurve& c) {
    if (c.size() < 3)
        throw Error(ErrorKind::malformed_curve, "need at least 3 points");
    const auto idx = strided_indices(c.size(), 512);
    const std::size_t m = idx.size();
    return par::block_max(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t a) {
        const auto& z1 = c.pts[idx[static_cast<std::size_t>(a)]];
        double best = 0.0;
        for (std::size_t b = static_cast<std::size_t>(a) + 1; b < m; ++b) {
            const auto& z2 = c.pts[idx[b]];
            const double d12 = dist(z1, z2);
            for (std::size_t e = b + 1; e < m; ++e) {
                const auto& z3 = c.pts[idx[e]];
                const double d13 = dist(z1, z3);
                const double num = std::max(d12, dist(z2, z3));
                if (num > best * d13) best = num / d13;
            }
        }
        return best;
    });
}

double chord_arc_constant(const ParametricCurve& c) {
    if (c.size() < 2)
        throw Error(ErrorKind::malformed_curve, "need at least 2 points");
    const auto t = cumulative_arc(c);
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(t[i + 1] > t[i]))
            throw Error(ErrorKind::malformed_curve, "coincident sample points");
    return par::block_max(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t a) {
        const std::size_t i = static_cast<std::size_t>(a);
        double best = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double arc = t[j] - t[i];
            const double ch = dist(c.pts[i], c.pts[j]);
            if (arc > best * ch) best = arc / ch;
        }
        return best;
    });
}

RTable vanishing_modulus(const ParametricCurve& c,
                         const std::vector<double>& r_list) {
    const auto t = cumulative_arc(c);
    const std::size_t n = c.size();
    std::vector<double> rs = r_list;
    std::sort(rs.begin(), rs.end());
    const std::size_t nb = rs.size();

    // per-block partial tables, combined in block order
    const std::ptrdiff_t blocks =
        std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n), 64);
    std::vector<std::vector<double>> part(
        static_cast<std::size_t>(blocks), std::vector<double>(nb, 0.0));
    par::for_each(blocks, [&](std::ptrdiff_t b) {
        auto& loc = part[static_cast<std::size_t>(b)];
        const std::size_t lo = static_cast<std::size_t>(b) * n / blocks;
        const std::size_t hi = static_cast<std::size_t>(b + 1) * n / blocks;
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double ch = dist(c.pts[i], c.pts[j]);
                const auto it = std::lower_bound(rs.begin(), rs.end(), ch);
                if (it == rs.end()) continue;
                const std::size_t bin =
                    static_cast<std::size_t>(it - rs.begin());
                const double excess = (t[j] - t[i]) / ch - 1.0;
                if (excess > loc[bin]) loc[bin] = excess;
            }
    });
    RTable out;
    out.r = rs;
    out.value.assign(nb, 0.0);
    for (const auto& loc : part)
        for (std::size_t b = 0; b < nb; ++b)
            out.value[b] = std::max(out.value[b], loc[b]);
    for (std::size_t b = 1; b < nb; ++b)
        out.value[b] = std::max(out.value[b], out.value[b - 1]);
    return out;
}

CuspTables cusp_angle(const ParametricCurve& c,
                      const std::vector<double>& r_list) {
    std::vector<double> rs = r_list;
    std::sort(rs.begin(), rs.end());
    CuspTables out;
    out.left.r = rs;
    out.right.r = rs;
    out.left.value.assign(rs.size(), 0.0);
    out.right.value.assign(rs.size(), 0.0);
    const auto& pl = c.pts.front();
    const auto& pr = c.pts.back();
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        const auto& z = c.pts[i];
        const double dl = dist(z, pl), dr = dist(z, pr);
        const double ratl = z[0] - pl[0] > 0.0 ? z[1] / (z[0] - pl[0]) : 0.0;
        const double ratr = pr[0] - z[0] > 0.0 ? z[1] / (pr[0] - z[0]) : 0.0;
        for (std::size_t b = 0; b < rs.size(); ++b) {
            if (dl <= rs[b] && ratl > out.left.value[b])
                out.left.value[b] = ratl;
            if (dr <= rs[b] && ratr > out.right.value[b])
                out.right.value[b] = ratr;
        }
    }
    return out;
}

RTable vmo_oscillation(const ParametricCurve& c,
                       const std::vector<double>& r_list) {
    const std::size_t n = c.size();
    // per-segment unit normal: tangent rotated +90 degrees (outward for the
    // upper boundary)
    std::vector<std::array<double, 2>> nu(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dx = c.pts[i + 1][0] - c.pts[i][0];
        const double dy = c.pts[i + 1][1] - c.pts[i][1];
        const double h = std::hypot(dx, dy);
        nu[i] = {-dy / h, dx / h};
    }
    RTable out;
    out.r = r_list;
    std::sort(out.r.begin(), out.r.end());
    out.value.resize(out.r.size());
    for (std::size_t b = 0; b < out.r.size(); ++b) {
        const double r = out.r[b];
        out.value[b] = par::block_max(
            static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t ci) {
                const auto& ctr = c.pts[static_cast<std::size_t>(ci)];
                // window lengths and mean normal
                double len = 0.0, mx = 0.0, my = 0.0;
                std::vector<std::pair<std::size_t, double>> segs;
                for (std::size_t s = 0; s + 1 < n; ++s) {
                    const double px = c.pts[s][0] - ctr[0];
                    const double py = c.pts[s][1] - ctr[1];
                    const double dx = c.pts[s + 1][0] - c.pts[s][0];
                    const double dy = c.pts[s + 1][1] - c.pts[s][1];
                    const double aa = dx * dx + dy * dy;
                    const double bb = 2.0 * (px * dx + py * dy);
                    const double cc = px * px + py * py - r * r;
                    const double disc = bb * bb - 4.0 * aa * cc;
                    if (disc <= 0.0) continue;
                    const double sd = std::sqrt(disc);
                    const double t0 = std::max(0.0, (-bb - sd) / (2.0 * aa));
                    const double t1 = std::min(1.0, (-bb + sd) / (2.0 * aa));
                    if (t1 <= t0) continue;
                    const double piece = (t1 - t0) * std::sqrt(aa);
                    len += piece;
                    mx += nu[s][0] * piece;
                    my += nu[s][1] * piece;
                    segs.emplace_back(s, piece);
                }
                if (len <= 0.0) return 0.0;
                mx /= len;
                my /= len;
                double osc = 0.0;
                for (const auto& [s, piece] : segs)
                    osc += std::hypot(nu[s][0] - mx, nu[s][1] - my) * piece;
                return osc / len;
            });
    }
    return out;
}

double beta_number(const ParametricCurve& c, std::size_t center, double t) {
    const auto& ctr = c.pts[center];
    std::vector<std::array<double, 2>> win;
    for (const auto& p : c.pts)
        if (dist(p, ctr) <= t) win.push_back(p);
    if (win.size() < 2) return 0.0;
    auto halfwidth = [&](double phi) {
        const double nx = std::cos(phi), ny = std::sin(phi);
        double lo = 1e300, hi = -1e300;
        for (const auto& p : win) {
            const double proj = p[0] * nx + p[1] * ny;
            lo = std::min(lo, proj);
            hi = std::max(hi, proj);
        }
        return 0.5 * (hi - lo);
    };
    // coarse scan, then golden-section refinement on the best bracket
    const int nscan = 64;
    double best_phi = 0.0, best = 1e300;
    for (int k = 0; k < nscan; ++k) {
        const double phi = std::numbers::pi * k / nscan;
        const double v = halfwidth(phi);
        if (v < best) {
            best = v;
            best_phi = phi;
        }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best_phi - std::numbers::pi / nscan;
    double b = best_phi + std::numbers::pi / nscan;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = halfwidth(x1), f2 = halfwidth(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = halfwidth(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = halfwidth(x2);
        }
    }
    return std::min(std::min(f1, f2), best) / t;
}

WeilPetersson weil_petersson_suite(const ParametricCurve& c) {
    WeilPetersson out;
    const std::size_t n = c.size();
    const auto t = cumulative_arc(c);
    const double L = t.back();
    const double dt = L / static_cast<double>(n - 1);
    const auto tau = unit_tangents(c);
    auto w = [&](std::size_t i) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; };

    // H^{3/2}-type seminorm with the diagonal band |t-s| < 2 dt excluded.
    // For equal-arc stations the band is the index condition |i-j| <= 1,
    // which keeps the exclusion set invariant under rigid motions.
    out.h32_band = 2.0 * dt;
    out.h32_seminorm = par::block_sum(
        static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t a) {
            const std::size_t i = static_cast<std::size_t>(a);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t idx_gap = i > j ? i - j : j - i;
                if (idx_gap <= 1) continue;
                const double gap = t[i] - t[j];
                const double dx = tau[i][0] - tau[j][0];
                const double dy = tau[i][1] - tau[j][1];
                s += w(i) * w(j) * (dx * dx + dy * dy) / (gap * gap);
            }
            return s * dt * dt;
        });

    // Moebius energy; the integrand extends by 0 on the diagonal
    out.mobius_energy = par::block_sum(
        static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t a) {
            const std::size_t i = static_cast<std::size_t>(a);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double ch = dist(c.pts[i], c.pts[j]);
                const double arc = std::abs(t[i] - t[j]);
                s += w(i) * w(j) * (1.0 / (ch * ch) - 1.0 / (arc * arc));
            }
            return s * dt * dt;
        });

    // beta^2 integral over dyadic scales; weight 1/t_m per level covers
    // int dt/t^2 over [t_m/2, t_m]
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        diam = std::max(diam, dist(c.pts.front(), c.pts[i]));
    for (std::size_t i = 0; i < n; ++i)
        diam = std::max(diam, dist(c.pts.back(), c.pts[i]));
    out.beta_t_max = diam;
    double tm = diam;
    double total = 0.0;
    std::size_t levels = 0;
    while (tm >= 4.0 * dt && levels < 40) {
        const double level_sum = par::block_sum(
            static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t a) {
                const std::size_t i = static_cast<std::size_t>(a);
                const double beta = beta_number(c, i, tm);
                return w(i) * beta * beta * dt;
            });
        total += level_sum / tm;
        out.beta_t_min = tm;
        tm *= 0.5;
        ++levels;
    }
    out.beta_levels = levels;
    out.beta_sq_integral = total;

    // dyadic equal-arc polygons
    auto point_at = [&](double s) -> std::array<double, 2> {
        const auto it = std::lower_bound(t.begin(), t.end(), s);
        std::size_t i =
            it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        if (i + 1 >= n) i = n - 2;
        const double seg = t[i + 1] - t[i];
        const double u = seg > 0.0 ? (s - t[i]) / seg : 0.0;
        return {c.pts[i][0] + u * (c.pts[i + 1][0] - c.pts[i][0]),
                c.pts[i][1] + u * (c.pts[i + 1][1] - c.pts[i][1])};
    };
    double partial = 0.0;
    std::size_t level = 1;
    while ((std::size_t{1} << level) * 2 <= n - 1 && level <= 24) {
        const std::size_t segs = std::size_t{1} << level;
        double ln = 0.0;
        auto prev = point_at(0.0);
        for (std::size_t j = 1; j <= segs; ++j) {
            const auto cur =
                point_at(L * static_cast<double>(j) / static_cast<double>(segs));
            ln += dist(prev, cur);
            prev = cur;
        }
        partial += static_cast<double>(segs) * (L - ln);
        out.polygon_defect_partial_sums.push_back(partial);
        ++level;
    }
    out.polygon_max_level = level - 1;
    return out;
}

DiagnosticsReport diagnose(const ParametricCurve& c,
                           const std::vector<double>& r_list) {
    DiagnosticsReport rep;
    rep.n_samples = c.size();
    rep.two_point_constant = two_point_constant(c);
    rep.chord_arc_constant = chord_arc_constant(c);
    rep.vanishing_modulus = vanishing_modulus(c, r_list);
    rep.cusp = cusp_angle(c, r_list);
    rep.vmo = vmo_oscillation(c, r_list);
    rep.wp = weil_petersson_suite(c);
    return rep;
}

}  // namespace tactoid
