#include "tactoid/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace tactoid {

namespace {

ordered_json num_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

ordered_json vec(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double x : v) a.push_back(num_or_null(x));
    return a;
}

}  // namespace

ordered_json to_json(const EnergyReport& r) {
    ordered_json j;
    j["functional"] = to_string(r.functional);
    j["dirichlet"] = num_or_null(r.dirichlet);
    j["perimeter_term"] = num_or_null(r.perimeter_term);
    j["perimeter"] = num_or_null(r.perimeter);
    j["volume"] = num_or_null(r.volume);
    j["total"] = num_or_null(r.total);
    j["parameters"] = {{"v", num_or_null(r.v_param)},
                       {"eps", num_or_null(r.eps_param)}};
    j["divergent"] = r.divergent;
    if (!r.note.empty()) j["note"] = r.note;
    j["grid"] = {{"nx", r.nx},
                 {"ny", r.ny},
                 {"clip_left", r.clip_left},
                 {"clip_right", r.clip_right},
                 {"cg_iterations", r.cg_iterations},
                 {"cg_residual", num_or_null(r.cg_residual)}};
    return j;
}

ordered_json to_json(const BaselineReport& r) {
    ordered_json j;
    j["displayed_integral"] = r.displayed_integral;
    j["displayed_parts"] = {{"perimeter", r.displayed_perimeter_part},
                            {"dy", r.displayed_dy_part},
                            {"dx", r.displayed_dx_part}};
    j["grid_total"] = r.grid_total;
    j["grid_dirichlet"] = r.grid_dirichlet;
    j["grid"] = {{"nx", r.grid_nx}, {"ny", r.grid_ny}};
    j["harmonic_arctan"] = to_json(r.harmonic_arctan);
    j["harmonic_arcsin_dirichlet"] = r.harmonic_arcsin_dirichlet;
    j["linear_arctan_dirichlet"] = r.linear_arctan_dirichlet;
    j["paper_constant"] = r.paper_constant;
    j["deviation_from_paper"] = r.deviation_from_paper;
    return j;
}

namespace {

ordered_json to_json(const RTable& t) {
    return ordered_json{{"r", vec(t.r)}, {"value", vec(t.value)}};
}

}  // namespace

ordered_json to_json(const DiagnosticsReport& r) {
    ordered_json j;
    j["n_samples"] = r.n_samples;
    j["two_point_constant"] = r.two_point_constant;
    j["chord_arc_constant"] = r.chord_arc_constant;
    j["vanishing_modulus"] = to_json(r.vanishing_modulus);
    j["cusp_left"] = to_json(r.cusp.left);
    j["cusp_right"] = to_json(r.cusp.right);
    j["vmo"] = to_json(r.vmo);
    j["h32_seminorm"] = r.wp.h32_seminorm;
    j["mobius_energy"] = r.wp.mobius_energy;
    j["beta_sq_integral"] = r.wp.beta_sq_integral;
    j["polygon_defect_partial_sums"] = vec(r.wp.polygon_defect_partial_sums);
    j["truncation"] = {{"h32_band", r.wp.h32_band},
                       {"beta_levels", r.wp.beta_levels},
                       {"beta_t_min", r.wp.beta_t_min},
                       {"beta_t_max", r.wp.beta_t_max},
                       {"polygon_max_level", r.wp.polygon_max_level}};
    return j;
}

ordered_json to_json(const SweepResult& r) {
    ordered_json j;
    j["params"] = vec(r.params);
    j["limit_target"] = r.limit_target;
    j["gaps"] = vec(r.gaps);
    j["fitted_exponent"] = r.fitted_exponent;
    j["fit_residual"] = r.fit_residual;
    j["endpoint_slope"] = r.endpoint_slope;
    j["under_resolved"] = r.under_resolved;
    if (!r.dirichlet_over_eps.empty())
        j["dirichlet_over_eps"] = vec(r.dirichlet_over_eps);
    if (!r.total_physical.empty()) {
        j["total_physical"] = vec(r.total_physical);
        j["total_exponent"] = r.total_exponent;
    }
    if (!r.profile_l2.empty()) j["profile_l2"] = vec(r.profile_l2);
    ordered_json reps = ordered_json::array();
    for (const auto& er : r.reports) reps.push_back(to_json(er));
    j["reports"] = reps;
    return j;
}

ordered_json to_json(const OptimResult& r) {
    ordered_json j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["coefficients"] = vec(r.params.coeff);
    j["half_width"] = r.params.a;
    j["lambda"] = num_or_null(r.lambda);
    j["el_residual"] = num_or_null(r.el_residual);
    j["energy_trace"] = vec(r.energy_trace);
    j["gradient_norm_trace"] = vec(r.gradient_norm_trace);
    j["final_grid"] = {{"nx", r.final_nx}, {"ny", r.final_ny}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

void write_json(const ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_rtable_csv(const RTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out.precision(17);
    out << "r,value\n";
    for (std::size_t i = 0; i < t.r.size(); ++i)
        out << t.r[i] << "," << t.value[i] << "\n";
}

void write_sweep_csv(const SweepResult& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    out.precision(17);
    out << "param,dirichlet,perimeter,total,gap\n";
    for (std::size_t i = 0; i < s.params.size(); ++i)
        out << s.params[i] << "," << s.reports[i].dirichlet << ","
            << s.reports[i].perimeter << "," << s.reports[i].total << ","
            << s.gaps[i] << "\n";
}

void write_loglog_svg(const std::vector<double>& x,
                      const std::vector<double>& y, const std::string& title,
                      double slope, const std::string& path) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log10(x[i]));
            ly.push_back(std::log10(y[i]));
        }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
    const int W = 640, H = 480, M = 60;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H
        << "\" fill=\"white\"/>\n";
    if (lx.size() >= 2) {
        const auto [xmin, xmax] = std::minmax_element(lx.begin(), lx.end());
        const auto [ymin, ymax] = std::minmax_element(ly.begin(), ly.end());
        const double dx = std::max(*xmax - *xmin, 1e-12);
        const double dy = std::max(*ymax - *ymin, 1e-12);
        auto px = [&](double v) {
            return M + (v - *xmin) / dx * (W - 2 * M);
        };
        auto py = [&](double v) {
            return H - M - (v - *ymin) / dy * (H - 2 * M);
        };
        char buf[256];
        for (std::size_t i = 0; i < lx.size(); ++i) {
            std::snprintf(buf, sizeof buf,
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" "
                          "fill=\"steelblue\"/>\n",
                          px(lx[i]), py(ly[i]));
            out << buf;
        }
        // fitted line through the mean point
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        const double y0 = my + slope * (*xmin - mx);
        const double y1 = my + slope * (*xmax - mx);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"crimson\" stroke-width=\"1.5\"/>\n",
                      px(*xmin), py(y0), px(*xmax), py(y1));
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"30\" font-family=\"sans-serif\" "
                      "font-size=\"15\">%s (slope %.4f)</text>\n",
                      M, title.c_str(), slope);
        out << buf;
    }
    out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M
        << "\" height=\"" << H - 2 * M
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

}  // namespace tactoid
