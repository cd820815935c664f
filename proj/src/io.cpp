#include "liouville/io.hpp"

#include <cstdio>
#include <fstream>

namespace liouville {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << "i,j,x,y,value\n";
    const Grid& g = *f.grid;
    for (int k = 0; k < f.size(); ++k) {
        const auto [ix, iy] = g.interior_coords(k);
        const Point p = g.interior_point(k);
        os << ix << ',' << iy << ',' << format_g17(p.x) << ',' << format_g17(p.y) << ','
           << format_g17(f[k]) << '\n';
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << j.dump(2) << '\n';
}

Json to_json(const ConfigSpaceCheck& c) {
    Json j;
    j["ok"] = c.ok;
    j["negative_deficit"] = c.negative_deficit;
    j["min_slack"] = c.min_slack;
    j["slack_ball"] = c.slack_ball;
    j["slack_level"] = c.slack_level;
    j["slack_dist_q"] = c.slack_dist_q;
    j["slack_dist_pair"] = c.slack_dist_pair;
    return j;
}

Json to_json(const ReductionSolve& r, bool include_field_stats) {
    Json j;
    Json cs = Json::array();
    for (std::size_t i = 0; i < r.c_x.size(); ++i) {
        Json e;
        e["i"] = r.labels[i].first;
        e["j"] = r.labels[i].second;
        e["c_x"] = r.c_x[i];
        e["c_y"] = r.c_y[i];
        cs.push_back(e);
    }
    j["c"] = cs;
    j["constraint_residual"] = r.constraint_residual;
    if (include_field_stats) {
        j["phi_sup"] = r.phi_sup;
        j["h_star"] = r.h_star;
        j["ratio_bound"] = r.ratio_bound;
    }
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["step_norms"] = r.step_norms;
    j["contraction"] = r.contraction;
    j["E_star"] = r.e_star;
    return j;
}

Json to_json(const BubbleSummary& b) {
    Json j;
    Json peaks = Json::array();
    for (const Peak& p : b.peaks) {
        Json e;
        e["x"] = p.p.x;
        e["y"] = p.p.y;
        e["height"] = p.height;
        peaks.push_back(e);
    }
    j["peaks"] = peaks;
    j["count"] = b.peaks.size();
    j["expected"] = b.expected;
    j["min_pair_dist"] = b.min_pair_dist;
    j["min_dist_q"] = b.min_dist_q;
    j["max_dist_q"] = b.max_dist_q;
    j["spacing_threshold"] = b.spacing_threshold;
    j["count_ok"] = b.count_ok;
    j["spacing_ok"] = b.spacing_ok;
    j["containment_ok"] = b.containment_ok;
    return j;
}

Json to_json(const SolveReport& r) {
    Json j;
    j["t"] = r.t;
    j["failed"] = r.failed;
    if (r.failed) {
        j["failure"] = r.failure;
        return j;
    }
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["final_residual"] = r.final_residual;
    j["residual_history"] = r.residual_history;
    j["step_sizes"] = r.step_sizes;
    j["quad_ratio"] = r.quad_ratio;
    j["mass"] = r.mass;
    j["mass_pred"] = r.mass_pred;
    j["mass_rel_err"] = r.mass_rel_err;
    j["dist_to_init"] = r.dist_to_init;
    j["bubbles"] = to_json(r.bubbles);
    return j;
}

Json to_json(const EnergyReport& r) {
    Json j;
    j["t"] = r.t;
    auto pts = [](const std::vector<Point>& v) {
        Json a = Json::array();
        for (const Point& p : v) a.push_back(Json{{"x", p.x}, {"y", p.y}});
        return a;
    };
    j["xi_init"] = pts(r.xi_init);
    j["xi_max"] = pts(r.xi_max);
    j["value_init"] = r.value_init;
    j["value_max"] = r.value_max;
    j["margins"] = to_json(r.margins);
    j["c_x"] = r.c_x;
    j["c_y"] = r.c_y;
    j["pinned"] = r.pinned;
    j["converged"] = r.converged;
    j["simplex_diameter"] = r.simplex_diameter;
    j["evaluations"] = r.evaluations;
    j["grad_init"] = r.grad_init;
    j["grad_max"] = r.grad_max;
    return j;
}

Json to_json(const MassCheck& m) {
    Json j;
    j["mass"] = m.mass;
    j["predicted"] = m.predicted;
    j["rel_error"] = m.rel_error;
    return j;
}

Json to_json(const AssumptionReport& a) {
    Json j;
    j["phi1_max"] = a.phi1_max;
    j["a_phi1_strict_max"] = a.a_phi1_strict_max;
    j["margin"] = a.margin;
    j["phi1_at_q"] = a.phi1_at_q;
    j["a_phi1_at_q"] = a.a_phi1_at_q;
    j["ok"] = a.ok();
    return j;
}

Json to_json(const BubbleConfig& c) {
    Json j;
    j["t"] = c.t;
    Json xs = Json::array();
    for (const Point& p : c.xi) xs.push_back(Json{{"x", p.x}, {"y", p.y}});
    j["xi"] = xs;
    j["mu0"] = c.mu0;
    j["mu"] = c.mu;
    j["eps0"] = c.eps0;
    j["eps"] = c.eps;
    j["rho0"] = c.rho0;
    j["v0"] = c.v0;
    j["gamma"] = c.gamma;
    j["core_q"] = c.core_q();
    return j;
}

} // namespace liouville
