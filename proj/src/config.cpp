#include "liouville/config.hpp"

#include <cmath>

namespace liouville {

namespace {

Point parse_point(const Json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(what + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Domain parse_domain(const Json& j) {
    const std::string kind = j.value("kind", "disc");
    if (kind == "disc") {
        Point c{0, 0};
        if (j.contains("center")) c = parse_point(j["center"], "domain.center");
        return Domain::disc(c, j.value("radius", 1.0));
    }
    if (kind == "rect" || kind == "rectangle")
        return Domain::rectangle(j.value("xmin", 0.0), j.value("xmax", 1.0),
                                 j.value("ymin", 0.0), j.value("ymax", 1.0));
    throw ConfigError("domain.kind must be 'disc' or 'rect'");
}

Coefficient parse_coefficient(const Json& j) {
    const std::string kind = j.value("kind", "constant");
    if (kind == "constant") return Coefficient::constant(j.value("value", 1.0));
    if (kind == "exp_x") return Coefficient::exp_x(j.value("c", 1.0));
    if (kind == "gaussian_bump") {
        Point c{0, 0};
        if (j.contains("center")) c = parse_point(j["center"], "coefficient.center");
        return Coefficient::gaussian_bump(j.value("base", 1.0), j.value("amplitude", 1.0),
                                          j.value("sigma", 0.25), c);
    }
    throw ConfigError("coefficient.kind must be 'constant', 'exp_x' or 'gaussian_bump'");
}

SourceField parse_source(const Json& j) {
    const std::string kind = j.value("kind", "zero");
    if (kind == "zero") return SourceField::zero();
    if (kind == "constant") return SourceField::constant(j.value("value", 0.0));
    if (kind == "gaussian_bump") {
        Point c{0, 0};
        if (j.contains("center")) c = parse_point(j["center"], "h_field.center");
        return SourceField::gaussian_bump(j.value("amplitude", 1.0), j.value("sigma", 0.25), c);
    }
    if (kind == "eigen_multiple") return SourceField::eigen_multiple(j.value("factor", 1.0));
    throw ConfigError("h_field.kind must be 'zero', 'constant', 'gaussian_bump' or "
                      "'eigen_multiple'");
}

} // namespace

RunConfig parse_config(const Json& j) {
    RunConfig c;
    c.schema = j.value("schema", 1);
    if (c.schema != 1) throw ConfigError("unsupported config schema version");
    if (j.contains("domain")) c.domain = parse_domain(j["domain"]);
    if (j.contains("coefficient")) c.a = parse_coefficient(j["coefficient"]);
    if (j.contains("h_field")) c.h = parse_source(j["h_field"]);
    c.alpha = j.value("alpha", 0.5);
    if (c.alpha <= -1.0) throw ConfigError("alpha must be > -1");
    if (c.alpha >= -0.5 && std::abs(c.alpha - std::round(c.alpha)) < 1e-12)
        throw ConfigError("alpha = " + std::to_string(c.alpha) +
                          " violates the requirement alpha in (-1, inf) \\ N "
                          "(nonnegative integers excluded)");
    c.m = j.value("m", 0);
    if (c.m < 0) throw ConfigError("m must be >= 0");
    if (j.contains("t_grid")) {
        c.t_grid = j["t_grid"].get<std::vector<double>>();
        if (c.t_grid.empty()) throw ConfigError("t_grid must be non-empty");
    } else {
        c.t_grid = {j.value("t", 6.0)};
    }
    for (double t : c.t_grid)
        if (t <= 0.0) throw ConfigError("t must be positive");
    if (j.contains("q")) c.q = parse_point(j["q"], "q");
    c.d = j.value("d", 0.5);
    c.n = j.value("n", 256);
    if (c.n < 16) throw ConfigError("n must be >= 16");
    if (j.contains("xi")) {
        for (const Json& p : j["xi"]) c.xi.push_back(parse_point(p, "xi"));
        if (static_cast<int>(c.xi.size()) != c.m)
            throw ConfigError("xi must list exactly m points");
    }
    if (j.contains("overrides")) {
        const Json& o = j["overrides"];
        if (o.contains("alpha_hat")) c.knobs.alpha_hat = o["alpha_hat"].get<double>();
        if (o.contains("sigma")) c.knobs.sigma = o["sigma"].get<double>();
        if (o.contains("R0")) c.knobs.R0 = o["R0"].get<double>();
        if (o.contains("R0_auto")) c.knobs.R0_auto = o["R0_auto"].get<bool>();
        if (o.contains("cutoff")) {
            const std::string k = o["cutoff"].get<std::string>();
            if (k == "quintic")
                c.knobs.cutoff = CutoffKind::Quintic;
            else if (k == "cosine")
                c.knobs.cutoff = CutoffKind::Cosine;
            else
                throw ConfigError("overrides.cutoff must be 'quintic' or 'cosine'");
        }
        if (o.contains("polygon_radius_mult"))
            c.knobs.polygon_radius_mult = o["polygon_radius_mult"].get<double>();
        if (o.contains("polygon_phase")) c.knobs.polygon_phase = o["polygon_phase"].get<double>();
        if (o.contains("barrier_coef")) c.knobs.barrier_coef = o["barrier_coef"].get<double>();
        if (o.contains("resolution_cells"))
            c.knobs.resolution_cells = o["resolution_cells"].get<double>();
        if (o.contains("simplex_max_eval"))
            c.knobs.simplex_max_eval = o["simplex_max_eval"].get<int>();
    }
    if (j.contains("tolerances")) {
        const Json& o = j["tolerances"];
        if (o.contains("linear_rel")) c.knobs.linear_rel_tol = o["linear_rel"].get<double>();
        if (o.contains("eigen_rel")) c.knobs.eigen_rel_tol = o["eigen_rel"].get<double>();
        if (o.contains("newton_abs")) c.knobs.newton_tol = o["newton_abs"].get<double>();
        if (o.contains("inner_abs")) c.knobs.inner_tol = o["inner_abs"].get<double>();
    }
    c.out_dir = j.value("out_dir", std::string("out"));
    c.jobs = j.value("jobs", 1);
    c.force = j.value("force", false);
    return c;
}

Json echo_config(const RunConfig& c) {
    Json j;
    j["schema"] = c.schema;
    {
        Json d;
        if (c.domain.kind() == Domain::Kind::Disc) {
            d["kind"] = "disc";
            d["center"] = {c.domain.center().x, c.domain.center().y};
            d["radius"] = c.domain.radius();
        } else {
            const BoundingBox b = c.domain.bounding_box();
            d["kind"] = "rect";
            d["xmin"] = b.xmin;
            d["xmax"] = b.xmax;
            d["ymin"] = b.ymin;
            d["ymax"] = b.ymax;
        }
        j["domain"] = d;
    }
    j["coefficient"] = c.a.describe();
    j["alpha"] = c.alpha;
    j["m"] = c.m;
    j["t_grid"] = c.t_grid;
    j["q"] = {c.q.x, c.q.y};
    j["d"] = c.d;
    j["n"] = c.n;
    if (!c.xi.empty()) {
        Json xs = Json::array();
        for (const Point& p : c.xi) xs.push_back(Json::array({p.x, p.y}));
        j["xi"] = xs;
    }
    Json o;
    o["alpha_hat"] = c.knobs.alpha_hat;
    o["sigma"] = c.knobs.sigma;
    o["R0"] = c.knobs.R0;
    o["R0_auto"] = c.knobs.R0_auto;
    o["cutoff"] = c.knobs.cutoff == CutoffKind::Quintic ? "quintic" : "cosine";
    o["polygon_radius_mult"] = c.knobs.polygon_radius_mult;
    o["polygon_phase"] = c.knobs.polygon_phase;
    o["barrier_coef"] = c.knobs.barrier_coef;
    o["resolution_cells"] = c.knobs.resolution_cells;
    o["simplex_max_eval"] = c.knobs.simplex_max_eval;
    j["overrides"] = o;
    Json tol;
    tol["linear_rel"] = c.knobs.linear_rel_tol;
    tol["eigen_rel"] = c.knobs.eigen_rel_tol;
    tol["newton_abs"] = c.knobs.newton_tol;
    tol["inner_abs"] = c.knobs.inner_tol;
    j["tolerances"] = tol;
    j["out_dir"] = c.out_dir;
    j["jobs"] = c.jobs;
    j["force"] = c.force;
    return j;
}

std::unique_ptr<Problem> build_problem(const RunConfig& c) {
    return std::make_unique<Problem>(c.domain, c.n, c.a, c.h, c.alpha, c.m, c.q, c.d, c.knobs);
}

std::vector<Point> config_points(const RunConfig& c, const Problem& pb, double t) {
    if (!c.xi.empty()) return c.xi;
    if (c.m == 0) return {};
    return initial_polygon(pb, t);
}

} // namespace liouville
