#include "liouville/ansatz.hpp"

#include <cmath>

namespace liouville {

namespace {

constexpr double kExpClamp = 700.0;

double safe_exp(double x, int* clamped) {
    if (x > kExpClamp) {
        if (clamped) ++*clamped;
        x = kExpClamp;
    }
    return std::exp(x);
}

} // namespace

BubbleConfig make_bubble_config(const Problem& pb, double t, const std::vector<Point>& xi) {
    if (t <= 0.0) throw ConfigError("t must be positive");
    if (static_cast<int>(xi.size()) != pb.m())
        throw ConfigError("xi must have exactly m points");
    const Grid& g = pb.grid();
    const double min_sep = 2.0 * g.h();
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (g.domain().signed_distance(xi[i]) > -2.0 * g.h())
            throw ConfigError("bubble point too close to the boundary");
        if (dist(xi[i], pb.q()) < min_sep)
            throw ConfigError("bubble point coincides with q");
        for (std::size_t j = i + 1; j < xi.size(); ++j)
            if (dist(xi[i], xi[j]) < min_sep)
                throw ConfigError("coincident bubble points");
    }

    GreenTable& green = pb.green();
    green.ensure_pole(pb.q());
    for (const Point& p : xi) green.ensure_pole(p);

    BubbleConfig cfg;
    cfg.t = t;
    cfg.xi = xi;
    const double al = pb.alpha();
    cfg.eps0 = pb.eps0(t);

    double log_m0 = (1.0 + al) * green.robin(pb.q());
    for (const Point& p : xi) log_m0 += green.G(pb.q(), p);
    cfg.mu0 = std::sqrt(pb.k_at(pb.q()) * std::exp(log_m0) / (8.0 * (1.0 + al) * (1.0 + al)));

    cfg.rho0 = std::pow(cfg.eps0, 1.0 / (1.0 + al));
    cfg.v0 = std::pow(cfg.mu0, 1.0 / (1.0 + al));

    for (std::size_t i = 0; i < xi.size(); ++i) {
        double lg = green.robin(xi[i]) + (1.0 + al) * green.G(xi[i], pb.q());
        for (std::size_t j = 0; j < xi.size(); ++j)
            if (j != i) lg += green.G(xi[i], xi[j]);
        const double w = pb.k_at(xi[i]) * std::pow(dist(xi[i], pb.q()), 2.0 * al);
        cfg.mu.push_back(std::sqrt(w * std::exp(lg) / 8.0));
        cfg.eps.push_back(std::exp(-0.5 * t * pb.phi1_at(xi[i])));
        cfg.gamma.push_back(cfg.eps.back() * cfg.mu.back() / cfg.eps0);
    }
    return cfg;
}

ResolutionCheck resolution_guard(const Problem& pb, const BubbleConfig& cfg) {
    ResolutionCheck rc;
    const double h = pb.grid().h();
    double cells = cfg.core_q() / h;
    for (int i = 0; i < cfg.m(); ++i) cells = std::min(cells, cfg.core_i(i) / h);
    rc.min_core_cells = cells;
    rc.ok = cells >= pb.knobs().resolution_cells;
    if (!rc.ok)
        rc.detail = "bubble core width " + std::to_string(cells) +
                    "h below the guard of " + std::to_string(pb.knobs().resolution_cells) + "h";
    return rc;
}

ConfigSpaceCheck in_configuration_space(const Problem& pb, double t,
                                        const std::vector<Point>& xi) {
    ConfigSpaceCheck c;
    const double tb = std::pow(t, -pb.beta());
    const double level_scale = 1.0 / std::sqrt(t);
    const double aq_phi = pb.a_at(pb.q()) * pb.phi1_q();
    double min_slack = 1e300;
    for (const Point& p : xi) {
        const double dq = dist(p, pb.q());
        c.slack_ball.push_back(pb.d() - dq);
        const double deficit = aq_phi - pb.a_at(p) * pb.phi1_at(p);
        if (deficit < 0.0) c.negative_deficit = true;
        c.slack_level.push_back(level_scale - deficit);
        c.slack_dist_q.push_back(dq - tb);
    }
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t j = i + 1; j < xi.size(); ++j)
            c.slack_dist_pair.push_back(dist(xi[i], xi[j]) - tb);
    for (const auto* v : {&c.slack_ball, &c.slack_level, &c.slack_dist_q, &c.slack_dist_pair})
        for (double s : *v) {
            if (s < 0.0) c.ok = false;
            min_slack = std::min(min_slack, s);
        }
    c.min_slack = xi.empty() ? 0.0 : min_slack;
    return c;
}

double profile_value(const Problem& pb, const BubbleConfig& cfg, int i, Point x) {
    const double al = pb.alpha();
    if (i == 0) {
        const double r = dist(x, pb.q());
        const double core = cfg.eps0 * cfg.eps0 * cfg.mu0 * cfg.mu0;
        return std::log(8.0 * cfg.mu0 * cfg.mu0 * (1.0 + al) * (1.0 + al) / pb.k_at(pb.q())) -
               2.0 * std::log(core + std::pow(r, 2.0 * (1.0 + al)));
    }
    const std::size_t ii = static_cast<std::size_t>(i - 1);
    const Point& s = cfg.xi[ii];
    const double r2 = dot(x - s, x - s);
    const double core = cfg.eps[ii] * cfg.eps[ii] * cfg.mu[ii] * cfg.mu[ii];
    const double denom = pb.k_at(s) * std::pow(dist(s, pb.q()), 2.0 * pb.alpha());
    return std::log(8.0 * cfg.mu[ii] * cfg.mu[ii] / denom) - 2.0 * std::log(core + r2);
}

std::vector<ScalarField> bubble_profiles(const Problem& pb, const BubbleConfig& cfg) {
    std::vector<ScalarField> out;
    const Grid& g = pb.grid();
    for (int i = 0; i <= cfg.m(); ++i) {
        ScalarField u(g);
        for (int k = 0; k < g.num_interior(); ++k)
            u[k] = profile_value(pb, cfg, i, g.interior_point(k));
        out.push_back(std::move(u));
    }
    return out;
}

std::vector<ScalarField> corrections(const Problem& pb, const BubbleConfig& cfg,
                                     CorrectionMode mode) {
    const Grid& g = pb.grid();
    std::vector<ScalarField> out;
    if (mode == CorrectionMode::Leading) {
        GreenTable& green = pb.green();
        const double al = pb.alpha();
        {
            const int iq = green.ensure_pole(pb.q());
            const ScalarField& Hq = green.regular_field(iq);
            ScalarField H0(g);
            const double cst =
                std::log(8.0 * cfg.mu0 * cfg.mu0 * (1.0 + al) * (1.0 + al) / pb.k_at(pb.q()));
            for (int k = 0; k < g.num_interior(); ++k) H0[k] = (1.0 + al) * Hq[k] - cst;
            out.push_back(std::move(H0));
        }
        for (int i = 0; i < cfg.m(); ++i) {
            const int ip = green.ensure_pole(cfg.xi[static_cast<std::size_t>(i)]);
            const ScalarField& Hx = green.regular_field(ip);
            const Point& s = cfg.xi[static_cast<std::size_t>(i)];
            const double denom = pb.k_at(s) * std::pow(dist(s, pb.q()), 2.0 * al);
            const double cst = std::log(8.0 * cfg.mu[static_cast<std::size_t>(i)] *
                                        cfg.mu[static_cast<std::size_t>(i)] / denom);
            ScalarField Hi(g);
            for (int k = 0; k < g.num_interior(); ++k) Hi[k] = Hx[k] - cst;
            out.push_back(std::move(Hi));
        }
        return out;
    }

    // Exact corrections: -Delta_a H_i = grad(log a) . grad(u_i), H_i = -u_i
    // on the boundary. grad(u_i) is analytic; grad(log a) by centered
    // differences via the coefficient itself.
    const DiscreteOperator& op = pb.op();
    const bool const_a = op.coefficient().kind() == Coefficient::Kind::Constant;
    const double al = pb.alpha();
    const Coefficient& a = op.coefficient();
    const double h = g.h();
    auto grad_log_a = [&](Point p) -> Point {
        const double le = std::log(a({p.x + h, p.y})), lw = std::log(a({p.x - h, p.y}));
        const double ln = std::log(a({p.x, p.y + h})), ls = std::log(a({p.x, p.y - h}));
        return {(le - lw) / (2.0 * h), (ln - ls) / (2.0 * h)};
    };

    for (int i = 0; i <= cfg.m(); ++i) {
        ScalarField f(g);
        if (!const_a) {
            for (int k = 0; k < g.num_interior(); ++k) {
                const Point p = g.interior_point(k);
                Point grad_u;
                if (i == 0) {
                    const Point dq = p - pb.q();
                    const double r = norm(dq);
                    if (r < 1e-14) continue; // symmetric average vanishes at the pole node
                    const double core = cfg.eps0 * cfg.eps0 * cfg.mu0 * cfg.mu0;
                    const double rp = std::pow(r, 2.0 * al);
                    const double fac =
                        -4.0 * (1.0 + al) * rp / (core + std::pow(r, 2.0 * (1.0 + al)));
                    grad_u = {fac * dq.x, fac * dq.y};
                } else {
                    const std::size_t ii = static_cast<std::size_t>(i - 1);
                    const Point ds = p - cfg.xi[ii];
                    const double core = cfg.eps[ii] * cfg.eps[ii] * cfg.mu[ii] * cfg.mu[ii];
                    const double fac = -4.0 / (core + dot(ds, ds));
                    grad_u = {fac * ds.x, fac * ds.y};
                }
                f[k] = dot(grad_log_a(p), grad_u);
            }
        }
        const int icopy = i;
        auto trace = [&pb, &cfg, icopy](Point p) { return -profile_value(pb, cfg, icopy, p); };
        out.push_back(op.solve_dirichlet(f, trace));
    }
    return out;
}

ScalarField bare_weight(const Problem& pb, double t) {
    const Grid& g = pb.grid();
    const QuadratureRule& rs = pb.rule_singular();
    ScalarField w0(g);
    for (int k = 0; k < g.num_interior(); ++k)
        w0[k] = rs.weight_factor(k) * pb.bg().k[k] * std::exp(-t * pb.eigen().phi1[k]);
    return w0;
}

AnsatzFields assemble(const Problem& pb, const BubbleConfig& cfg, CorrectionMode mode) {
    AnsatzFields f;
    f.config = cfg;
    f.profiles = bubble_profiles(pb, cfg);
    f.corrections = corrections(pb, cfg, mode);
    const Grid& g = pb.grid();
    f.U = ScalarField(g);
    for (int k = 0; k < g.num_interior(); ++k) {
        double s = 0.0;
        for (int i = 0; i <= cfg.m(); ++i)
            s += f.profiles[static_cast<std::size_t>(i)][k] +
                 f.corrections[static_cast<std::size_t>(i)][k];
        f.U[k] = s;
    }
    const ScalarField w0 = bare_weight(pb, cfg.t);
    f.W = ScalarField(g);
    for (int k = 0; k < g.num_interior(); ++k)
        f.W[k] = w0[k] * safe_exp(f.U[k], &f.overflow_clamped);

    // E = Delta_a U + W. Since the corrections cancel the drift of each
    // profile exactly, Delta_a U collapses to the sum of the free-space
    // profile Laplacians, which are closed-form; evaluating them directly
    // keeps E free of stencil truncation noise at the bubble cores and the
    // cut boundary cells.
    f.E = ScalarField(g);
    const QuadratureRule& rs = pb.rule_singular();
    const double al = pb.alpha();
    const double core0 = cfg.eps0 * cfg.eps0 * cfg.mu0 * cfg.mu0;
    for (int k = 0; k < g.num_interior(); ++k) {
        const Point p = g.interior_point(k);
        const double rq = dist(p, pb.q());
        const double denom0 = core0 + std::pow(rq, 2.0 * (1.0 + al));
        double lap = 8.0 * core0 * (1.0 + al) * (1.0 + al) * rs.weight_factor(k) /
                     (denom0 * denom0);
        for (int i = 0; i < cfg.m(); ++i) {
            const double ci = cfg.eps[static_cast<std::size_t>(i)] *
                              cfg.eps[static_cast<std::size_t>(i)] *
                              cfg.mu[static_cast<std::size_t>(i)] *
                              cfg.mu[static_cast<std::size_t>(i)];
            const Point ds = p - cfg.xi[static_cast<std::size_t>(i)];
            const double di = ci + dot(ds, ds);
            lap += 8.0 * ci / (di * di);
        }
        f.E[k] = f.W[k] - lap;
    }
    return f;
}

ScalarField star_weight(const Problem& pb, const BubbleConfig& cfg) {
    const Grid& g = pb.grid();
    const QuadratureRule& rs = pb.rule_singular();
    const double al = pb.alpha();
    const double ah = pb.alpha_hat();
    const double cq = cfg.core_q();
    const double e0sq = cfg.eps0 * cfg.eps0;
    ScalarField w(g);
    for (int k = 0; k < g.num_interior(); ++k) {
        const Point p = g.interior_point(k);
        const double rq = dist(p, pb.q()) / cq;
        // r^{2a} via the quadrature factor so the exact-center node stays finite
        const double rpow = rs.weight_factor(k) / std::pow(cq, 2.0 * al);
        double val = e0sq;
        val += e0sq / (cq * cq) * rpow / std::pow(1.0 + rq, 4.0 + 2.0 * ah + 2.0 * al);
        for (int i = 0; i < cfg.m(); ++i) {
            const double gi = cfg.gamma[static_cast<std::size_t>(i)];
            const double ri = dist(p, cfg.xi[static_cast<std::size_t>(i)]) / cfg.core_i(i);
            val += 1.0 / (gi * gi) * std::pow(1.0 + ri, -4.0 - 2.0 * ah);
        }
        w[k] = val / e0sq;
    }
    return w;
}

double star_norm(const Problem& pb, const BubbleConfig& cfg, const ScalarField& field) {
    const ScalarField w = star_weight(pb, cfg);
    double s = 0.0;
    for (int k = 0; k < field.size(); ++k) s = std::max(s, std::abs(field[k]) / w[k]);
    return s;
}

} // namespace liouville
