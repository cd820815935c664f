#include "liouville/energy.hpp"

#include <algorithm>
#include <cmath>

namespace liouville {

double energy_Jt(const Problem& pb, double t, const ScalarField& u) {
    const Grid& g = pb.grid();
    if (u.grid != &g) throw ConfigError("energy_Jt: field on a different grid");
    const int n = g.num_interior();
    Eigen::Map<const Eigen::VectorXd> uv(u.v.data(), n);
    const double grad_term = 0.5 * uv.dot(pb.op().stiffness() * uv);

    ScalarField smooth(g);
    for (int k = 0; k < n; ++k) {
        const double arg = u[k];
        if (arg > 700.0) {
            const Point p = g.interior_point(k);
            throw NumericError("energy_Jt: overflow in e^u at node (" + std::to_string(p.x) +
                               ", " + std::to_string(p.y) + ")");
        }
        smooth[k] = pb.op().a_values()[k] * pb.bg().k[k] *
                    std::exp(-t * pb.eigen().phi1[k] + arg);
    }
    return grad_term - integrate_weighted(smooth, pb.rule_singular());
}

double expansion_Jt(const Problem& pb, double t, const std::vector<Point>& xi) {
    const double al = pb.alpha();
    const Point q = pb.q();
    double v = 8.0 * M_PI * (1.0 + al) * t * pb.a_at(q) * pb.phi1_q();
    for (const Point& p : xi) {
        const double r = dist(p, q);
        if (r < 1e-14) throw ConfigError("expansion_Jt: xi coincides with q");
        v += 8.0 * M_PI * t * pb.a_at(p) * pb.phi1_at(p);
        v += 16.0 * M_PI * (2.0 + al) * pb.a_at(p) * std::log(r);
    }
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t j = 0; j < xi.size(); ++j) {
            if (i == j) continue;
            const double r = dist(xi[i], xi[j]);
            if (r < 1e-14) throw ConfigError("expansion_Jt: coincident xi points");
            v += 16.0 * M_PI * pb.a_at(xi[i]) * std::log(r);
        }
    return v;
}

std::vector<Point> initial_polygon(const Problem& pb, double t) {
    if (pb.m() < 1) throw ConfigError("initial_polygon: m must be >= 1");
    const double r = pb.knobs().polygon_radius_mult / std::sqrt(t);
    if (r >= pb.d())
        throw ConfigError("initial polygon of radius " + std::to_string(r) +
                          " exits B_d(q); increase t or d");
    std::vector<Point> xi;
    for (int i = 0; i < pb.m(); ++i) {
        const double th = pb.knobs().polygon_phase + 2.0 * M_PI * i / pb.m();
        xi.push_back(pb.q() + r * Point{std::cos(th), std::sin(th)});
    }
    return xi;
}

EnergyEval EnergyEvaluator::evaluate(const std::vector<Point>& xi) {
    EnergyEval ev;
    const BubbleConfig cfg = make_bubble_config(*pb_, t_, xi);
    const AnsatzFields fields = assemble(*pb_, cfg);
    ev.J_U = energy_Jt(*pb_, t_, fields.U);
    if (!with_phi_) {
        ev.F = ev.J_U;
        return ev;
    }
    const ProjectionBasis basis = build_basis(*pb_, cfg);
    const ReductionSolve inner = solve_inner(*pb_, fields, basis);
    ScalarField u(pb_->grid());
    for (int k = 0; k < u.size(); ++k) u[k] = fields.U[k] + inner.phi[k];
    ev.F = energy_Jt(*pb_, t_, u);
    ev.c_x = inner.c_x;
    ev.c_y = inner.c_y;
    ev.phi_sup = inner.phi_sup;
    ev.inner_iterations = inner.iterations;
    return ev;
}

double EnergyEvaluator::operator()(const std::vector<Point>& xi) {
    std::vector<long long> key;
    for (const Point& p : xi) {
        key.push_back(std::llround(p.x * 1e6));
        key.push_back(std::llround(p.y * 1e6));
    }
    const auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    last_ = evaluate(xi);
    ++evals_;
    cache_[key] = last_.F;
    return last_.F;
}

double reduced_energy(const Problem& pb, double t, const std::vector<Point>& xi, bool with_phi) {
    EnergyEvaluator ev(pb, t, with_phi);
    return ev(xi);
}

namespace {

std::vector<Point> unpack(const std::vector<double>& v) {
    std::vector<Point> xi(v.size() / 2);
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = {v[2 * i], v[2 * i + 1]};
    return xi;
}

// Barriered objective: F_t plus log-barrier on every constraint slack.
// Returns -inf outside the admissible set.
double barrier_value(const Problem& pb, double t, const ConfigSpaceCheck& c) {
    const double cb = pb.knobs().barrier_coef;
    const double tb = std::pow(t, -pb.beta());
    double v = 0.0;
    auto add = [&](const std::vector<double>& slacks, double scale) {
        for (double s : slacks) {
            if (s <= 0.0) {
                v = -1e300;
                return;
            }
            v += cb * std::log(s / scale);
        }
    };
    add(c.slack_ball, pb.d());
    if (v < -1e200) return v;
    add(c.slack_level, 1.0 / std::sqrt(t));
    if (v < -1e200) return v;
    add(c.slack_dist_q, std::max(tb, 1e-300));
    if (v < -1e200) return v;
    add(c.slack_dist_pair, std::max(tb, 1e-300));
    return v;
}

std::vector<double> fd_gradient(EnergyEvaluator& ev, const std::vector<Point>& xi, double step) {
    std::vector<double> grad;
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (int c = 0; c < 2; ++c) {
            std::vector<Point> plus = xi, minus = xi;
            (c == 0 ? plus[i].x : plus[i].y) += step;
            (c == 0 ? minus[i].x : minus[i].y) -= step;
            grad.push_back((ev(plus) - ev(minus)) / (2.0 * step));
        }
    return grad;
}

} // namespace

EnergyReport maximize(const Problem& pb, double t) {
    if (pb.m() < 1) throw ConfigError("maximize: m must be >= 1");
    EnergyReport rep;
    rep.t = t;
    rep.xi_init = initial_polygon(pb, t);
    EnergyEvaluator ev(pb, t, /*with_phi=*/true);

    auto objective = [&](const std::vector<double>& v) -> double {
        const std::vector<Point> xi = unpack(v);
        const ConfigSpaceCheck c = in_configuration_space(pb, t, xi);
        const double bar = barrier_value(pb, t, c);
        if (bar < -1e200) return -1e300;
        return ev(xi) + bar;
    };

    const int dim = 2 * pb.m();
    std::vector<double> x0;
    for (const Point& p : rep.xi_init) {
        x0.push_back(p.x);
        x0.push_back(p.y);
    }
    const double step0 = 0.15 / std::sqrt(t);

    // Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
    std::vector<std::vector<double>> vx(static_cast<std::size_t>(dim + 1), x0);
    for (int i = 0; i < dim; ++i) vx[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += step0;
    std::vector<double> fv(static_cast<std::size_t>(dim + 1));
    for (std::size_t i = 0; i < vx.size(); ++i) fv[i] = objective(vx[i]);

    const double diam_target = 1e-4 / std::sqrt(t);
    const int max_eval = pb.knobs().simplex_max_eval;
    double diam = 1e300;
    while (ev.evaluations() < max_eval) {
        // order descending (maximization)
        std::vector<std::size_t> idx(vx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] > fv[b]; });
        std::vector<std::vector<double>> sv;
        std::vector<double> sf;
        for (std::size_t i : idx) {
            sv.push_back(vx[i]);
            sf.push_back(fv[i]);
        }
        vx = sv;
        fv = sf;

        diam = 0.0;
        for (std::size_t i = 1; i < vx.size(); ++i)
            for (int c = 0; c < dim; ++c)
                diam = std::max(diam, std::abs(vx[i][static_cast<std::size_t>(c)] -
                                               vx[0][static_cast<std::size_t>(c)]));
        if (diam <= diam_target) break;

        std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
        for (std::size_t i = 0; i + 1 < vx.size(); ++i)
            for (int c = 0; c < dim; ++c)
                centroid[static_cast<std::size_t>(c)] += vx[i][static_cast<std::size_t>(c)] / dim;

        auto blend = [&](double coef) {
            std::vector<double> p(static_cast<std::size_t>(dim));
            for (int c = 0; c < dim; ++c)
                p[static_cast<std::size_t>(c)] =
                    centroid[static_cast<std::size_t>(c)] +
                    coef * (centroid[static_cast<std::size_t>(c)] -
                            vx.back()[static_cast<std::size_t>(c)]);
            return p;
        };

        const std::vector<double> xr = blend(1.0);
        const double fr = objective(xr);
        if (fr > fv[0]) {
            const std::vector<double> xe = blend(2.0);
            const double fe = objective(xe);
            if (fe > fr) {
                vx.back() = xe;
                fv.back() = fe;
            } else {
                vx.back() = xr;
                fv.back() = fr;
            }
        } else if (fr > fv[fv.size() - 2]) {
            vx.back() = xr;
            fv.back() = fr;
        } else {
            const std::vector<double> xc = blend(-0.5);
            const double fc = objective(xc);
            if (fc > fv.back()) {
                vx.back() = xc;
                fv.back() = fc;
            } else {
                for (std::size_t i = 1; i < vx.size(); ++i) {
                    for (int c = 0; c < dim; ++c)
                        vx[i][static_cast<std::size_t>(c)] =
                            0.5 * (vx[i][static_cast<std::size_t>(c)] +
                                   vx[0][static_cast<std::size_t>(c)]);
                    fv[i] = objective(vx[i]);
                }
            }
        }
    }

    rep.converged = diam <= diam_target;
    rep.simplex_diameter = diam;
    rep.xi_max = unpack(vx[0]);
    rep.evaluations = ev.evaluations();

    // Final diagnostics at the maximizer (and the ascent contract values).
    const EnergyEval at_init = ev.evaluate(rep.xi_init);
    rep.value_init = at_init.F;
    const EnergyEval at_max = ev.evaluate(rep.xi_max);
    rep.value_max = at_max.F;
    rep.c_x = at_max.c_x;
    rep.c_y = at_max.c_y;
    rep.margins = in_configuration_space(pb, t, rep.xi_max);

    const double tb = std::pow(t, -pb.beta());
    auto pinned = [&](const std::vector<double>& slacks, double scale) {
        for (double s : slacks)
            if (s < 1e-3 * scale) return true;
        return false;
    };
    rep.pinned = pinned(rep.margins.slack_ball, pb.d()) ||
                 pinned(rep.margins.slack_level, 1.0 / std::sqrt(t)) ||
                 pinned(rep.margins.slack_dist_q, tb) ||
                 pinned(rep.margins.slack_dist_pair, tb);

    const double fd_step = 1e-3 / std::sqrt(t);
    rep.grad_init = fd_gradient(ev, rep.xi_init, fd_step);
    rep.grad_max = fd_gradient(ev, rep.xi_max, fd_step);
    return rep;
}

} // namespace liouville
