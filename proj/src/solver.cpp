#include "liouville/solver.hpp"

#include <Eigen/SparseLU>

#include <cmath>

namespace liouville {

namespace {

Eigen::VectorXd residual_vec(const Problem& pb, const ScalarField& w0, const ScalarField& u) {
    const int n = pb.grid().num_interior();
    Eigen::Map<const Eigen::VectorXd> uv(u.v.data(), n);
    Eigen::VectorXd r = pb.op().stiffness() * uv;
    const Eigen::VectorXd mass = pb.op().mass_diagonal();
    for (int k = 0; k < n; ++k) {
        const double arg = std::min(u[k], 700.0);
        r[k] = r[k] / mass[k] - w0[k] * std::exp(arg);
    }
    return r;
}

} // namespace

SolveReport newton_solve(const Problem& pb, double t, const ScalarField& u_init) {
    const Grid& g = pb.grid();
    const int n = g.num_interior();
    const ScalarField w0 = bare_weight(pb, t);
    const Eigen::VectorXd mass = pb.op().mass_diagonal();
    const SparseMat& K = pb.op().stiffness();

    SolveReport rep;
    rep.t = t;
    ScalarField u = u_init;
    Eigen::VectorXd F = residual_vec(pb, w0, u);
    double fnorm = F.lpNorm<Eigen::Infinity>();
    rep.residual_history.push_back(fnorm);

    const double tol = pb.knobs().newton_tol;
    const int max_iter = pb.knobs().newton_max_iter;
    double prev_full = -1.0;
    for (int it = 0; it < max_iter && fnorm > tol; ++it) {
        // Symmetrized Jacobian: (K - diag(a w W0 e^u)) delta = -(a w) F.
        SparseMat J = K;
        Eigen::VectorXd shift(n), rhs(n);
        for (int k = 0; k < n; ++k) {
            const double arg = std::min(u[k], 700.0);
            shift[k] = -mass[k] * w0[k] * std::exp(arg);
            rhs[k] = -mass[k] * F[k];
        }
        J += SparseMat(shift.asDiagonal());
        Eigen::SparseLU<SparseMat> lu(J);
        if (lu.info() != Eigen::Success)
            throw NumericError("newton_solve: singular Jacobian (near-degenerate solution)");
        const Eigen::VectorXd delta = lu.solve(rhs);

        double s = 1.0;
        ScalarField trial(g);
        double trial_norm = 0.0;
        for (;;) {
            for (int k = 0; k < n; ++k) trial[k] = u[k] + s * delta[k];
            const Eigen::VectorXd Ft = residual_vec(pb, w0, trial);
            trial_norm = Ft.lpNorm<Eigen::Infinity>();
            if (trial_norm <= (1.0 - 0.25 * s) * fnorm) {
                F = Ft;
                break;
            }
            s *= 0.5;
            if (s < 1.0 / 4096.0) {
                std::string dump = "newton_solve: line search stagnated; residuals:";
                for (double r : rep.residual_history) dump += " " + std::to_string(r);
                throw NumericError(dump);
            }
        }
        if (s == 1.0 && fnorm > 0.0) prev_full = trial_norm / (fnorm * fnorm);
        u = trial;
        fnorm = trial_norm;
        rep.residual_history.push_back(fnorm);
        rep.step_sizes.push_back(s);
        rep.iterations = it + 1;
    }
    rep.u = u;
    rep.final_residual = fnorm;
    rep.converged = fnorm <= tol;
    rep.quad_ratio = prev_full > 0 ? prev_full : 0.0;
    rep.dist_to_init = sup_diff(u, u_init);
    return rep;
}

Reconstruction reconstruct_v(const Problem& pb, const ScalarField& u, double s) {
    const Grid& g = pb.grid();
    const double t = s / pb.eigen().lambda1;
    GreenTable& green = pb.green();
    const int iq = green.ensure_pole(pb.q());
    const ScalarField& Hq = green.regular_field(iq);
    const double al = pb.alpha();

    Reconstruction rec;
    rec.v = ScalarField(g);
    int nearest = -1;
    double best = 1e300;
    for (int k = 0; k < g.num_interior(); ++k) {
        const double dk = dist(g.interior_point(k), pb.q());
        if (dk < best) {
            best = dk;
            nearest = k;
        }
    }
    for (int k = 0; k < g.num_interior(); ++k) {
        const double r = dist(g.interior_point(k), pb.q());
        double G = 0.0;
        if (al != 0.0) {
            if (k == nearest && r < 1e-12) {
                rec.excluded_node = k;
                rec.v[k] = 0.0;
                continue;
            }
            G = 4.0 * std::log(1.0 / r) + Hq[k];
        }
        rec.v[k] = u[k] - t * pb.eigen().phi1[k] - 0.5 * al * G - pb.bg().rho[k];
    }

    // Identity a e^v = a k |x-q|^{2a} e^{-t phi1} e^u, sampled away from q.
    double err = 0.0;
    for (int k = 0; k < g.num_interior(); ++k) {
        const double r = dist(g.interior_point(k), pb.q());
        if (r < 5.0 * g.h()) continue;
        const double lhs = rec.v[k];
        const double rhs = std::log(pb.bg().k[k]) + 2.0 * al * std::log(r) -
                           t * pb.eigen().phi1[k] + u[k];
        err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    rec.max_identity_error = err;
    return rec;
}

MassCheck mass_check(const Problem& pb, double t, const ScalarField& u) {
    const Grid& g = pb.grid();
    ScalarField smooth(g);
    for (int k = 0; k < g.num_interior(); ++k)
        smooth[k] = pb.op().a_values()[k] * pb.bg().k[k] *
                    std::exp(-t * pb.eigen().phi1[k] + std::min(u[k], 700.0));
    MassCheck mc;
    mc.mass = integrate_weighted(smooth, pb.rule_singular());
    mc.predicted = 8.0 * M_PI * (pb.m() + 1 + pb.alpha()) * pb.a_at(pb.q()) * pb.phi1_q();
    mc.rel_error = std::abs(mc.mass - mc.predicted) / mc.predicted;
    return mc;
}

BubbleSummary bubble_report(const Problem& pb, double t, const ScalarField& u) {
    const Grid& g = pb.grid();
    BubbleSummary b;
    b.expected = pb.m() + 1;
    b.spacing_threshold = std::pow(t, -pb.beta());

    double umax = -1e300;
    for (int k = 0; k < g.num_interior(); ++k) umax = std::max(umax, u[k]);
    const double cut = umax / 2.0;

    std::vector<Peak> raw;
    for (int k = 0; k < g.num_interior(); ++k) {
        if (u[k] < cut || umax <= 0.0) continue;
        const auto [ix, iy] = g.interior_coords(k);
        bool strict = true;
        for (int dx = -1; dx <= 1 && strict; ++dx)
            for (int dy = -1; dy <= 1 && strict; ++dy) {
                if (dx == 0 && dy == 0) continue;
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jx >= g.nx() || jy < 0 || jy >= g.ny()) {
                    strict = false;
                    break;
                }
                const int kk = g.interior_index(jx, jy);
                if (kk < 0) {
                    strict = false; // peaks cannot sit against the boundary
                    break;
                }
                if (u[kk] >= u[k]) strict = false;
            }
        if (strict) raw.push_back({g.interior_point(k), u[k]});
    }
    // Deduplicate within 2h, keeping the taller peak.
    std::sort(raw.begin(), raw.end(), [](const Peak& a, const Peak& b) { return a.height > b.height; });
    for (const Peak& p : raw) {
        bool dominated = false;
        for (const Peak& kept : b.peaks)
            if (dist(kept.p, p.p) <= 2.0 * g.h()) dominated = true;
        if (!dominated) b.peaks.push_back(p);
    }

    b.count_ok = static_cast<int>(b.peaks.size()) == b.expected;
    b.min_pair_dist = 1e300;
    b.min_dist_q = 1e300;
    b.max_dist_q = 0.0;
    for (std::size_t i = 0; i < b.peaks.size(); ++i) {
        const double dq = dist(b.peaks[i].p, pb.q());
        b.min_dist_q = std::min(b.min_dist_q, dq);
        b.max_dist_q = std::max(b.max_dist_q, dq);
        for (std::size_t j = i + 1; j < b.peaks.size(); ++j)
            b.min_pair_dist = std::min(b.min_pair_dist, dist(b.peaks[i].p, b.peaks[j].p));
    }
    b.spacing_ok = b.peaks.size() < 2 || b.min_pair_dist > b.spacing_threshold;
    b.containment_ok = true;
    for (const Peak& p : b.peaks)
        if (dist(p.p, pb.q()) > pb.d() + 2.0 * g.h()) b.containment_ok = false;
    return b;
}

SolveReport solve_pipeline(const Problem& pb, double t, const std::vector<Point>& xi) {
    const BubbleConfig cfg = make_bubble_config(pb, t, xi);
    const AnsatzFields fields = assemble(pb, cfg);
    const ProjectionBasis basis = build_basis(pb, cfg);
    const ReductionSolve inner = solve_inner(pb, fields, basis);
    ScalarField u0(pb.grid());
    for (int k = 0; k < u0.size(); ++k) u0[k] = fields.U[k] + inner.phi[k];
    SolveReport rep = newton_solve(pb, t, u0);
    const MassCheck mc = mass_check(pb, t, rep.u);
    rep.mass = mc.mass;
    rep.mass_pred = mc.predicted;
    rep.mass_rel_err = mc.rel_error;
    rep.bubbles = bubble_report(pb, t, rep.u);
    return rep;
}

std::vector<SolveReport> continuation(const Problem& pb, const std::vector<double>& t_grid) {
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] <= t_grid[i - 1])
            throw ConfigError("continuation: t grid must be strictly increasing");

    std::vector<SolveReport> out;
    std::optional<ScalarField> prev_correction; // u* - U at the previous t
    for (double t : t_grid) {
        try {
            const std::vector<Point> xi = pb.m() >= 1 ? initial_polygon(pb, t)
                                                      : std::vector<Point>{};
            const BubbleConfig cfg = make_bubble_config(pb, t, xi);
            const ResolutionCheck rc = resolution_guard(pb, cfg);
            if (!rc.ok) throw NumericError("continuation: " + rc.detail);
            const AnsatzFields fields = assemble(pb, cfg);
            ScalarField u0(pb.grid());
            if (prev_correction) {
                for (int k = 0; k < u0.size(); ++k)
                    u0[k] = fields.U[k] + (*prev_correction)[k];
            } else {
                const ProjectionBasis basis = build_basis(pb, cfg);
                const ReductionSolve inner = solve_inner(pb, fields, basis);
                for (int k = 0; k < u0.size(); ++k) u0[k] = fields.U[k] + inner.phi[k];
            }
            SolveReport rep = newton_solve(pb, t, u0);
            const MassCheck mc = mass_check(pb, t, rep.u);
            rep.mass = mc.mass;
            rep.mass_pred = mc.predicted;
            rep.mass_rel_err = mc.rel_error;
            rep.bubbles = bubble_report(pb, t, rep.u);
            ScalarField corr(pb.grid());
            for (int k = 0; k < corr.size(); ++k) corr[k] = rep.u[k] - fields.U[k];
            prev_correction = corr;
            out.push_back(std::move(rep));
        } catch (const std::exception& e) {
            SolveReport rep;
            rep.t = t;
            rep.failed = true;
            rep.failure = e.what();
            prev_correction.reset(); // reseed from a fresh ansatz next step
            out.push_back(std::move(rep));
        }
    }
    return out;
}

} // namespace liouville
