#include "liouville/reduction.hpp"

#include <cmath>

namespace liouville {

namespace {

double cutoff(CutoffKind kind, double s, double R0) {
    if (s <= R0) return 1.0;
    if (s >= R0 + 1.0) return 0.0;
    const double tau = s - R0;
    if (kind == CutoffKind::Cosine) return 0.5 * (1.0 + std::cos(M_PI * tau));
    return 1.0 - tau * tau * tau * (10.0 - 15.0 * tau + 6.0 * tau * tau);
}

double Zj(Point z, int j) { return 4.0 * (j == 1 ? z.x : z.y) / (dot(z, z) + 1.0); }
double Z0(Point z) { return (dot(z, z) - 1.0) / (dot(z, z) + 1.0); }
double Zq(Point z, double alpha) {
    const double rp = std::pow(norm(z), 2.0 * (1.0 + alpha));
    return (rp - 1.0) / (rp + 1.0);
}

double l2(const ScalarField& f, const QuadratureRule& w) {
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k)
        s += w.weights[static_cast<std::size_t>(k)] * f[k] * f[k];
    return std::sqrt(s);
}

} // namespace

double max_feasible_R0(const Problem& pb, const BubbleConfig& cfg) {
    double best = 1e300;
    const Point q = pb.q();
    for (int i = 0; i < cfg.m(); ++i) {
        const Point s = cfg.xi[static_cast<std::size_t>(i)];
        const double ci = cfg.core_i(i);
        best = std::min(best, dist(s, q) / (ci + cfg.core_q()));
        best = std::min(best, -pb.grid().domain().signed_distance(s) / ci);
        for (int j = i + 1; j < cfg.m(); ++j)
            best = std::min(best, dist(s, cfg.xi[static_cast<std::size_t>(j)]) /
                                      (ci + cfg.core_i(j)));
    }
    return best - 1.0;
}

ProjectionBasis build_basis(const Problem& pb, const BubbleConfig& cfg) {
    ProjectionBasis basis;
    const Knobs& kn = pb.knobs();
    basis.R0 = kn.R0;
    if (cfg.m() > 0) {
        const double feasible = max_feasible_R0(pb, cfg);
        if (kn.R0_auto)
            basis.R0 = std::min(kn.R0, 0.95 * feasible);
        else if (kn.R0 > feasible)
            throw ConfigError("cutoff supports overlap for R0 = " + std::to_string(kn.R0) +
                              "; largest feasible R0 is " + std::to_string(0.95 * feasible));
        if (basis.R0 <= 0.0)
            throw ConfigError("no positive cutoff radius fits this configuration");
    }

    const Grid& g = pb.grid();
    for (int i = 0; i < cfg.m(); ++i) {
        const Point s = cfg.xi[static_cast<std::size_t>(i)];
        const double ci = cfg.core_i(i);
        const double gi = cfg.gamma[static_cast<std::size_t>(i)];
        for (int j = 1; j <= 2; ++j) {
            ScalarField f(g);
            for (int k = 0; k < g.num_interior(); ++k) {
                const Point z = (1.0 / ci) * (g.interior_point(k) - s);
                const double chi = cutoff(kn.cutoff, norm(z), basis.R0);
                if (chi > 0.0) f[k] = chi * Zj(z, j) / gi;
            }
            basis.constraint.push_back(std::move(f));
            basis.labels.emplace_back(i + 1, j);
        }
        ScalarField f0(g);
        for (int k = 0; k < g.num_interior(); ++k) {
            const Point z = (1.0 / ci) * (g.interior_point(k) - s);
            const double chi = cutoff(kn.cutoff, norm(z), basis.R0);
            if (chi > 0.0) f0[k] = chi * Z0(z) / gi;
        }
        basis.chi_Zi0.push_back(std::move(f0));
    }
    {
        ScalarField f(g);
        const double cq = cfg.core_q();
        for (int k = 0; k < g.num_interior(); ++k) {
            const Point z = (1.0 / cq) * (g.interior_point(k) - pb.q());
            const double chi = cutoff(kn.cutoff, norm(z), basis.R0);
            if (chi > 0.0) f[k] = chi * Zq(z, pb.alpha()) * cfg.eps0 / cq;
        }
        basis.chi_q_Zq = std::move(f);
    }
    return basis;
}

ProjectedSolver::ProjectedSolver(const Problem& pb, const BubbleConfig& cfg,
                                 const ScalarField& W, const ProjectionBasis& basis)
    : pb_(&pb), cfg_(cfg), basis_(&basis) {
    const Grid& g = pb.grid();
    n_ = g.num_interior();
    const int nc = static_cast<int>(basis.constraint.size());
    const SparseMat& K = pb.op().stiffness();
    const Eigen::VectorXd mass = pb.op().mass_diagonal(); // a w

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(K.nonZeros()) + 4 * static_cast<std::size_t>(n_));
    for (int col = 0; col < K.outerSize(); ++col)
        for (SparseMat::InnerIterator it(K, col); it; ++it)
            trips.emplace_back(static_cast<int>(it.row()), col, it.value());
    for (int k = 0; k < n_; ++k) trips.emplace_back(k, k, -mass[k] * W[k]);
    const QuadratureRule& w = pb.rule_plain();
    for (int c = 0; c < nc; ++c) {
        const ScalarField& f = basis.constraint[static_cast<std::size_t>(c)];
        for (int k = 0; k < n_; ++k) {
            const double v = w.weights[static_cast<std::size_t>(k)] * f[k];
            if (v != 0.0) {
                trips.emplace_back(k, n_ + c, v);
                trips.emplace_back(n_ + c, k, v);
            }
        }
    }
    M_.resize(n_ + nc, n_ + nc);
    M_.setFromTriplets(trips.begin(), trips.end());
    M_.makeCompressed();
    lu_ = std::make_unique<Eigen::SparseLU<SparseMat>>();
    lu_->compute(M_);
    if (lu_->info() != Eigen::Success)
        throw NumericError("projected solver: singular augmented system "
                           "(near-kernel of the linearized operator)");
}

ReductionSolve ProjectedSolver::solve(const ScalarField& h) const {
    const int nc = static_cast<int>(basis_->constraint.size());
    const Eigen::VectorXd mass = pb_->op().mass_diagonal();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_ + nc);
    for (int k = 0; k < n_; ++k) rhs[k] = mass[k] * h[k];
    const Eigen::VectorXd x = lu_->solve(rhs);

    ReductionSolve out;
    out.labels = basis_->labels;
    out.phi = ScalarField(pb_->grid());
    for (int k = 0; k < n_; ++k) out.phi[k] = x[k];
    const double e0sq = cfg_.eps0 * cfg_.eps0;
    for (int c = 0; c < nc; ++c) {
        out.c_x.push_back(-x[n_ + c]);
        out.c_y.push_back(-x[n_ + c] * e0sq);
    }
    const QuadratureRule& w = pb_->rule_plain();
    const double phi_l2 = l2(out.phi, w);
    for (int c = 0; c < nc; ++c) {
        const ScalarField& f = basis_->constraint[static_cast<std::size_t>(c)];
        double s = 0.0;
        for (int k = 0; k < n_; ++k) s += w.weights[static_cast<std::size_t>(k)] * f[k] * out.phi[k];
        const double scale = phi_l2 * l2(f, w);
        out.constraint_residual.push_back(scale > 0 ? std::abs(s) / scale : std::abs(s));
    }
    out.phi_sup = out.phi.sup_norm();
    out.h_star = star_norm(*pb_, cfg_, h);
    out.ratio_bound = out.h_star > 0 ? out.phi_sup / (cfg_.t * out.h_star) : 0.0;
    return out;
}

ReductionSolve solve_projected(const Problem& pb, const BubbleConfig& cfg, const ScalarField& W,
                               const ProjectionBasis& basis, const ScalarField& h) {
    return ProjectedSolver(pb, cfg, W, basis).solve(h);
}

ScalarField nonlinear_term(const ScalarField& W, const ScalarField& phi) {
    check_same_grid(W, phi);
    ScalarField n(*W.grid);
    for (int k = 0; k < n.size(); ++k) n[k] = W[k] * (std::expm1(phi[k]) - phi[k]);
    return n;
}

ReductionSolve solve_inner(const Problem& pb, const AnsatzFields& fields,
                           const ProjectionBasis& basis) {
    const ProjectedSolver solver(pb, fields.config, fields.W, basis);
    const Grid& g = pb.grid();
    ScalarField phi(g, 0.0);
    ReductionSolve out;
    const Knobs& kn = pb.knobs();
    int consecutive_growth = 0;
    double prev_step = -1.0;
    for (int it = 0; it < kn.inner_max_iter; ++it) {
        ScalarField rhs = nonlinear_term(fields.W, phi);
        for (int k = 0; k < rhs.size(); ++k) rhs[k] += fields.E[k];
        ReductionSolve step = solver.solve(rhs);
        for (double v : step.phi.v)
            if (!std::isfinite(v))
                throw NumericError("inner problem diverged: non-finite iterate at iteration " +
                                   std::to_string(it));
        const double dn = sup_diff(step.phi, phi);
        if (dn > 1e6)
            throw NumericError("inner problem diverged: iterate left the basin (step " +
                               std::to_string(dn) + " at iteration " + std::to_string(it) + ")");
        out.step_norms.push_back(dn);
        if (prev_step > 0.0) {
            const double factor = dn / prev_step;
            out.contraction.push_back(factor);
            consecutive_growth = factor >= 1.0 ? consecutive_growth + 1 : 0;
            if (consecutive_growth >= 5)
                throw NumericError(
                    "inner problem diverged: contraction factor >= 1 for 5 iterations "
                    "(last step " + std::to_string(dn) + ", |phi| " +
                    std::to_string(step.phi.sup_norm()) + ")");
        }
        prev_step = dn;
        phi = step.phi;
        out.c_x = step.c_x;
        out.c_y = step.c_y;
        out.labels = step.labels;
        out.constraint_residual = step.constraint_residual;
        out.iterations = it + 1;
        if (dn <= kn.inner_tol) break;
    }
    out.converged = out.step_norms.empty() || out.step_norms.back() <= kn.inner_tol;
    out.phi = phi;
    out.phi_sup = phi.sup_norm();
    out.e_star = star_norm(pb, fields.config, fields.E);
    out.h_star = out.e_star;
    out.ratio_bound = out.h_star > 0 ? out.phi_sup / (fields.config.t * out.h_star) : 0.0;
    return out;
}

} // namespace liouville
