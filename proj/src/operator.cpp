#include "liouville/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace liouville {

DiscreteOperator::DiscreteOperator(const Grid& grid, const Coefficient& a)
    : grid_(&grid), a_(a), a_nodal_(a.nodal_values(grid)), weights_(plain_rule(grid)) {
    const auto [lo, hi] = a.bounds(grid);
    a1_ = lo;
    a2_ = hi;

    const int n = grid.num_interior();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(5 * n));
    for (int k = 0; k < n; ++k) {
        const Point p = grid.interior_point(k);
        double diag = 0.0;
        for (const Arm& arm : grid.arms(k)) {
            if (arm.neighbor >= 0) {
                const double af =
                    0.5 * (a_nodal_[k] + a_nodal_[arm.neighbor]);
                diag += af;
                trips.emplace_back(k, arm.neighbor, -af);
            } else {
                const double af = 0.5 * (a_nodal_[k] + a_(arm.boundary_point));
                diag += af / arm.theta;
            }
        }
        (void)p;
        trips.emplace_back(k, k, diag);
    }
    K_.resize(n, n);
    K_.setFromTriplets(trips.begin(), trips.end());
    K_.makeCompressed();
}

Eigen::VectorXd DiscreteOperator::apply_neg_div(const ScalarField& u, const BoundaryFn& g) const {
    if (u.grid != grid_) throw std::invalid_argument("apply_neg_div: mismatched grid");
    const int n = grid_->num_interior();
    Eigen::Map<const Eigen::VectorXd> uv(u.v.data(), n);
    Eigen::VectorXd r = K_ * uv;
    for (int k = 0; k < n; ++k)
        for (const Arm& arm : grid_->arms(k))
            if (arm.neighbor < 0) {
                const double af = 0.5 * (a_nodal_[k] + a_(arm.boundary_point));
                r[k] -= af / arm.theta * g(arm.boundary_point);
            }
    return r;
}

ScalarField DiscreteOperator::apply_laplacian(const ScalarField& u, const BoundaryFn& g) const {
    const Eigen::VectorXd r = apply_neg_div(u, g);
    ScalarField out(*grid_);
    for (int k = 0; k < out.size(); ++k)
        out[k] = r[k] / (a_nodal_[k] * weights_.weights[static_cast<std::size_t>(k)]);
    return out;
}

Eigen::VectorXd DiscreteOperator::mass_diagonal() const {
    const int n = grid_->num_interior();
    Eigen::VectorXd m(n);
    for (int k = 0; k < n; ++k)
        m[k] = a_nodal_[k] * weights_.weights[static_cast<std::size_t>(k)];
    return m;
}

Eigen::VectorXd DiscreteOperator::solve_raw(const Eigen::VectorXd& rhs,
                                            const SolveOptions& opts) const {
    if (!ldlt_) {
        auto f = std::make_shared<Eigen::SimplicialLDLT<SparseMat>>();
        f->compute(K_);
        if (f->info() != Eigen::Success && !opts.use_cg_fallback)
            throw std::runtime_error("solve_raw: factorization failed");
        if (f->info() == Eigen::Success) ldlt_ = f;
    }
    Eigen::VectorXd x;
    const double rhs_norm = rhs.norm();
    if (ldlt_) {
        x = ldlt_->solve(rhs);
        const double res = (K_ * x - rhs).norm();
        if (rhs_norm == 0.0 || res <= opts.rel_tol * rhs_norm) return x;
        // One step of iterative refinement before falling back.
        x += ldlt_->solve(rhs - K_ * x);
        if ((K_ * x - rhs).norm() <= opts.rel_tol * rhs_norm) return x;
    }
    if (!opts.use_cg_fallback)
        throw std::runtime_error("solve_raw: direct solve missed tolerance");
    // Diagonally preconditioned conjugate gradients.
    const int n = static_cast<int>(rhs.size());
    Eigen::VectorXd dinv(n);
    for (int i = 0; i < n; ++i) dinv[i] = 1.0 / K_.coeff(i, i);
    if (x.size() != n) x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = rhs - K_ * x;
    Eigen::VectorXd z = dinv.asDiagonal() * r;
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int it = 0; it < opts.cg_max_iter; ++it) {
        if (r.norm() <= opts.rel_tol * rhs_norm) return x;
        const Eigen::VectorXd Kp = K_ * p;
        const double alpha = rz / p.dot(Kp);
        x += alpha * p;
        r -= alpha * Kp;
        z = dinv.asDiagonal() * r;
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    throw std::runtime_error("solve_raw: conjugate gradients did not converge");
}

ScalarField DiscreteOperator::solve_dirichlet(const ScalarField& f, const BoundaryFn& g,
                                              const SolveOptions& opts) const {
    if (f.grid != grid_) throw std::invalid_argument("solve_dirichlet: mismatched grid");
    const int n = grid_->num_interior();
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(f[k]))
            throw std::invalid_argument("solve_dirichlet: non-finite right-hand side");
        rhs[k] = a_nodal_[k] * weights_.weights[static_cast<std::size_t>(k)] * f[k];
    }
    for (int k = 0; k < n; ++k)
        for (const Arm& arm : grid_->arms(k))
            if (arm.neighbor < 0) {
                const double af = 0.5 * (a_nodal_[k] + a_(arm.boundary_point));
                rhs[k] += af / arm.theta * g(arm.boundary_point);
            }
    const Eigen::VectorXd x = solve_raw(rhs, opts);
    ScalarField u(*grid_);
    for (int k = 0; k < n; ++k) u[k] = x[k];
    return u;
}

} // namespace liouville
