#pragma once

#include <functional>
#include <memory>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "liouville/coefficient.hpp"
#include "liouville/field.hpp"
#include "liouville/grid.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

using SparseMat = Eigen::SparseMatrix<double>;
using BoundaryFn = std::function<double(Point)>;

inline double zero_trace(Point) { return 0.0; }

struct SolveOptions {
    double rel_tol = 1e-10;
    bool use_cg_fallback = true;
    int cg_max_iter = 20000;
};

// Divergence-form five-point discretization of -div(a grad u) with
// arithmetic-mean face coefficients and Shortley-Weller arms at curved
// boundaries. The stiffness K is exactly symmetric; (K u)_i approximates
// h^2 * (-div(a grad u)) at node i, and the weighted Laplacian action is
// (-Delta_a u)_i ~ (K u - b(g))_i / (a_i w_i) with w the cell areas.
// Immutable after construction; the factorization cache is thread-safe to
// reuse sequentially.
class DiscreteOperator {
  public:
    DiscreteOperator(const Grid& grid, const Coefficient& a);

    const Grid& grid() const { return *grid_; }
    const SparseMat& stiffness() const { return K_; }
    const QuadratureRule& cell_weights() const { return weights_; }
    const ScalarField& a_values() const { return a_nodal_; }
    const Coefficient& coefficient() const { return a_; }
    double a1() const { return a1_; }
    double a2() const { return a2_; }

    // K u minus the Dirichlet boundary flux terms for trace g.
    Eigen::VectorXd apply_neg_div(const ScalarField& u, const BoundaryFn& g = zero_trace) const;

    // Nodal action of -Delta_a on u with Dirichlet trace g.
    ScalarField apply_laplacian(const ScalarField& u, const BoundaryFn& g = zero_trace) const;

    // Solve -Delta_a u = f in Omega, u = g on the boundary.
    ScalarField solve_dirichlet(const ScalarField& f, const BoundaryFn& g = zero_trace,
                                const SolveOptions& opts = {}) const;

    // Solve K x = rhs (shared by all Dirichlet solves; factorization cached).
    Eigen::VectorXd solve_raw(const Eigen::VectorXd& rhs, const SolveOptions& opts = {}) const;

    // Mass diagonal a_i * w_i of the weighted eigenproblem K u = lambda M u.
    Eigen::VectorXd mass_diagonal() const;

  private:
    const Grid* grid_;
    Coefficient a_;
    ScalarField a_nodal_;
    QuadratureRule weights_;
    SparseMat K_;
    double a1_ = 0.0, a2_ = 0.0;
    mutable std::shared_ptr<Eigen::SimplicialLDLT<SparseMat>> ldlt_;
};

} // namespace liouville
