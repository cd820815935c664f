#pragma once

#include <memory>

#include <Eigen/SparseLU>

#include "liouville/ansatz.hpp"

namespace liouville {

// Localized kernel-direction fields chi_i Z_ij (i = 1..m, j = 1,2) entering
// the orthogonality constraints, plus the q-centered and radial directions
// kept as diagnostics. All in the physical variable.
struct ProjectionBasis {
    std::vector<ScalarField> constraint; // chi_i Z_ij, ordered (i,1),(i,2)
    std::vector<std::pair<int, int>> labels;
    ScalarField chi_q_Zq;                // diagnostic
    std::vector<ScalarField> chi_Zi0;    // diagnostic, one per bubble
    double R0 = 0.0;
};

// Largest cutoff radius for which the chi supports stay pairwise disjoint and
// inside the domain.
double max_feasible_R0(const Problem& pb, const BubbleConfig& cfg);

ProjectionBasis build_basis(const Problem& pb, const BubbleConfig& cfg);

struct ReductionSolve {
    ScalarField phi;
    std::vector<double> c_x;  // multipliers against the x-evaluated basis
    std::vector<double> c_y;  // rescaled convention: c_y = eps0^2 c_x
    std::vector<std::pair<int, int>> labels;
    std::vector<double> constraint_residual; // normalized |sum w chiZ phi|
    double phi_sup = 0.0;
    double h_star = 0.0;        // star norm of the right-hand side
    double ratio_bound = 0.0;   // phi_sup / (t * h_star)
    // Fixed-point log (solve_inner only):
    int iterations = 0;
    bool converged = true;
    std::vector<double> step_norms;
    std::vector<double> contraction;
    double e_star = 0.0;        // star norm of the assembled residual
};

// Solver for the projected linearized problem
//   -Delta_a phi - W phi = h + (1/a) sum c_ij chi_i Z_ij,  phi|_boundary = 0,
//   sum_nodes w chi_i Z_ij phi = 0,
// assembled once per (W, basis) as a bordered symmetric-indefinite system and
// factorized with sparse LU; solves against many right-hand sides reuse the
// factorization.
class ProjectedSolver {
  public:
    ProjectedSolver(const Problem& pb, const BubbleConfig& cfg, const ScalarField& W,
                    const ProjectionBasis& basis);

    ReductionSolve solve(const ScalarField& h) const;

    const ProjectionBasis& basis() const { return *basis_; }

  private:
    const Problem* pb_;
    BubbleConfig cfg_;
    const ProjectionBasis* basis_;
    SparseMat M_;
    std::unique_ptr<Eigen::SparseLU<SparseMat>> lu_;
    int n_ = 0;
};

ReductionSolve solve_projected(const Problem& pb, const BubbleConfig& cfg, const ScalarField& W,
                               const ProjectionBasis& basis, const ScalarField& h);

// N(phi) = |x-q|^{2a} k e^{-t phi1} e^U (e^phi - 1 - phi), evaluated through
// the assembled W field.
ScalarField nonlinear_term(const ScalarField& W, const ScalarField& phi);

// Fixed point phi <- T(E + N(phi)) for the inner nonlinear problem.
ReductionSolve solve_inner(const Problem& pb, const AnsatzFields& fields,
                           const ProjectionBasis& basis);

} // namespace liouville
