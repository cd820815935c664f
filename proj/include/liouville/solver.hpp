#pragma once

#include <optional>

#include "liouville/energy.hpp"

namespace liouville {

struct Peak {
    Point p{};
    double height = 0.0;
};

struct BubbleSummary {
    std::vector<Peak> peaks;
    int expected = 0;
    double min_pair_dist = 0.0;
    double min_dist_q = 0.0;
    double max_dist_q = 0.0;
    double spacing_threshold = 0.0; // t^{-beta}
    bool count_ok = false;
    bool spacing_ok = false;
    bool containment_ok = false;
    bool ok() const { return count_ok && spacing_ok && containment_ok; }
};

struct SolveReport {
    ScalarField u; // refined solution of the substituted problem
    double t = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;
    std::vector<double> step_sizes;
    double final_residual = 0.0;
    double quad_ratio = 0.0; // ||F_{k+1}|| / ||F_k||^2 on the last full step
    // Pipeline extras:
    double mass = 0.0, mass_pred = 0.0, mass_rel_err = 0.0;
    double dist_to_init = 0.0; // ||u* - u_init||_inf (branch identity witness)
    BubbleSummary bubbles;
    bool failed = false;       // continuation: step recorded as failed
    std::string failure;
};

// Damped Newton for -Delta_a u = |x-q|^{2a} k e^{-t phi1} e^u with zero trace,
// backtracking on the sup-residual.
SolveReport newton_solve(const Problem& pb, double t, const ScalarField& u_init);

// v = u - t phi1 - (alpha/2) G(.,q) - rho; the node carrying the pole is
// excluded for alpha != 0 (log singularity).
struct Reconstruction {
    ScalarField v;
    int excluded_node = -1;
    double max_identity_error = 0.0; // relative, sampled away from q
};
Reconstruction reconstruct_v(const Problem& pb, const ScalarField& u, double s);

struct MassCheck {
    double mass = 0.0;
    double predicted = 0.0;
    double rel_error = 0.0;
};
MassCheck mass_check(const Problem& pb, double t, const ScalarField& u);

// Strict local maxima of u above half its global maximum, checked against the
// t^{-beta} spacing and B_d(q) containment predictions.
BubbleSummary bubble_report(const Problem& pb, double t, const ScalarField& u);

// Newton continuation over an increasing t grid; each step seeds from the
// previous solution transported through the re-assembled ansatz, falling back
// to a fresh ansatz + inner solve after a failure.
std::vector<SolveReport> continuation(const Problem& pb, const std::vector<double>& t_grid);

// Convenience: ansatz + inner solve + Newton at one t (the full pipeline).
SolveReport solve_pipeline(const Problem& pb, double t, const std::vector<Point>& xi);

} // namespace liouville
