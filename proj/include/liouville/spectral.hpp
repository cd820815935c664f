#pragma once

#include "liouville/operator.hpp"

namespace liouville {

// First Dirichlet eigenpair of -Delta_a with weight a: K u = lambda M u,
// M = diag(a*w). The eigenfunction is positive and scaled to max = 1.
struct EigenPair {
    double lambda1 = 0.0;
    ScalarField phi1;
    double residual = 0.0; // relative eigen-residual at acceptance
    int iterations = 0;
};

struct EigenOptions {
    double rel_residual = 1e-8;
    int max_iter = 500;
};

EigenPair first_eigenpair(const DiscreteOperator& op, const EigenOptions& opts = {});

// Rayleigh quotient u'Ku / u'Mu.
double rayleigh_quotient(const DiscreteOperator& op, const ScalarField& u);

// Checks of the structural assumption behind the multi-bubble construction:
// q must be a local maximum of phi1 and a strict local maximum of a*phi1 on
// the ball B_d(q), with a positive gap margin 2 inf phi1 - sup phi1 there.
struct AssumptionReport {
    bool phi1_max = false;        // phi1(q) >= phi1 on B_d(q)
    bool a_phi1_strict_max = false;
    double margin = 0.0;          // 2 inf_B phi1 - sup_B phi1
    double phi1_at_q = 0.0;
    double a_phi1_at_q = 0.0;
    bool ok() const { return phi1_max && a_phi1_strict_max && margin > 0.0; }
};

AssumptionReport check_assumption_A(const DiscreteOperator& op, const EigenPair& pair,
                                    Point q, double d);

} // namespace liouville
