#pragma once

#include <map>
#include <optional>

#include "liouville/reduction.hpp"

namespace liouville {

// J_t(u) = 1/2 int a |grad u|^2 - int a k |x-q|^{2a} e^{-t phi1} e^u for u
// with zero Dirichlet trace. The gradient term is the stiffness quadratic
// form, the exponential term uses the singular-aware rule.
double energy_Jt(const Problem& pb, double t, const ScalarField& u);

// Closed-form leading expansion of J_t(U(xi)) up to an additive O(1) term.
double expansion_Jt(const Problem& pb, double t, const std::vector<Point>& xi);

// Regular m-gon of circumradius mult * t^{-1/2} around q (phase-rotated).
std::vector<Point> initial_polygon(const Problem& pb, double t);

// Full evaluation record of the reduced energy at one xi.
struct EnergyEval {
    double J_U = 0.0;       // J_t(U(xi))
    double F = 0.0;         // J_t(U + phi) when with_phi, else J_U
    std::vector<double> c_x, c_y;
    double phi_sup = 0.0;
    int inner_iterations = 0;
};

// Reduced-energy evaluator with memoization on rounded xi.
class EnergyEvaluator {
  public:
    EnergyEvaluator(const Problem& pb, double t, bool with_phi)
        : pb_(&pb), t_(t), with_phi_(with_phi) {}

    double operator()(const std::vector<Point>& xi);
    const EnergyEval& last() const { return last_; }
    int evaluations() const { return evals_; }
    EnergyEval evaluate(const std::vector<Point>& xi); // uncached full record

  private:
    const Problem* pb_;
    double t_;
    bool with_phi_;
    std::map<std::vector<long long>, double> cache_;
    EnergyEval last_;
    int evals_ = 0;
};

double reduced_energy(const Problem& pb, double t, const std::vector<Point>& xi, bool with_phi);

struct EnergyReport {
    double t = 0.0;
    std::vector<Point> xi_init, xi_max;
    double value_init = 0.0;
    double value_max = 0.0; // M_m^t
    ConfigSpaceCheck margins;
    std::vector<double> c_x, c_y;
    bool pinned = false;        // some margin below 1e-3 of its scale
    bool converged = false;     // simplex diameter reached its target
    double simplex_diameter = 0.0;
    int evaluations = 0;
    std::vector<double> grad_init, grad_max; // finite-difference gradient of F_t
};

// Derivative-free ascent of the reduced energy over the admissible set with a
// logarithmic barrier; started from the regular polygon.
EnergyReport maximize(const Problem& pb, double t);

} // namespace liouville
