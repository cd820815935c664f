#pragma once

#include <vector>

#include "liouville/problem.hpp"

namespace liouville {

// All scale parameters of one (m+1)-bubble configuration at parameter t.
// mu's come from the closed-form matching conditions; the remaining scales
// are derived. Immutable.
struct BubbleConfig {
    double t = 0.0;
    std::vector<Point> xi;      // m cluster points
    double mu0 = 0.0;
    std::vector<double> mu;     // per xi
    double eps0 = 0.0;          // e^{-t phi1(q)/2}
    std::vector<double> eps;    // e^{-t phi1(xi_i)/2}
    double rho0 = 0.0;          // eps0^{1/(1+alpha)}
    double v0 = 0.0;            // mu0^{1/(1+alpha)}
    std::vector<double> gamma;  // eps_i mu_i / eps0

    int m() const { return static_cast<int>(xi.size()); }
    double core_q() const { return rho0 * v0; }                  // q-bubble width
    double core_i(int i) const { return eps[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)]; }
};

// Concentration parameters from the matching conditions. Requires all xi
// distinct, distinct from q, and interior.
BubbleConfig make_bubble_config(const Problem& pb, double t, const std::vector<Point>& xi);

struct ResolutionCheck {
    bool ok = true;
    double min_core_cells = 0.0; // min core width in units of h
    std::string detail;
};
ResolutionCheck resolution_guard(const Problem& pb, const BubbleConfig& cfg);

// Membership in the admissible configuration set with per-constraint slack
// (nonnegative slack = satisfied). The closeness constraint may have negative
// deficit (q is only a local maximum); that still counts as satisfied and is
// flagged.
struct ConfigSpaceCheck {
    bool ok = true;
    std::vector<double> slack_ball;       // d - |xi_i - q|
    std::vector<double> slack_level;      // t^{-1/2} - (a phi1(q) - a phi1(xi_i))
    std::vector<double> slack_dist_q;     // |xi_i - q| - t^{-beta}
    std::vector<double> slack_dist_pair;  // |xi_i - xi_j| - t^{-beta}, i < j
    bool negative_deficit = false;        // some a phi1(xi) exceeded a phi1(q)
    double min_slack = 0.0;
};
ConfigSpaceCheck in_configuration_space(const Problem& pb, double t, const std::vector<Point>& xi);

// Bubble profiles in the physical variable. Index 0 is the q-bubble.
std::vector<ScalarField> bubble_profiles(const Problem& pb, const BubbleConfig& cfg);
// Analytic profile evaluation (used for boundary traces and tests).
double profile_value(const Problem& pb, const BubbleConfig& cfg, int i, Point x);

enum class CorrectionMode { Exact, Leading };
std::vector<ScalarField> corrections(const Problem& pb, const BubbleConfig& cfg,
                                     CorrectionMode mode);

struct AnsatzFields {
    BubbleConfig config;
    std::vector<ScalarField> profiles;    // u_0..u_m
    std::vector<ScalarField> corrections; // H_0..H_m
    ScalarField U;                        // sum of profiles + corrections
    ScalarField W;                        // |x-q|^{2a} k e^{-t phi1} e^U (cell-averaged factor at q)
    ScalarField E;                        // Delta_a U + W
    int overflow_clamped = 0;             // nodes where U > 700 forced a clamp
};

AnsatzFields assemble(const Problem& pb, const BubbleConfig& cfg,
                      CorrectionMode mode = CorrectionMode::Exact);

// The multiplier weight of the linearized problem W0 = |x-q|^{2a} k e^{-t phi1}
// (no e^U factor); used by the Newton solver.
ScalarField bare_weight(const Problem& pb, double t);

// Weighted sup-norm of a field given in the physical variable: the rescaled
// problem's norm of eps0^2 * field against the bubble-adapted weight.
double star_norm(const Problem& pb, const BubbleConfig& cfg, const ScalarField& field);
// The comparison weight itself, divided by eps0^2 (so star_norm(weight) == 1).
ScalarField star_weight(const Problem& pb, const BubbleConfig& cfg);

} // namespace liouville
