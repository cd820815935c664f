#include "liouville/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

double rayleigh_quotient(const DiscreteOperator& op, const ScalarField& u) {
    const int n = op.grid().num_interior();
    Eigen::Map<const Eigen::VectorXd> uv(u.v.data(), n);
    const Eigen::VectorXd Ku = op.stiffness() * uv;
    const Eigen::VectorXd m = op.mass_diagonal();
    return uv.dot(Ku) / uv.dot(m.asDiagonal() * uv);
}

EigenPair first_eigenpair(const DiscreteOperator& op, const EigenOptions& opts) {
    const int n = op.grid().num_interior();
    const Eigen::VectorXd m = op.mass_diagonal();
    Eigen::VectorXd u = Eigen::VectorXd::Ones(n);

    double lambda = 0.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        Eigen::VectorXd rhs = m.asDiagonal() * u;
        Eigen::VectorXd w = op.solve_raw(rhs);
        const double scale = std::sqrt(w.dot(m.asDiagonal() * w));
        w /= scale;
        const Eigen::VectorXd Kw = op.stiffness() * w;
        lambda = w.dot(Kw); // M-normalized Rayleigh quotient
        const double res = (Kw - lambda * (m.asDiagonal() * w)).norm() /
                           (lambda * (m.asDiagonal() * w).norm());
        u = w;
        if (res <= opts.rel_residual) break;
    }
    if (it == opts.max_iter)
        throw std::runtime_error("first_eigenpair: inverse iteration did not converge");

    // Sign-fix positive, scale to max = 1.
    double mx = 0.0;
    for (int k = 0; k < n; ++k)
        if (std::abs(u[k]) > std::abs(mx)) mx = u[k];
    u /= mx;

    EigenPair pair;
    pair.lambda1 = lambda;
    pair.phi1 = ScalarField(op.grid());
    for (int k = 0; k < n; ++k) pair.phi1[k] = u[k];
    const Eigen::VectorXd Ku = op.stiffness() * u;
    pair.residual =
        (Ku - lambda * (m.asDiagonal() * u)).norm() / (lambda * (m.asDiagonal() * u).norm());
    pair.iterations = it + 1;
    return pair;
}

AssumptionReport check_assumption_A(const DiscreteOperator& op, const EigenPair& pair,
                                    Point q, double d) {
    const Grid& g = op.grid();
    if (g.domain().signed_distance(q) > -d)
        throw std::invalid_argument("check_assumption_A: ball B_d(q) exits the domain");

    const double phi_q = interpolate(pair.phi1, q);
    const double a_q = op.coefficient()(q);

    // Nearest node to q is exempt from the strict a*phi1 comparison.
    int nearest = -1;
    double best = 1e300;
    for (int k = 0; k < g.num_interior(); ++k) {
        const double dk = dist(g.interior_point(k), q);
        if (dk < best) {
            best = dk;
            nearest = k;
        }
    }

    AssumptionReport rep;
    rep.phi1_at_q = phi_q;
    rep.a_phi1_at_q = a_q * phi_q;
    rep.phi1_max = true;
    rep.a_phi1_strict_max = true;
    double inf_phi = 1e300, sup_phi = -1e300;
    const double tol = 1e-12;
    for (int k = 0; k < g.num_interior(); ++k) {
        const Point p = g.interior_point(k);
        if (dist(p, q) > d) continue;
        const double phi = pair.phi1[k];
        inf_phi = std::min(inf_phi, phi);
        sup_phi = std::max(sup_phi, phi);
        if (phi > phi_q + tol) rep.phi1_max = false;
        if (k != nearest && op.a_values()[k] * phi >= rep.a_phi1_at_q - tol)
            rep.a_phi1_strict_max = false;
    }
    rep.margin = 2.0 * inf_phi - sup_phi;
    return rep;
}

} // namespace liouville
