#include "liouville/problem.hpp"

namespace liouville {

namespace {

bool near_nonnegative_integer(double alpha) {
    if (alpha < -0.5) return false;
    const double r = std::round(alpha);
    return std::abs(alpha - r) < 1e-12;
}

} // namespace

Problem::Problem(const Domain& domain, int n, const Coefficient& a, const SourceField& h,
                 double alpha, int m, Point q, double d, const Knobs& knobs)
    : knobs_(knobs), alpha_(alpha), m_(m), q_(q), d_(d) {
    if (alpha <= -1.0) throw ConfigError("alpha must lie in (-1, inf)");
    if (near_nonnegative_integer(alpha))
        throw ConfigError("alpha must not be a nonnegative integer (alpha in (-1,inf)\\N)");
    if (m < 0) throw ConfigError("m must be >= 0");
    if (d <= 0.0) throw ConfigError("d must be positive");
    if (domain.signed_distance(q) > -d)
        throw ConfigError("ball B_d(q) must be contained in the domain");

    grid_ = std::make_unique<Grid>(domain, n);
    op_ = std::make_unique<DiscreteOperator>(*grid_, a);
    EigenOptions eo;
    eo.rel_residual = knobs.eigen_rel_tol;
    eig_ = first_eigenpair(*op_, eo);
    green_ = std::make_unique<GreenTable>(*op_);
    bg_ = background(*op_, *green_, h.realize(*grid_, eig_), q, alpha);
    rule_sing_ = singular_rule(*grid_, q, 2.0 * alpha);

    phi1_q_ = interpolate(eig_.phi1, q);
    beta_ = (m + 1 + alpha) * (m + 1 + alpha) * op_->a2() / (2.0 * op_->a1());
    alpha_hat_ = std::isnan(knobs.alpha_hat) ? 0.5 * (-1.0 + std::min(alpha, -2.0 / 3.0))
                                             : knobs.alpha_hat;
    if (!(alpha_hat_ > -1.0 && alpha_hat_ < std::min(alpha, -2.0 / 3.0)))
        throw ConfigError("alpha_hat must lie in (-1, min{alpha, -2/3})");
    // The 1 - 1/(2 beta) term only constrains the clustered case; for m = 0
    // it can degenerate to zero and the correction-lemma range applies.
    double sigma_cap = std::min(0.5, 2.0 * (1.0 + alpha));
    if (m > 0) sigma_cap = std::min(sigma_cap, 1.0 - 1.0 / (2.0 * beta_));
    sigma_ = std::isnan(knobs.sigma) ? 0.9 * sigma_cap : knobs.sigma;
    if (!(sigma_ > 0.0 && sigma_ <= sigma_cap + 1e-12))
        throw ConfigError("sigma must lie in (0, min{1/2, 1-1/(2beta), 2(1+alpha)}]");
}

} // namespace liouville
