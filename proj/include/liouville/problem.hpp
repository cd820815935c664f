#pragma once

#include <cmath>
#include <memory>
#include <optional>

#include "liouville/coefficient.hpp"
#include "liouville/errors.hpp"
#include "liouville/green.hpp"
#include "liouville/operator.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/spectral.hpp"

namespace liouville {

// Source term h(x) of the original problem, used for the background
// rho = (-Delta_a)^{-1} h.
class SourceField {
  public:
    enum class Kind { Zero, Constant, GaussianBump, EigenMultiple };

    static SourceField zero() { return SourceField{}; }
    static SourceField constant(double v) {
        SourceField s;
        s.kind_ = Kind::Constant;
        s.p0_ = v;
        return s;
    }
    static SourceField gaussian_bump(double amplitude, double sigma, Point center) {
        SourceField s;
        s.kind_ = Kind::GaussianBump;
        s.p0_ = amplitude;
        s.p1_ = sigma;
        s.center_ = center;
        return s;
    }
    // h = factor * lambda1 * phi1 (so rho = factor * phi1 exactly).
    static SourceField eigen_multiple(double factor) {
        SourceField s;
        s.kind_ = Kind::EigenMultiple;
        s.p0_ = factor;
        return s;
    }

    Kind kind() const { return kind_; }

    ScalarField realize(const Grid& g, const EigenPair& eig) const {
        switch (kind_) {
            case Kind::Zero: return ScalarField(g, 0.0);
            case Kind::Constant: return ScalarField(g, p0_);
            case Kind::GaussianBump:
                return nodal(g, [this](Point p) {
                    const double r = dist(p, center_);
                    return p0_ * std::exp(-r * r / (2.0 * p1_ * p1_));
                });
            case Kind::EigenMultiple: {
                ScalarField f(g);
                for (int k = 0; k < g.num_interior(); ++k)
                    f[k] = p0_ * eig.lambda1 * eig.phi1[k];
                return f;
            }
        }
        return ScalarField(g, 0.0);
    }

  private:
    Kind kind_ = Kind::Zero;
    double p0_ = 0.0, p1_ = 1.0;
    Point center_{0.0, 0.0};
};

enum class CutoffKind { Quintic, Cosine };

// Tunables with spec'd defaults; NaN means "derive the default".
struct Knobs {
    double alpha_hat = std::nan("");   // midpoint of (-1, min{alpha, -2/3})
    double sigma = std::nan("");       // 0.9 * min{1/2, 1 - 1/(2 beta), 2(1+alpha)}
    double R0 = 10.0;
    bool R0_auto = false;              // shrink R0 to fit disjoint supports
    CutoffKind cutoff = CutoffKind::Quintic;
    double polygon_radius_mult = 1.0;
    double polygon_phase = 0.0;
    double barrier_coef = 1.0;
    double resolution_cells = 4.0;     // refuse cores thinner than this many h
    double linear_rel_tol = 1e-10;
    double eigen_rel_tol = 1e-8;
    double newton_tol = 1e-8;
    double inner_tol = 1e-10;
    int inner_max_iter = 50;
    int newton_max_iter = 30;
    int simplex_max_eval = 400;
};

// Everything t-independent about one problem instance: grid, operator,
// eigenpair,背 background fields and the Green table. Built once, shared by
// all downstream operations.
class Problem {
  public:
    Problem(const Domain& domain, int n, const Coefficient& a, const SourceField& h,
            double alpha, int m, Point q, double d, const Knobs& knobs = {});

    const Grid& grid() const { return *grid_; }
    const DiscreteOperator& op() const { return *op_; }
    const EigenPair& eigen() const { return eig_; }
    const Background& bg() const { return bg_; }
    GreenTable& green() const { return *green_; }
    const QuadratureRule& rule_plain() const { return op_->cell_weights(); }
    const QuadratureRule& rule_singular() const { return rule_sing_; }
    const Knobs& knobs() const { return knobs_; }

    double alpha() const { return alpha_; }
    int m() const { return m_; }
    Point q() const { return q_; }
    double d() const { return d_; }

    double beta() const { return beta_; }
    double sigma() const { return sigma_; }
    double alpha_hat() const { return alpha_hat_; }

    double a_at(Point p) const { return op_->coefficient()(p); }
    double phi1_at(Point p) const { return interpolate(eig_.phi1, p); }
    double k_at(Point p) const { return interpolate(bg_.k, p, 1.0); }
    double phi1_q() const { return phi1_q_; }

    double eps0(double t) const { return std::exp(-0.5 * t * phi1_q_); }

  private:
    std::unique_ptr<Grid> grid_;
    std::unique_ptr<DiscreteOperator> op_;
    EigenPair eig_;
    std::unique_ptr<GreenTable> green_;
    Background bg_;
    QuadratureRule rule_sing_;
    Knobs knobs_;
    double alpha_;
    int m_;
    Point q_;
    double d_;
    double beta_, sigma_, alpha_hat_, phi1_q_;
};

} // namespace liouville
