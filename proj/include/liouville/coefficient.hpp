#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "liouville/field.hpp"
#include "liouville/grid.hpp"

namespace liouville {

// Anisotropy coefficient a(x) > 0. Built-in analytic families; nodal values
// and the bounds a1 <= a <= a2 are realized against a concrete grid.
class Coefficient {
  public:
    enum class Kind { Constant, ExpX, GaussianBump };

    static Coefficient constant(double value) {
        if (value <= 0.0) throw std::invalid_argument("Coefficient: value must be > 0");
        Coefficient c;
        c.kind_ = Kind::Constant;
        c.p0_ = value;
        return c;
    }
    // a(x) = exp(c * x1)
    static Coefficient exp_x(double c) {
        Coefficient a;
        a.kind_ = Kind::ExpX;
        a.p0_ = c;
        return a;
    }
    // a(x) = base + amplitude * exp(-|x-center|^2 / (2 sigma^2))
    static Coefficient gaussian_bump(double base, double amplitude, double sigma, Point center) {
        if (base <= 0.0 || base + amplitude <= 0.0 || sigma <= 0.0)
            throw std::invalid_argument("Coefficient: bump must stay positive");
        Coefficient a;
        a.kind_ = Kind::GaussianBump;
        a.p0_ = base;
        a.p1_ = amplitude;
        a.p2_ = sigma;
        a.center_ = center;
        return a;
    }

    Kind kind() const { return kind_; }

    double operator()(Point p) const {
        switch (kind_) {
            case Kind::Constant: return p0_;
            case Kind::ExpX: return std::exp(p0_ * p.x);
            case Kind::GaussianBump: {
                const double r2 = dist(p, center_) * dist(p, center_);
                return p0_ + p1_ * std::exp(-r2 / (2.0 * p2_ * p2_));
            }
        }
        return p0_;
    }

    ScalarField nodal_values(const Grid& g) const {
        return nodal(g, [this](Point p) { return (*this)(p); });
    }

    // Min/max of a over the closed domain; exact for the built-in families on
    // the shapes in use (extrema at center/boundary), refined by a nodal scan.
    std::pair<double, double> bounds(const Grid& g) const {
        double lo = 1e300, hi = -1e300;
        for (int k = 0; k < g.num_interior(); ++k) {
            const double val = (*this)(g.interior_point(k));
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
        // Boundary arm endpoints can carry the extrema (e.g. exp on a disc).
        for (int k = 0; k < g.num_interior(); ++k)
            for (const Arm& arm : g.arms(k))
                if (arm.neighbor < 0) {
                    const double val = (*this)(arm.boundary_point);
                    lo = std::min(lo, val);
                    hi = std::max(hi, val);
                }
        if (lo <= 0.0) throw std::invalid_argument("Coefficient: non-positive value on grid");
        return {lo, hi};
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](std::uint64_t x) {
            h ^= x;
            h *= 1099511628211ULL;
        };
        mix(static_cast<std::uint64_t>(kind_));
        mix(std::hash<double>{}(p0_));
        mix(std::hash<double>{}(p1_));
        mix(std::hash<double>{}(p2_));
        mix(std::hash<double>{}(center_.x));
        mix(std::hash<double>{}(center_.y));
        return h;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Constant: return "constant(" + std::to_string(p0_) + ")";
            case Kind::ExpX: return "exp(" + std::to_string(p0_) + "*x1)";
            case Kind::GaussianBump:
                return "bump(base=" + std::to_string(p0_) + ",amp=" + std::to_string(p1_) +
                       ",sigma=" + std::to_string(p2_) + ")";
        }
        return "?";
    }

  private:
    Kind kind_ = Kind::Constant;
    double p0_ = 1.0, p1_ = 0.0, p2_ = 1.0;
    Point center_{0.0, 0.0};
};

} // namespace liouville
