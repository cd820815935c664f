#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace liouville {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

struct BoundingBox {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

// 2D domain described by a signed distance function: negative strictly
// inside, zero on the boundary. Only the two shapes the solvers need.
class Domain {
  public:
    enum class Kind { Disc, Rectangle };

    static Domain disc(Point center, double radius) {
        if (radius <= 0.0)
            throw std::invalid_argument("Domain::disc: radius must be positive");
        Domain d;
        d.kind_ = Kind::Disc;
        d.center_ = center;
        d.radius_ = radius;
        return d;
    }

    static Domain rectangle(double xmin, double xmax, double ymin, double ymax) {
        if (!(xmin < xmax) || !(ymin < ymax))
            throw std::invalid_argument("Domain::rectangle: empty extent");
        Domain d;
        d.kind_ = Kind::Rectangle;
        d.box_ = {xmin, xmax, ymin, ymax};
        return d;
    }

    Kind kind() const { return kind_; }

    double signed_distance(Point p) const {
        if (kind_ == Kind::Disc) return dist(p, center_) - radius_;
        const double dx = std::max(box_.xmin - p.x, p.x - box_.xmax);
        const double dy = std::max(box_.ymin - p.y, p.y - box_.ymax);
        if (dx <= 0.0 && dy <= 0.0) return std::max(dx, dy);
        return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
    }

    bool inside(Point p) const { return signed_distance(p) < 0.0; }

    BoundingBox bounding_box() const {
        if (kind_ == Kind::Disc)
            return {center_.x - radius_, center_.x + radius_,
                    center_.y - radius_, center_.y + radius_};
        return box_;
    }

    double area() const {
        if (kind_ == Kind::Disc) return M_PI * radius_ * radius_;
        return box_.width() * box_.height();
    }

    Point center() const {
        if (kind_ == Kind::Disc) return center_;
        return {0.5 * (box_.xmin + box_.xmax), 0.5 * (box_.ymin + box_.ymax)};
    }

    double radius() const { return radius_; }

    std::string describe() const {
        if (kind_ == Kind::Disc)
            return "disc(center=(" + std::to_string(center_.x) + "," +
                   std::to_string(center_.y) + "),r=" + std::to_string(radius_) + ")";
        return "rect([" + std::to_string(box_.xmin) + "," + std::to_string(box_.xmax) +
               "]x[" + std::to_string(box_.ymin) + "," + std::to_string(box_.ymax) + "])";
    }

  private:
    Kind kind_ = Kind::Disc;
    Point center_{0.0, 0.0};
    double radius_ = 1.0;
    BoundingBox box_{};
};

} // namespace liouville
