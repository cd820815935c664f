#include "liouville/grid.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {

// Root of sdf along p + tau*h*dir for tau in (0,1], assuming sdf(p) < 0 and
// sdf(p + h*dir) >= 0. Bisection is exact enough for arm lengths.
double arm_fraction(const Domain& dom, Point p, Point dir, double h) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Point q{p.x + mid * h * dir.x, p.y + mid * h * dir.y};
        if (dom.signed_distance(q) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return std::max(hi, 1e-6);
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    h ^= v;
    return h * 1099511628211ULL;
}

} // namespace

Grid::Grid(const Domain& domain, int n) : domain_(domain), n_(n) {
    if (n < 16) throw std::invalid_argument("Grid: resolution n must be >= 16");
    const BoundingBox bb = domain.bounding_box();
    h_ = std::max(bb.width(), bb.height()) / n;
    nx_ = static_cast<int>(std::lround(bb.width() / h_)) + 1;
    ny_ = static_cast<int>(std::lround(bb.height() / h_)) + 1;
    origin_ = {bb.xmin, bb.ymin};

    classes_.assign(num_nodes(), NodeClass::Exterior);
    interior_of_node_.assign(num_nodes(), -1);
    for (int iy = 0; iy < ny_; ++iy)
        for (int ix = 0; ix < nx_; ++ix)
            if (domain.signed_distance(node_point(ix, iy)) < 0.0) {
                classes_[node_id(ix, iy)] = NodeClass::Interior;
                interior_of_node_[node_id(ix, iy)] = static_cast<int>(interior_nodes_.size());
                interior_nodes_.push_back(node_id(ix, iy));
            }
    if (interior_nodes_.empty())
        throw std::invalid_argument("Grid: degenerate domain (no interior nodes)");

    static const std::array<Point, 4> dirs = {Point{1, 0}, Point{-1, 0}, Point{0, 1}, Point{0, -1}};
    static const std::array<std::pair<int, int>, 4> offs = {
        std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}};

    arms_.resize(interior_nodes_.size());
    for (int k = 0; k < num_interior(); ++k) {
        const auto [ix, iy] = interior_coords(k);
        const Point p = node_point(ix, iy);
        for (int d = 0; d < 4; ++d) {
            const int jx = ix + offs[d].first, jy = iy + offs[d].second;
            Arm arm;
            const bool in_range = jx >= 0 && jx < nx_ && jy >= 0 && jy < ny_;
            if (in_range && classes_[node_id(jx, jy)] == NodeClass::Interior) {
                arm.neighbor = interior_of_node_[node_id(jx, jy)];
                arm.theta = 1.0;
            } else {
                arm.neighbor = -1;
                arm.theta = arm_fraction(domain_, p, dirs[d], h_);
                arm.boundary_point = {p.x + arm.theta * h_ * dirs[d].x,
                                      p.y + arm.theta * h_ * dirs[d].y};
            }
            arms_[k][d] = arm;
        }
    }

    std::uint64_t h = 1469598103934665603ULL;
    h = fnv1a(h, static_cast<std::uint64_t>(domain.kind()));
    h = fnv1a(h, static_cast<std::uint64_t>(n));
    const Point c = domain.center();
    h = fnv1a(h, std::hash<double>{}(c.x));
    h = fnv1a(h, std::hash<double>{}(c.y));
    h = fnv1a(h, std::hash<double>{}(bb.width()));
    h = fnv1a(h, std::hash<double>{}(bb.height()));
    hash_ = h;
}

} // namespace liouville
