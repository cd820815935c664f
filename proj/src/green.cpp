#include "liouville/green.hpp"

#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {

// Centered-difference gradient of log a at an interior node, one-sided next
// to the boundary.
Point grad_log_a(const DiscreteOperator& op, int k) {
    const Grid& g = op.grid();
    const auto& arms = g.arms(k);
    const Coefficient& a = op.coefficient();
    const Point p = g.interior_point(k);
    auto value = [&](const Arm& arm, Point fallback_dir) {
        if (arm.neighbor >= 0) return std::log(op.a_values()[arm.neighbor]);
        (void)fallback_dir;
        return std::log(a(arm.boundary_point));
    };
    auto span = [&](const Arm& arm) { return arm.neighbor >= 0 ? 1.0 : arm.theta; };
    const double le = value(arms[0], {1, 0}), lw = value(arms[1], {-1, 0});
    const double ln = value(arms[2], {0, 1}), ls = value(arms[3], {0, -1});
    const double he = span(arms[0]), hw = span(arms[1]);
    const double hn = span(arms[2]), hs = span(arms[3]);
    return {(le - lw) / ((he + hw) * g.h()), (ln - ls) / ((hn + hs) * g.h())};
}

} // namespace

ScalarField regular_part(const DiscreteOperator& op, Point y) {
    const Grid& g = op.grid();
    if (g.domain().signed_distance(y) > -2.0 * g.h())
        throw std::invalid_argument("regular_part: pole must be interior (>= 2h from boundary)");

    // Nearest node carries the zeroed right-hand side.
    int pole_node = -1;
    double best = 1e300;
    for (int k = 0; k < g.num_interior(); ++k) {
        const double d = dist(g.interior_point(k), y);
        if (d < best) {
            best = d;
            pole_node = k;
        }
    }

    ScalarField f(g);
    const bool const_a = op.coefficient().kind() == Coefficient::Kind::Constant;
    if (!const_a) {
        for (int k = 0; k < g.num_interior(); ++k) {
            if (k == pole_node) continue;
            const Point p = g.interior_point(k);
            const Point d = p - y;
            const double r2 = dot(d, d);
            const Point gla = grad_log_a(op, k);
            f[k] = -4.0 * dot(d, gla) / r2;
        }
    }
    auto trace = [y](Point p) { return 4.0 * std::log(dist(p, y)); };
    return op.solve_dirichlet(f, trace);
}

int GreenTable::find(Point y) const {
    const auto key = std::make_pair(static_cast<long long>(std::llround(y.x * 1e9)),
                                    static_cast<long long>(std::llround(y.y * 1e9)));
    const auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

bool GreenTable::has_pole(Point y) const { return find(y) >= 0; }

int GreenTable::ensure_pole(Point y) {
    const int i = find(y);
    if (i >= 0) return i;
    const auto key = std::make_pair(static_cast<long long>(std::llround(y.x * 1e9)),
                                    static_cast<long long>(std::llround(y.y * 1e9)));
    poles_.push_back(y);
    H_.push_back(regular_part(*op_, y));
    index_[key] = static_cast<int>(poles_.size()) - 1;
    return index_[key];
}

double GreenTable::H(Point x, Point y) const {
    const int i = find(y);
    if (i < 0) throw std::invalid_argument("GreenTable: pole not tabulated");
    const Grid& g = op_->grid();
    if (g.domain().signed_distance(x) >= 0.0) return 4.0 * std::log(dist(x, y));
    // Outside-cell corners take the boundary value of the regular part.
    const ScalarField& field = H_[static_cast<std::size_t>(i)];
    const double fx = (x.x - g.origin().x) / g.h();
    const double fy = (x.y - g.origin().y) / g.h();
    int ix = static_cast<int>(std::floor(fx));
    int iy = static_cast<int>(std::floor(fy));
    ix = std::clamp(ix, 0, g.nx() - 2);
    iy = std::clamp(iy, 0, g.ny() - 2);
    const double sx = std::clamp(fx - ix, 0.0, 1.0);
    const double sy = std::clamp(fy - iy, 0.0, 1.0);
    auto val = [&](int jx, int jy) {
        const int k = g.interior_index(jx, jy);
        if (k >= 0) return field[k];
        return 4.0 * std::log(dist(g.node_point(jx, jy), y));
    };
    return (1 - sx) * (1 - sy) * val(ix, iy) + sx * (1 - sy) * val(ix + 1, iy) +
           (1 - sx) * sy * val(ix, iy + 1) + sx * sy * val(ix + 1, iy + 1);
}

double GreenTable::robin(Point y) const { return H(y, y); }

double GreenTable::G(Point x, Point y) const {
    const double r = dist(x, y);
    if (r < 1e-14) throw std::invalid_argument("GreenTable::G: x == y is singular");
    return 4.0 * std::log(1.0 / r) + H(x, y);
}

Background background(const DiscreteOperator& op, GreenTable& table, const ScalarField& h_field,
                      Point q, double alpha) {
    const Grid& g = op.grid();
    if (g.domain().signed_distance(q) >= 0.0)
        throw std::invalid_argument("background: q must be interior");
    Background bg;
    bg.q = q;
    bg.alpha = alpha;
    bg.rho = op.solve_dirichlet(h_field);
    const int iq = table.ensure_pole(q);
    const ScalarField& Hq = table.regular_field(iq);
    bg.k = ScalarField(g);
    for (int k = 0; k < g.num_interior(); ++k)
        bg.k[k] = std::exp(-bg.rho[k] - 0.5 * alpha * Hq[k]);
    return bg;
}

} // namespace liouville
