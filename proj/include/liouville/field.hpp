#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "liouville/grid.hpp"

namespace liouville {

// Nodal values on the interior nodes of a grid. Boundary traces are handled
// separately (as functions of the boundary point) wherever an operation
// needs them.
struct ScalarField {
    const Grid* grid = nullptr;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(&g), v(static_cast<std::size_t>(g.num_interior()), fill) {}

    double& operator[](int k) { return v[static_cast<std::size_t>(k)]; }
    double operator[](int k) const { return v[static_cast<std::size_t>(k)]; }
    int size() const { return static_cast<int>(v.size()); }

    double sup_norm() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

inline void check_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid == nullptr || a.grid != b.grid)
        throw std::invalid_argument("field: mismatched grids");
}

inline ScalarField nodal(const Grid& g, const std::function<double(Point)>& f) {
    ScalarField u(g);
    for (int k = 0; k < g.num_interior(); ++k) u[k] = f(g.interior_point(k));
    return u;
}

inline double sup_diff(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

// Bilinear interpolation of an interior field at point p. Cell corners that
// fall outside the domain contribute the value `outside` (the Dirichlet
// trace, usually 0); this keeps evaluation well-defined up to the boundary.
inline double interpolate(const ScalarField& u, Point p, double outside = 0.0) {
    const Grid& g = *u.grid;
    const double fx = (p.x - g.origin().x) / g.h();
    const double fy = (p.y - g.origin().y) / g.h();
    int ix = static_cast<int>(std::floor(fx));
    int iy = static_cast<int>(std::floor(fy));
    ix = std::clamp(ix, 0, g.nx() - 2);
    iy = std::clamp(iy, 0, g.ny() - 2);
    const double sx = std::clamp(fx - ix, 0.0, 1.0);
    const double sy = std::clamp(fy - iy, 0.0, 1.0);
    auto val = [&](int jx, int jy) {
        const int k = g.interior_index(jx, jy);
        return k >= 0 ? u[k] : outside;
    };
    return (1 - sx) * (1 - sy) * val(ix, iy) + sx * (1 - sy) * val(ix + 1, iy) +
           (1 - sx) * sy * val(ix, iy + 1) + sx * sy * val(ix + 1, iy + 1);
}

} // namespace liouville
