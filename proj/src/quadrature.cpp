#include "liouville/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liouville {

namespace {

// Distance from an interior point q of the square [x0,x1]x[y0,y1] to its
// boundary along direction (cos t, sin t).
double ray_exit(double qx, double qy, double x0, double x1, double y0, double y1, double t) {
    const double c = std::cos(t), s = std::sin(t);
    double r = 1e300;
    if (c > 1e-15) r = std::min(r, (x1 - qx) / c);
    if (c < -1e-15) r = std::min(r, (x0 - qx) / c);
    if (s > 1e-15) r = std::min(r, (y1 - qy) / s);
    if (s < -1e-15) r = std::min(r, (y0 - qy) / s);
    return r;
}

// Exact-in-r moment of r^{2a} over the square cell containing q:
// integral = int_0^{2pi} R(t)^{2a+2}/(2a+2) dt, split at corner angles.
double containing_cell_moment(Point q, double x0, double x1, double y0, double y1,
                              double two_alpha) {
    const double p = two_alpha + 2.0;
    std::vector<double> cuts;
    for (double cx : {x0, x1})
        for (double cy : {y0, y1}) cuts.push_back(std::atan2(cy - q.y, cx - q.x));
    for (double& t : cuts)
        if (t < 0) t += 2.0 * M_PI;
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(cuts.front() + 2.0 * M_PI);

    // 32-point Gauss-Legendre per smooth wedge.
    static const int NG = 32;
    static std::vector<double> gx, gw;
    if (gx.empty()) {
        gx.resize(NG);
        gw.resize(NG);
        // Newton on Legendre polynomials.
        for (int i = 0; i < NG; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (NG + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= NG; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = NG * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= NG; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = NG * (x * p1 - p0) / (x * x - 1.0);
            gx[i] = x;
            gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    double total = 0.0;
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double a = cuts[seg], b = cuts[seg + 1];
        if (b - a < 1e-14) continue;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int i = 0; i < NG; ++i) {
            const double t = mid + half * gx[i];
            const double R = ray_exit(q.x, q.y, x0, x1, y0, y1, t);
            acc += gw[i] * std::pow(R, p);
        }
        total += half * acc / p;
    }
    return total;
}

// Midpoint-subdivided moment for cells not containing q (smooth integrand).
double subdivided_moment(Point q, double x0, double y0, double h, double two_alpha,
                         const Domain& dom, bool clip) {
    const int s = 16;
    const double dh = h / s;
    double acc = 0.0;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const Point c{x0 + (i + 0.5) * dh, y0 + (j + 0.5) * dh};
            if (clip && dom.signed_distance(c) >= 0.0) continue;
            acc += std::pow(dist(c, q), two_alpha) * dh * dh;
        }
    return acc;
}

} // namespace

double QuadratureRule::weight_factor(int k) const {
    if (!mark) return 1.0;
    if (k == center_node) return moment(k) / weights[static_cast<std::size_t>(k)];
    return std::pow(dist(grid->interior_point(k), mark->center), mark->two_alpha);
}

double QuadratureRule::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

QuadratureRule plain_rule(const Grid& g) {
    QuadratureRule r;
    r.grid = &g;
    r.weights.resize(static_cast<std::size_t>(g.num_interior()));
    const double h2 = g.h() * g.h();
    for (int k = 0; k < g.num_interior(); ++k) {
        const auto& a = g.arms(k);
        r.weights[static_cast<std::size_t>(k)] =
            h2 * 0.5 * (a[0].theta + a[1].theta) * 0.5 * (a[2].theta + a[3].theta);
    }
    r.near_slot.assign(static_cast<std::size_t>(g.num_interior()), -1);
    return r;
}

QuadratureRule singular_rule(const Grid& g, Point center, double two_alpha) {
    if (two_alpha <= -2.0)
        throw std::invalid_argument("singular_rule: exponent must satisfy 2a > -2");
    QuadratureRule r = plain_rule(g);
    const double h = g.h();
    r.mark = SingularMark{center, two_alpha, 3.0 * h};

    int nearest_k = -1;
    double nearest_d = 1e300;
    for (int k = 0; k < g.num_interior(); ++k) {
        const double d = dist(g.interior_point(k), center);
        if (d < nearest_d) {
            nearest_d = d;
            nearest_k = k;
        }
    }
    // Only an exact hit gets the cell-average treatment.
    if (nearest_d < 1e-12 * std::max(1.0, h)) r.center_node = nearest_k;

    for (int k = 0; k < g.num_interior(); ++k) {
        const Point p = g.interior_point(k);
        if (dist(p, center) > r.mark->radius) continue;
        const double x0 = p.x - 0.5 * h, y0 = p.y - 0.5 * h;
        const bool contains = std::abs(p.x - center.x) <= 0.5 * h + 1e-14 &&
                              std::abs(p.y - center.y) <= 0.5 * h + 1e-14 &&
                              (k == nearest_k);
        double m;
        if (contains)
            m = containing_cell_moment(center, x0, x0 + h, y0, y0 + h, two_alpha);
        else
            m = subdivided_moment(center, x0, y0, h, two_alpha, g.domain(),
                                  g.boundary_adjacent(k));
        r.near_slot[static_cast<std::size_t>(k)] = static_cast<int>(r.near_nodes.size());
        r.near_nodes.push_back(k);
        r.near_moments.push_back(m);
    }
    return r;
}

double integrate(const ScalarField& f, const QuadratureRule& rule) {
    if (f.grid != rule.grid) throw std::invalid_argument("integrate: mismatched grid");
    const Grid& g = *rule.grid;
    if (!rule.mark) {
        double s = 0.0;
        for (int k = 0; k < f.size(); ++k) s += rule.weights[static_cast<std::size_t>(k)] * f[k];
        return s;
    }
    const Point q = rule.mark->center;
    const double ta = rule.mark->two_alpha;
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k)
        if (!rule.is_near(k)) s += rule.weights[static_cast<std::size_t>(k)] * f[k];
    // Smooth part at the center node is not recoverable by division; use the
    // mean over the immediate ring.
    double ring_sum = 0.0;
    int ring_count = 0;
    for (std::size_t i = 0; i < rule.near_nodes.size(); ++i) {
        const int k = rule.near_nodes[i];
        if (k == rule.center_node) continue;
        const double rk = dist(g.interior_point(k), q);
        const double gk = f[k] * std::pow(rk, -ta);
        s += rule.near_moments[i] * gk;
        if (rk <= 1.5 * g.h()) {
            ring_sum += gk;
            ring_count += 1;
        }
    }
    if (rule.center_node >= 0) {
        const double g0 = ring_count > 0 ? ring_sum / ring_count : 0.0;
        const int slot = rule.near_slot[static_cast<std::size_t>(rule.center_node)];
        s += rule.near_moments[static_cast<std::size_t>(slot)] * g0;
    }
    return s;
}

double integrate_weighted(const ScalarField& g, const QuadratureRule& rule) {
    if (g.grid != rule.grid) throw std::invalid_argument("integrate_weighted: mismatched grid");
    if (!rule.mark) return integrate(g, rule);
    const Grid& gr = *rule.grid;
    const Point q = rule.mark->center;
    const double ta = rule.mark->two_alpha;
    double s = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        if (rule.is_near(k))
            s += rule.moment(k) * g[k];
        else
            s += rule.weights[static_cast<std::size_t>(k)] *
                 std::pow(dist(gr.interior_point(k), q), ta) * g[k];
    }
    return s;
}

} // namespace liouville
