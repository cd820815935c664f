#pragma once

#include <optional>
#include <vector>

#include "liouville/field.hpp"
#include "liouville/grid.hpp"

namespace liouville {

struct SingularMark {
    Point center{};
    double two_alpha = 0.0; // exponent of the |x-center|^{2a} weight
    double radius = 0.0;    // correction radius (3h)
};

// Node-centered quadrature. Plain weights are cut-cell areas. A rule carrying
// a singular mark additionally stores, for every node within 3h of the
// center, the exact cell moment of |x-q|^{2a} (radial integration is exact,
// the angular part is resolved numerically). Integrands are assumed to factor
// as |x-q|^{2a} * smooth near the mark.
class QuadratureRule {
  public:
    const Grid* grid = nullptr;
    std::vector<double> weights;            // cell areas
    std::optional<SingularMark> mark;
    std::vector<int> near_nodes;            // interior indices inside the mark radius
    std::vector<double> near_moments;       // per near node: cell moment of r^{2a}
    std::vector<int> near_slot;             // interior index -> slot in near_nodes, or -1
    int center_node = -1;                   // interior index sitting exactly at the center

    bool is_near(int k) const {
        return mark.has_value() && near_slot[static_cast<std::size_t>(k)] >= 0;
    }
    double moment(int k) const {
        return near_moments[static_cast<std::size_t>(near_slot[static_cast<std::size_t>(k)])];
    }
    // Effective nodal value of the r^{2a} factor: pointwise away from the
    // center node, cell-average at it (keeps fields finite for a < 0).
    double weight_factor(int k) const;
    double total_weight() const;
};

QuadratureRule plain_rule(const Grid& g);
QuadratureRule singular_rule(const Grid& g, Point center, double two_alpha);

// Sum w_i f_i; under a singular mark the near-center nodes are re-integrated
// by dividing out the nodal r^{2a} factor and applying the exact cell moment.
// The smooth part at the exact-center node is recovered from its neighbours.
double integrate(const ScalarField& f, const QuadratureRule& rule);

// Integral of |x-q|^{2a} * g for a smooth factor g (plain integral of g when
// the rule has no mark).
double integrate_weighted(const ScalarField& g, const QuadratureRule& rule);

} // namespace liouville
