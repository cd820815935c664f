#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "liouville/operator.hpp"
#include "liouville/spectral.hpp"

namespace liouville {

// Regular part H(.,y) of the anisotropic Green's function with the
// normalization G(x,y) = 4 log(1/|x-y|) + H(x,y). Solved from its boundary
// value problem; the right-hand side at the pole node is zeroed (symmetric
// cell average of the (x-y)/|x-y|^2 kernel).
ScalarField regular_part(const DiscreteOperator& op, Point y);

// Cache of regular parts for a pole set. Append-only; reads are const.
class GreenTable {
  public:
    explicit GreenTable(const DiscreteOperator& op) : op_(&op) {}

    // Adds (or returns) the pole entry. Poles are keyed by rounded
    // coordinates so repeated landscape evaluations reuse solves.
    int ensure_pole(Point y);
    bool has_pole(Point y) const;

    int num_poles() const { return static_cast<int>(poles_.size()); }
    Point pole(int i) const { return poles_[static_cast<std::size_t>(i)]; }
    const ScalarField& regular_field(int i) const { return H_[static_cast<std::size_t>(i)]; }

    // H(x,y): bilinear interpolation of the stored field (the regular part is
    // smooth at the pole). Boundary values 4 log|x-y| are used outside nodes.
    double H(Point x, Point y) const;
    double robin(Point y) const; // H(y,y)

    // G(x,y) = 4 log(1/|x-y|) + H(x,y); x must differ from y.
    double G(Point x, Point y) const;

    const DiscreteOperator& op() const { return *op_; }
    std::uint64_t grid_hash() const { return op_->grid().hash(); }
    std::uint64_t coefficient_hash() const { return op_->coefficient().hash(); }

  private:
    int find(Point y) const;
    const DiscreteOperator* op_;
    std::vector<Point> poles_;
    std::vector<ScalarField> H_;
    std::map<std::pair<long long, long long>, int> index_;
};

// Background fields of the substituted problem: rho solves -Delta_a rho = h
// with zero trace, and k = exp(-rho - (alpha/2) H(.,q)) > 0.
struct Background {
    ScalarField rho;
    ScalarField k;
    Point q{};
    double alpha = 0.0;
};

Background background(const DiscreteOperator& op, GreenTable& table, const ScalarField& h_field,
                      Point q, double alpha);

} // namespace liouville
