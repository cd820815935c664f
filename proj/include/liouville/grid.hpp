#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "liouville/geometry.hpp"

namespace liouville {

enum class NodeClass : std::uint8_t { Exterior = 0, Interior = 1 };

// One of the four stencil arms of an interior node. If the neighbour node is
// interior, `neighbor` is its interior index and theta == 1. Otherwise the
// arm is cut by the boundary at fractional length theta in (0,1] and
// `boundary_point` is the Dirichlet point (Shortley-Weller).
struct Arm {
    int neighbor = -1;          // interior index, or -1 when the arm hits the boundary
    double theta = 1.0;         // fractional length in (0,1]
    Point boundary_point{};     // valid when neighbor < 0
};

// Uniform Cartesian grid covering the bounding box of a domain, with nodes
// classified against the signed distance. Interior nodes are numbered
// consecutively (row-major) and carry their four arms. Immutable after
// construction and safe to share across threads.
class Grid {
  public:
    Grid(const Domain& domain, int n);

    const Domain& domain() const { return domain_; }
    double h() const { return h_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    Point origin() const { return origin_; }
    int resolution() const { return n_; }

    int num_nodes() const { return nx_ * ny_; }
    int num_interior() const { return static_cast<int>(interior_nodes_.size()); }

    NodeClass node_class(int ix, int iy) const { return classes_[node_id(ix, iy)]; }
    int node_id(int ix, int iy) const { return iy * nx_ + ix; }
    Point node_point(int ix, int iy) const {
        return {origin_.x + ix * h_, origin_.y + iy * h_};
    }

    // Interior indexing.
    int interior_index(int ix, int iy) const { return interior_of_node_[node_id(ix, iy)]; }
    Point interior_point(int k) const {
        const auto [ix, iy] = interior_coords(k);
        return node_point(ix, iy);
    }
    std::pair<int, int> interior_coords(int k) const {
        const int id = interior_nodes_[k];
        return {id % nx_, id / nx_};
    }
    // Arms in order E, W, N, S.
    const std::array<Arm, 4>& arms(int k) const { return arms_[k]; }
    bool boundary_adjacent(int k) const {
        for (const Arm& a : arms_[k])
            if (a.neighbor < 0) return true;
        return false;
    }

    // Deterministic structural hash (used to key cached Green tables).
    std::uint64_t hash() const { return hash_; }

  private:
    Domain domain_;
    int n_ = 0;
    int nx_ = 0, ny_ = 0;
    double h_ = 0.0;
    Point origin_{};
    std::vector<NodeClass> classes_;
    std::vector<int> interior_of_node_; // -1 for exterior
    std::vector<int> interior_nodes_;   // node ids in row-major order
    std::vector<std::array<Arm, 4>> arms_;
    std::uint64_t hash_ = 0;
};

} // namespace liouville
