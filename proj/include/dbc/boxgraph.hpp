#pragma once

#include <cmath>
#include <vector>

#include "dbc/types.hpp"

namespace dbc {

enum class BoxMode { strip, grid };

// Axis-aligned box holding a non-empty set of point indices.
// Strip mode keeps tight bounding boxes; grid mode keeps the full cell.
// Either way the box diameter is at most eps.
struct Box {
    std::vector<int> point_indices;
    std::vector<double> lo, hi;

    double dist2_to(const Box& o) const {
        double s = 0;
        for (size_t k = 0; k < lo.size(); ++k) {
            double g = std::max({0.0, o.lo[k] - hi[k], lo[k] - o.hi[k]});
            s += g * g;
        }
        return s;
    }
};

// Disjoint boxes covering all points plus adjacency between boxes within
// distance eps of each other.
struct BoxGraph {
    std::vector<Box> boxes;
    std::vector<std::vector<int>> adj;
    double eps = 0.0;
    BoxMode mode = BoxMode::grid;
    std::vector<int> box_of;  // point index -> box id

    int size() const { return static_cast<int>(boxes.size()); }
    int max_degree() const {
        size_t m = 0;
        for (auto& a : adj) m = std::max(m, a.size());
        return static_cast<int>(m);
    }
};

// Strip-based decomposition (Step 1), dimension 2 only: vertical strips of
// point-spread at most eps/sqrt(2), split bottom-to-top into tight boxes.
BoxGraph build_strips(const PointSet& ps, double eps);

// Grid decomposition: non-empty cells of the axis grid with side eps/sqrt(d),
// any dimension; adjacency by probing the precomputed neighbor offsets.
BoxGraph build_grid(const PointSet& ps, double eps);

}  // namespace dbc
