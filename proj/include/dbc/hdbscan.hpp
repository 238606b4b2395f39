#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dbc/dbscan.hpp"
#include "dbc/types.hpp"

namespace dbc {

// d_core(p) = distance from p to its (min_pts - 1)-th nearest neighbor.
// min_pts == 1 gives all zeros. Requires n >= min_pts.
std::vector<double> core_distances(const PointSet& ps, int min_pts);

// max(d_core(p), d_core(q), |pq|)
double mutual_reachability(const PointSet& ps, const std::vector<double>& core_dist, int p, int q);

// All pairs (p, q) admitting a circle through p and q with at most k points
// of the set strictly inside. Computed as the closure of Delaunay edges under
// up to k point removals with local hole retriangulation; at each level only
// points whose Delaunay neighborhood has changed are candidates for removal.
// Duplicate coordinates collapse to representatives; each duplicate group
// additionally contributes a chain of zero-length candidate pairs so that
// spanning-tree construction stays connected. Weights are left 0.
WeightedEdgeList kod_edges(const PointSet& ps, int k);

// Kruskal MST over 0..n-1; ties broken by (weight, i, j). Throws
// internal_error naming the component count if the graph is disconnected.
WeightedEdgeList mst(WeightedEdgeList edges, int n);

// Merge tree over points; leaves are 0..n-1, internal node i (0-based in
// merges) has id n+i. merge_eps is non-decreasing in creation order.
struct Dendrogram {
    struct Merge {
        int left = -1, right = -1;  // child node ids
        double eps = 0.0;
    };
    int n = 0;
    std::vector<Merge> merges;

    friend bool operator==(const Dendrogram&, const Dendrogram&) = default;
};

Dendrogram build_dendrogram(WeightedEdgeList tree_edges, int n);

// Exact planar hierarchy: k-OD candidate edges (k = max(min_pts-3, 0))
// weighted by mutual reachability, MST, dendrogram.
Dendrogram hdbscan(const PointSet& ps, int min_pts);

// Prim over the complete mutual reachability graph; refuses n > cap.
Dendrogram hdbscan_oracle(const PointSet& ps, int min_pts, int cap = 3000);

// DBSCAN* clustering at level eps: components of the merge tree cut at eps,
// restricted to points with d_core <= eps; everything else is noise.
Labeling extract_at(const Dendrogram& dg, double eps, const PointSet& ps, int min_pts);

// One line per internal node: "node_id left_id right_id merge_eps" with
// merge_eps printed to 17 significant digits (value-exact round trip).
// Leaves carry no records.
std::string serialize_dendrogram(const Dendrogram& dg);
Dendrogram parse_dendrogram(std::istream& in, int n);

}  // namespace dbc
