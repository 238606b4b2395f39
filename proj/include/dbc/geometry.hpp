#pragma once

#include <optional>
#include <vector>

#include "dbc/types.hpp"

namespace dbc {

struct Meter;  // dbc/dbscan.hpp

// The l nearest points to point i under Euclidean distance, ascending by
// (distance, index). Ties always break toward the smaller index.
std::vector<std::pair<int, double>> knn(const PointSet& ps, int i, int l);

// Deduplicate exact coordinates: returns the representative (smallest) index
// for each point; reps[i] == i marks a representative.
std::vector<int> coordinate_reps(const PointSet& ps);

// Delaunay edges of the planar point multiset, weighted by Euclidean length.
// Duplicate coordinates collapse to their lowest-index representative; the
// extra copies carry no edges. All-collinear inputs yield the path of
// consecutive points in sorted order. Cocircular ties are resolved by the
// index-based perturbation in incircle_perturbed.
WeightedEdgeList delaunay(const PointSet& ps);

// Minimum, over all circles through points p and q, of the number of points
// strictly inside the circle. Evaluated by an exact sweep over the pencil of
// circles through p and q (center on the bisector), including the two open
// half-plane limits.
int min_circle_interior_count(const PointSet& ps, int p, int q);

enum class BccpMode { exact, approx };

struct BccpResult {
    int i = -1;  // index in A
    int j = -1;  // index in B
    double dist = 0.0;
};

// Bichromatic closest pair between disjoint index sets A and B.
// exact: true closest pair (Delaunay filter in the plane, brute force
// otherwise). approx(alpha): a pair within factor (1+alpha) of the true
// distance via iterated grid quantization. Ties break by (dist, i, j).
// When meter is non-null its distance counter tracks point-pair evaluations.
BccpResult bccp(const PointSet& ps, const std::vector<int>& a, const std::vector<int>& b,
                BccpMode mode, double alpha = 0.0, Meter* meter = nullptr);

}  // namespace dbc
