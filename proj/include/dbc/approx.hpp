#pragma once

#include "dbc/dbscan.hpp"
#include "dbc/hdbscan.hpp"
#include "dbc/types.hpp"

namespace dbc {

// delta-approximation parameters: alpha = delta/(1-delta) drives the
// approximate bichromatic closest pair, theta = sqrt(2*delta) the cone
// partition (cos(theta) >= 1 - delta by construction, checked numerically).
struct ApproxParams {
    double delta = 0.0;
    double alpha = 0.0;
    double theta = 0.0;
    // Lemma-sized theta requires 2 sin(theta) < cos^2(theta); large deltas
    // violate it and only the empirical sandwich contract remains.
    bool large_theta = false;

    explicit ApproxParams(double d);
};

// delta-approximate DBSCAN* in any dimension: the exact pipeline with the
// box-pair test replaced by an approximate bichromatic closest pair; an edge
// is added when the reported pair distance is <= eps. The output C* satisfies
// C_{(1-delta)eps} < C* < C_eps (cluster refinement both ways).
// exact_pairs = true degenerates to the exact test (alpha = 0 path).
Labeling approx_dbscan_star(const PointSet& ps, const Params& params, const ApproxParams& ap,
                            Meter& meter, bool exact_pairs = false);

// Cone-based candidate edges: for each point and each of the ceil(2*pi/theta)
// sectors, the 2*min_pts-3 points with the smallest projection onto the
// sector bisector; weights are mutual reachability distances.
WeightedEdgeList theta_edge_set(const PointSet& ps, int min_pts, const ApproxParams& ap);

// MST over theta_edge_set plus dendrogram conversion: every extract_at level
// is a delta-approximate DBSCAN* clustering.
Dendrogram approx_hdbscan(const PointSet& ps, int min_pts, const ApproxParams& ap);

}  // namespace dbc
