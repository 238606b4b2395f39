#pragma once

#include <cstdint>
#include <vector>

#include "dbc/boxgraph.hpp"
#include "dbc/types.hpp"

namespace dbc {

enum class Variant { dbscan, dbscan_star };
enum class PairCheck { delaunay, randomized_brute };

struct Params {
    double eps = 0.0;
    int min_pts = 4;
    Variant variant = Variant::dbscan;

    void validate() const {
        if (!(eps > 0) || !std::isfinite(eps)) throw param_error("eps must be positive and finite");
        if (min_pts < 1) throw param_error("min_pts must be >= 1");
    }
};

// Instrumentation counters. distance_computations counts point-pair distance
// evaluations; seeds sums reported neighborhood sizes (original algorithm).
// When audit is set, every counted pair is also logged so tests can replay
// the count independently.
struct Meter {
    uint64_t distance_computations = 0;
    uint64_t seeds = 0;
    uint64_t rng_seed = 0;
    std::vector<std::pair<int, int>>* audit = nullptr;

    void count_pair(int i, int j) {
        ++distance_computations;
        if (audit) audit->push_back({i, j});
    }
};

enum class PointLabel : uint8_t { core, border, noise };

// Per-point assignment. cluster[i] == -1 for noise; ids are dense and
// canonical: the cluster holding the smallest core-point index is 0, the
// cluster holding the next smallest index not yet seen is 1, and so on.
struct Labeling {
    std::vector<PointLabel> label;
    std::vector<int> cluster;

    int size() const { return static_cast<int>(label.size()); }
    int cluster_count() const {
        int m = -1;
        for (int c : cluster) m = std::max(m, c);
        return m + 1;
    }
    friend bool operator==(const Labeling&, const Labeling&) = default;
};

// Renumber cluster ids to the canonical order (see Labeling).
void canonicalize(Labeling& lab);

// Step 2: core mask. Boxes with >= min_pts points are core wholesale; other
// points count neighbors in adjacent boxes brute-force with early exit.
std::vector<char> find_core_points(const BoxGraph& bg, const PointSet& ps, const Params& params,
                                   Meter& meter);

// Step 3: cluster ids for core points (-1 for non-core), via connected
// components of the reduced box graph. pair_check picks the box-pair test.
std::vector<int> cluster_cores(const BoxGraph& bg, const PointSet& ps,
                               const std::vector<char>& core, const Params& params, Meter& meter,
                               PairCheck pair_check);

// Step 4: nearest-core border assignment (ties to the smaller core index).
Labeling assign_borders(const BoxGraph& bg, const PointSet& ps, const std::vector<char>& core,
                        const std::vector<int>& core_cluster, const Params& params, Meter& meter);

// Full pipeline, Steps 1-4 (Step 4 skipped for dbscan_star).
Labeling dbscan(const PointSet& ps, const Params& params, BoxMode mode, PairCheck pair_check,
                Meter& meter);

// Definitional O(n^2) ground truth; refuses n > cap.
Labeling dbscan_oracle(const PointSet& ps, const Params& params, int cap = 2000);

// Instrumented baseline: one range query per point through the grid box
// graph, seed-list cluster expansion, border points reassigned to their
// nearest core point at the end.
Labeling original_dbscan(const PointSet& ps, const Params& params, Meter& meter);

// true iff every cluster of c1 is contained in a single cluster of c2.
bool is_refinement(const Labeling& c1, const Labeling& c2);

}  // namespace dbc
