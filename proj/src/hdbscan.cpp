#include "dbc/hdbscan.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <functional>
#include <istream>
#include <numeric>
#include <unordered_set>

#include "dbc/errors.hpp"
#include "dbc/geometry.hpp"
#include "dbc/kdtree.hpp"
#include "dbc/triangulation.hpp"

namespace dbc {

std::vector<double> core_distances(const PointSet& ps, int min_pts) {
    int n = ps.size();
    if (min_pts < 1) throw param_error("core_distances: min_pts must be >= 1");
    if (n < min_pts) throw param_error("core_distances: fewer points than min_pts");
    std::vector<double> cd(n, 0.0);
    if (min_pts == 1) return cd;
    int l = min_pts - 1;
    if (n <= 64) {
        for (int i = 0; i < n; ++i) cd[i] = knn(ps, i, l).back().second;
    } else {
        KdTree tree(ps);
        for (int i = 0; i < n; ++i) cd[i] = tree.knn_of(i, l).back().second;
    }
    return cd;
}

double mutual_reachability(const PointSet& ps, const std::vector<double>& core_dist, int p, int q) {
    if (p == q) throw param_error("mutual_reachability: p == q");
    return std::max({core_dist[p], core_dist[q], ps.dist(p, q)});
}

namespace {

inline uint64_t pair_key(int i, int j) {
    if (i > j) std::swap(i, j);
    return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) | static_cast<uint32_t>(j);
}

}  // namespace

WeightedEdgeList kod_edges(const PointSet& ps, int k) {
    if (ps.dim() != 2) throw unsupported_error("kod_edges: dimension 2 only");
    if (k < 0) throw param_error("kod_edges: k must be >= 0");
    int n = ps.size();
    WeightedEdgeList out;
    if (n < 2) return out;

    std::vector<int> rep = coordinate_reps(ps);
    std::vector<int> reps;
    for (int i = 0; i < n; ++i)
        if (rep[i] == i) reps.push_back(i);

    std::unordered_set<uint64_t> edges;
    // duplicate groups: chain the copies so spanning trees stay connected
    {
        std::vector<int> last(n, -1);
        for (int i = 0; i < n; ++i) {
            int r = rep[i];
            if (i == r) {
                last[r] = i;
                continue;
            }
            edges.insert(pair_key(last[r], i));
            last[r] = i;
        }
    }

    if (reps.size() >= 2) {
        Triangulation tri(ps, reps);
        for (auto [i, j] : tri.edges()) edges.insert(pair_key(i, j));

        if (k >= 1 && reps.size() > 2) {
            std::unordered_set<std::string> visited;
            std::vector<int> removed;
            auto set_key = [&]() {
                std::string s(removed.size() * sizeof(int), '\0');
                std::memcpy(s.data(), removed.data(), s.size());
                return s;
            };
            std::function<void(int, const std::vector<int>&)> dfs = [&](int budget,
                                                                        const std::vector<int>& touched) {
                const std::vector<int>& cands = removed.empty() ? reps : touched;
                for (int r : cands) {
                    if (tri.vertex_count() < 3) break;
                    if (std::find(removed.begin(), removed.end(), r) != removed.end()) continue;
                    removed.insert(std::upper_bound(removed.begin(), removed.end(), r), r);
                    if (!visited.insert(set_key()).second) {
                        removed.erase(std::find(removed.begin(), removed.end(), r));
                        continue;
                    }
                    std::vector<int> hole = tri.neighbors(r);
                    tri.remove(r);
                    for (auto [a, b] : tri.last_fill_edges()) edges.insert(pair_key(a, b));
                    if (budget > 1) {
                        std::vector<int> merged = touched;
                        merged.insert(merged.end(), hole.begin(), hole.end());
                        std::sort(merged.begin(), merged.end());
                        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                        dfs(budget - 1, merged);
                    }
                    tri.insert(r);
                    removed.erase(std::find(removed.begin(), removed.end(), r));
                }
            };
            dfs(k, {});
        }
    }

    out.reserve(edges.size());
    for (uint64_t key : edges)
        out.push_back(Edge(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu)));
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return out;
}

WeightedEdgeList mst(WeightedEdgeList edges, int n) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    WeightedEdgeList tree;
    tree.reserve(n > 0 ? n - 1 : 0);
    for (const Edge& e : edges) {
        int a = find(e.i), b = find(e.j);
        if (a == b) continue;
        parent[std::max(a, b)] = std::min(a, b);
        tree.push_back(e);
        if (static_cast<int>(tree.size()) == n - 1) break;
    }
    if (n > 0 && static_cast<int>(tree.size()) != n - 1) {
        std::unordered_set<int> roots;
        for (int i = 0; i < n; ++i) roots.insert(find(i));
        throw internal_error("mst: input graph is disconnected (" + std::to_string(roots.size()) +
                             " components)");
    }
    return tree;
}

Dendrogram build_dendrogram(WeightedEdgeList tree_edges, int n) {
    std::sort(tree_edges.begin(), tree_edges.end(), [](const Edge& a, const Edge& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    Dendrogram dg;
    dg.n = n;
    std::vector<int> parent(n), node(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::iota(node.begin(), node.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Edge& e : tree_edges) {
        int a = find(e.i), b = find(e.j);
        if (a == b) throw internal_error("build_dendrogram: input is not a forest");
        int id = n + static_cast<int>(dg.merges.size());
        dg.merges.push_back({node[a], node[b], e.w});
        int root = std::min(a, b);
        parent[std::max(a, b)] = root;
        node[root] = id;
    }
    return dg;
}

Dendrogram hdbscan(const PointSet& ps, int min_pts) {
    if (ps.dim() != 2) throw unsupported_error("hdbscan: dimension 2 only");
    if (min_pts < 1) throw param_error("hdbscan: min_pts must be >= 1");
    if (ps.size() < min_pts) throw param_error("hdbscan: fewer points than min_pts");
    int n = ps.size();
    if (n == 1) return {.n = 1, .merges = {}};

    std::vector<double> cd = core_distances(ps, min_pts);
    int k = std::max(min_pts - 3, 0);
    WeightedEdgeList cand = kod_edges(ps, k);
    for (Edge& e : cand) e.w = mutual_reachability(ps, cd, e.i, e.j);
    return build_dendrogram(mst(std::move(cand), n), n);
}

Dendrogram hdbscan_oracle(const PointSet& ps, int min_pts, int cap) {
    if (min_pts < 1) throw param_error("hdbscan_oracle: min_pts must be >= 1");
    if (ps.size() < min_pts) throw param_error("hdbscan_oracle: fewer points than min_pts");
    int n = ps.size();
    if (n > cap) throw param_error("hdbscan_oracle: instance exceeds the oracle cap");
    if (n == 1) return {.n = 1, .merges = {}};

    std::vector<double> cd = core_distances(ps, min_pts);
    // Prim over the complete mutual reachability graph
    std::vector<char> in_tree(n, 0);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<int> link(n, -1);
    WeightedEdgeList tree;
    in_tree[0] = 1;
    for (int j = 1; j < n; ++j) {
        best[j] = mutual_reachability(ps, cd, 0, j);
        link[j] = 0;
    }
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int j = 0; j < n; ++j)
            if (!in_tree[j] && (pick < 0 || best[j] < best[pick])) pick = j;
        in_tree[pick] = 1;
        tree.push_back(Edge(link[pick], pick, best[pick]));
        for (int j = 0; j < n; ++j)
            if (!in_tree[j]) {
                double w = mutual_reachability(ps, cd, pick, j);
                if (w < best[j]) {
                    best[j] = w;
                    link[j] = pick;
                }
            }
    }
    return build_dendrogram(std::move(tree), n);
}

Labeling extract_at(const Dendrogram& dg, double eps, const PointSet& ps, int min_pts) {
    if (eps < 0) throw param_error("extract_at: eps must be >= 0");
    int n = dg.n;
    Labeling lab;
    lab.label.assign(n, PointLabel::noise);
    lab.cluster.assign(n, -1);
    if (n == 0) return lab;

    std::vector<double> cd = core_distances(ps, min_pts);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    // a representative leaf for every node id
    std::vector<int> leaf_of(n + dg.merges.size());
    std::iota(leaf_of.begin(), leaf_of.begin() + n, 0);
    for (size_t m = 0; m < dg.merges.size(); ++m)
        leaf_of[n + m] = leaf_of[dg.merges[m].left];
    for (size_t m = 0; m < dg.merges.size(); ++m) {
        if (dg.merges[m].eps > eps) continue;
        int a = find(leaf_of[dg.merges[m].left]);
        int b = find(leaf_of[dg.merges[m].right]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (int i = 0; i < n; ++i)
        if (cd[i] <= eps) {
            lab.label[i] = PointLabel::core;
            lab.cluster[i] = find(i);
        }
    canonicalize(lab);
    return lab;
}

std::string serialize_dendrogram(const Dendrogram& dg) {
    std::string out;
    char buf[96];
    for (size_t m = 0; m < dg.merges.size(); ++m) {
        int written = std::snprintf(buf, sizeof(buf), "%d %d %d %.17g\n",
                                    dg.n + static_cast<int>(m), dg.merges[m].left,
                                    dg.merges[m].right, dg.merges[m].eps);
        out.append(buf, written);
    }
    return out;
}

Dendrogram parse_dendrogram(std::istream& in, int n) {
    Dendrogram dg;
    dg.n = n;
    int id, left, right;
    double eps;
    while (in >> id >> left >> right >> eps) {
        if (id != n + static_cast<int>(dg.merges.size()))
            throw param_error("parse_dendrogram: unexpected node id");
        dg.merges.push_back({left, right, eps});
    }
    return dg;
}

}  // namespace dbc
