#include "dbc/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dbc/errors.hpp"
#include "dbc/geometry.hpp"

namespace dbc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ApproxParams::ApproxParams(double d) : delta(d) {
    if (!(d > 0.0) || !(d < 1.0) || !std::isfinite(d))
        throw param_error("ApproxParams: delta must lie in (0, 1)");
    alpha = delta / (1.0 - delta);
    theta = std::sqrt(2.0 * delta);
    if (std::cos(theta) < 1.0 - delta - 1e-12)
        throw internal_error("ApproxParams: cos(theta) >= 1 - delta violated");
    large_theta = 2.0 * std::sin(theta) >= std::cos(theta) * std::cos(theta);
}

Labeling approx_dbscan_star(const PointSet& ps, const Params& params, const ApproxParams& ap,
                            Meter& meter, bool exact_pairs) {
    params.validate();
    if (ps.empty()) return {};
    BoxGraph bg = build_grid(ps, params.eps);
    std::vector<char> core = find_core_points(bg, ps, params, meter);

    int nb = bg.size();
    std::vector<std::vector<int>> box_cores(nb);
    for (int b = 0; b < nb; ++b)
        for (int i : bg.boxes[b].point_indices)
            if (core[i]) box_cores[b].push_back(i);

    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int b = 0; b < nb; ++b) {
        if (box_cores[b].empty()) continue;
        for (int b2 : bg.adj[b]) {
            if (b2 < b || box_cores[b2].empty()) continue;
            if (find(b) == find(b2)) continue;
            BccpResult r = bccp(ps, box_cores[b], box_cores[b2],
                                exact_pairs ? BccpMode::exact : BccpMode::approx, ap.alpha, &meter);
            if (r.dist <= params.eps) {
                int ra = find(b), rb = find(b2);
                parent[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
    }

    Labeling lab;
    lab.label.assign(ps.size(), PointLabel::noise);
    lab.cluster.assign(ps.size(), -1);
    for (int i = 0; i < ps.size(); ++i)
        if (core[i]) {
            lab.label[i] = PointLabel::core;
            lab.cluster[i] = find(bg.box_of[i]);
        }
    canonicalize(lab);
    return lab;
}

WeightedEdgeList theta_edge_set(const PointSet& ps, int min_pts, const ApproxParams& ap) {
    if (ps.dim() != 2) throw unsupported_error("theta_edge_set: dimension 2 only");
    if (min_pts < 2) throw param_error("theta_edge_set: min_pts must be >= 2");
    int n = ps.size();
    if (n < min_pts) throw param_error("theta_edge_set: fewer points than min_pts");

    int k = 2 * min_pts - 3;
    int m = static_cast<int>(std::ceil(kTwoPi / ap.theta));
    double sector = kTwoPi / m;
    std::vector<double> cd = core_distances(ps, min_pts);

    // per-sector bisector directions
    std::vector<double> cx(m), cy(m);
    for (int c = 0; c < m; ++c) {
        cx[c] = std::cos((c + 0.5) * sector);
        cy[c] = std::sin((c + 0.5) * sector);
    }

    std::unordered_set<uint64_t> edges;
    std::vector<std::vector<std::pair<double, int>>> cones(m);
    for (int p = 0; p < n; ++p) {
        for (auto& cone : cones) cone.clear();
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            double dx = ps.x(q) - ps.x(p);
            double dy = ps.y(q) - ps.y(p);
            double ang = std::atan2(dy, dx);
            if (ang < 0) ang += kTwoPi;
            int c = std::min(static_cast<int>(ang / sector), m - 1);
            cones[c].push_back({dx * cx[c] + dy * cy[c], q});
        }
        for (int c = 0; c < m; ++c) {
            auto& cone = cones[c];
            int take = std::min<int>(k, static_cast<int>(cone.size()));
            std::partial_sort(cone.begin(), cone.begin() + take, cone.end());
            for (int t = 0; t < take; ++t) {
                int q = cone[t].second;
                int i = std::min(p, q), j = std::max(p, q);
                edges.insert((static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) |
                             static_cast<uint32_t>(j));
            }
        }
    }

    WeightedEdgeList out;
    out.reserve(edges.size());
    for (uint64_t key : edges) {
        int i = static_cast<int>(key >> 32);
        int j = static_cast<int>(key & 0xffffffffu);
        out.push_back(Edge(i, j, mutual_reachability(ps, cd, i, j)));
    }
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return out;
}

Dendrogram approx_hdbscan(const PointSet& ps, int min_pts, const ApproxParams& ap) {
    if (ps.dim() != 2) throw unsupported_error("approx_hdbscan: dimension 2 only");
    if (ps.size() < min_pts) throw param_error("approx_hdbscan: fewer points than min_pts");
    int n = ps.size();
    if (n == 1) return {.n = 1, .merges = {}};
    return build_dendrogram(mst(theta_edge_set(ps, min_pts, ap), n), n);
}

}  // namespace dbc
