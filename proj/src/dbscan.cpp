#include "dbc/dbscan.hpp"

#include <algorithm>
#include <numeric>

#include "dbc/geometry.hpp"
#include "dbc/rng.hpp"

namespace dbc {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // smaller root wins: ids stay index-ordered
        parent[b] = a;
        return true;
    }
};

double point_box_dist2(const PointSet& ps, int i, const Box& b) {
    double s = 0;
    for (size_t k = 0; k < b.lo.size(); ++k) {
        double c = ps.coord(i, static_cast<int>(k));
        double g = std::max({0.0, b.lo[k] - c, c - b.hi[k]});
        s += g * g;
    }
    return s;
}

}  // namespace

void canonicalize(Labeling& lab) {
    std::vector<int> remap(lab.cluster_count(), -1);
    int next = 0;
    for (int i = 0; i < lab.size(); ++i)
        if (lab.label[i] == PointLabel::core && remap[lab.cluster[i]] < 0)
            remap[lab.cluster[i]] = next++;
    for (int i = 0; i < lab.size(); ++i)
        if (lab.cluster[i] >= 0) lab.cluster[i] = remap[lab.cluster[i]];
}

std::vector<char> find_core_points(const BoxGraph& bg, const PointSet& ps, const Params& params,
                                   Meter& meter) {
    params.validate();
    if (bg.eps != params.eps) throw param_error("find_core_points: eps mismatch with box graph");
    int n = ps.size();
    double eps2 = params.eps * params.eps;
    std::vector<char> core(n, 0);
    for (int b = 0; b < bg.size(); ++b) {
        const Box& box = bg.boxes[b];
        int nb = static_cast<int>(box.point_indices.size());
        if (nb >= params.min_pts) {
            for (int i : box.point_indices) core[i] = 1;
            continue;
        }
        for (int i : box.point_indices) {
            int needed = params.min_pts - nb;  // same-box points are all within eps
            for (int b2 : bg.adj[b]) {
                for (int j : bg.boxes[b2].point_indices) {
                    meter.count_pair(i, j);
                    if (ps.dist2(i, j) <= eps2 && --needed == 0) break;
                }
                if (needed == 0) break;
            }
            if (needed == 0) core[i] = 1;
        }
    }
    return core;
}

namespace {

// is there a core pair within eps across boxes b1, b2?
bool boxes_linked(const BoxGraph& bg, const PointSet& ps, const std::vector<char>& core,
                  const Params& params, Meter& meter, PairCheck pair_check, Rng& rng, int b1,
                  int b2) {
    const Box& A = bg.boxes[b1];
    const Box& B = bg.boxes[b2];
    double eps2 = params.eps * params.eps;
    int na = static_cast<int>(A.point_indices.size());
    int nb = static_cast<int>(B.point_indices.size());

    if (pair_check == PairCheck::delaunay) {
        if (na >= params.min_pts && nb >= params.min_pts && ps.dim() == 2) {
            // every point in both boxes is core: exact BCP via Delaunay
            BccpResult r = bccp(ps, A.point_indices, B.point_indices, BccpMode::exact, 0.0, &meter);
            return r.dist * r.dist <= eps2;
        }
        for (int i : A.point_indices) {
            if (!core[i]) continue;
            for (int j : B.point_indices) {
                if (!core[j]) continue;
                meter.count_pair(i, j);
                if (ps.dist2(i, j) <= eps2) return true;
            }
        }
        return false;
    }

    // randomized early-exit scan over the smaller box, with a point-to-box
    // distance pre-filter
    const Box* small = &A;
    const Box* big = &B;
    if (nb < na) std::swap(small, big);
    std::vector<int> order_s, order_b;
    for (int i : small->point_indices)
        if (core[i]) order_s.push_back(i);
    for (int i : big->point_indices)
        if (core[i]) order_b.push_back(i);
    rng.shuffle(order_s);
    rng.shuffle(order_b);
    for (int i : order_s) {
        if (point_box_dist2(ps, i, *big) > eps2) continue;
        for (int j : order_b) {
            meter.count_pair(i, j);
            if (ps.dist2(i, j) <= eps2) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<int> cluster_cores(const BoxGraph& bg, const PointSet& ps,
                               const std::vector<char>& core, const Params& params, Meter& meter,
                               PairCheck pair_check) {
    params.validate();
    int nb = bg.size();
    std::vector<char> keep(nb, 0);
    for (int b = 0; b < nb; ++b)
        for (int i : bg.boxes[b].point_indices)
            if (core[i]) {
                keep[b] = 1;
                break;
            }

    Rng rng(meter.rng_seed);
    UnionFind uf(nb);
    for (int b = 0; b < nb; ++b) {
        if (!keep[b]) continue;
        for (int b2 : bg.adj[b]) {
            if (b2 < b || !keep[b2]) continue;
            if (uf.find(b) == uf.find(b2)) continue;  // already one cluster
            if (boxes_linked(bg, ps, core, params, meter, pair_check, rng, b, b2)) uf.unite(b, b2);
        }
    }

    std::vector<int> cid(ps.size(), -1);
    for (int i = 0; i < ps.size(); ++i)
        if (core[i]) cid[i] = uf.find(bg.box_of[i]);
    return cid;
}

Labeling assign_borders(const BoxGraph& bg, const PointSet& ps, const std::vector<char>& core,
                        const std::vector<int>& core_cluster, const Params& params, Meter& meter) {
    int n = ps.size();
    double eps2 = params.eps * params.eps;
    Labeling lab;
    lab.label.assign(n, PointLabel::noise);
    lab.cluster.assign(n, -1);
    for (int i = 0; i < n; ++i)
        if (core[i]) {
            lab.label[i] = PointLabel::core;
            lab.cluster[i] = core_cluster[i];
        }
    for (int b = 0; b < bg.size(); ++b) {
        if (static_cast<int>(bg.boxes[b].point_indices.size()) >= params.min_pts) continue;
        for (int i : bg.boxes[b].point_indices) {
            if (core[i]) continue;
            int best = -1;
            double best_d2 = std::numeric_limits<double>::infinity();
            auto scan = [&](int bb) {
                for (int j : bg.boxes[bb].point_indices) {
                    if (!core[j]) continue;
                    meter.count_pair(i, j);
                    double d2 = ps.dist2(i, j);
                    if (d2 < best_d2 || (d2 == best_d2 && j < best)) {
                        best_d2 = d2;
                        best = j;
                    }
                }
            };
            scan(b);
            for (int b2 : bg.adj[b]) scan(b2);
            if (best >= 0 && best_d2 <= eps2) {
                lab.label[i] = PointLabel::border;
                lab.cluster[i] = core_cluster[best];
            }
        }
    }
    return lab;
}

Labeling dbscan(const PointSet& ps, const Params& params, BoxMode mode, PairCheck pair_check,
                Meter& meter) {
    params.validate();
    if (ps.empty()) return {};
    BoxGraph bg = mode == BoxMode::strip ? build_strips(ps, params.eps) : build_grid(ps, params.eps);
    std::vector<char> core = find_core_points(bg, ps, params, meter);
    std::vector<int> cid = cluster_cores(bg, ps, core, params, meter, pair_check);
    Labeling lab;
    if (params.variant == Variant::dbscan) {
        lab = assign_borders(bg, ps, core, cid, params, meter);
    } else {
        lab.label.assign(ps.size(), PointLabel::noise);
        lab.cluster.assign(ps.size(), -1);
        for (int i = 0; i < ps.size(); ++i)
            if (core[i]) {
                lab.label[i] = PointLabel::core;
                lab.cluster[i] = cid[i];
            }
    }
    canonicalize(lab);
    return lab;
}

Labeling dbscan_oracle(const PointSet& ps, const Params& params, int cap) {
    params.validate();
    int n = ps.size();
    if (n > cap) throw param_error("dbscan_oracle: instance exceeds the oracle cap");
    if (n == 0) return {};
    double eps2 = params.eps * params.eps;

    std::vector<char> core(n, 0);
    for (int i = 0; i < n; ++i) {
        int cnt = 0;
        for (int j = 0; j < n; ++j)
            if (ps.dist2(i, j) <= eps2) ++cnt;  // includes i itself
        core[i] = cnt >= params.min_pts;
    }
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (core[i] && core[j] && ps.dist2(i, j) <= eps2) uf.unite(i, j);

    Labeling lab;
    lab.label.assign(n, PointLabel::noise);
    lab.cluster.assign(n, -1);
    for (int i = 0; i < n; ++i)
        if (core[i]) {
            lab.label[i] = PointLabel::core;
            lab.cluster[i] = uf.find(i);
        }
    if (params.variant == Variant::dbscan) {
        for (int i = 0; i < n; ++i) {
            if (core[i]) continue;
            int best = -1;
            double best_d2 = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j) {
                if (!core[j]) continue;
                double d2 = ps.dist2(i, j);
                if (d2 < best_d2 || (d2 == best_d2 && j < best)) {
                    best_d2 = d2;
                    best = j;
                }
            }
            if (best >= 0 && best_d2 <= eps2) {
                lab.label[i] = PointLabel::border;
                lab.cluster[i] = lab.cluster[best];
            }
        }
    }
    canonicalize(lab);
    return lab;
}

Labeling original_dbscan(const PointSet& ps, const Params& params, Meter& meter) {
    params.validate();
    int n = ps.size();
    if (n == 0) return {};
    BoxGraph bg = build_grid(ps, params.eps);
    double eps2 = params.eps * params.eps;

    constexpr int kUnclassified = -2, kNoise = -1;
    std::vector<int> cluster(n, kUnclassified);
    std::vector<char> queried(n, 0), core(n, 0);

    auto range_query = [&](int p) {
        std::vector<int> out;
        queried[p] = 1;
        int b = bg.box_of[p];
        auto scan = [&](int bb) {
            for (int q : bg.boxes[bb].point_indices) {
                meter.count_pair(p, q);
                if (ps.dist2(p, q) <= eps2) out.push_back(q);
            }
        };
        scan(b);
        for (int b2 : bg.adj[b]) scan(b2);
        meter.seeds += out.size();
        core[p] = static_cast<int>(out.size()) >= params.min_pts;
        return out;
    };

    int next_cluster = 0;
    for (int p = 0; p < n; ++p) {
        if (cluster[p] != kUnclassified) continue;
        std::vector<int> nbrs = range_query(p);
        if (!core[p]) {
            cluster[p] = kNoise;
            continue;
        }
        int c = next_cluster++;
        cluster[p] = c;
        std::vector<int> queue;
        for (int q : nbrs)
            if (q != p) {
                cluster[q] = c;
                queue.push_back(q);
            }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int q = queue[qi];
            if (queried[q]) continue;
            std::vector<int> nq = range_query(q);
            if (!core[q]) continue;
            for (int r : nq)
                if (cluster[r] == kUnclassified || cluster[r] == kNoise) {
                    cluster[r] = c;
                    queue.push_back(r);
                }
        }
    }
    // late queries for cluster members reached before their own query
    for (int p = 0; p < n; ++p)
        if (!queried[p]) range_query(p);

    // order-independent final labeling: borders go to their nearest core
    Labeling lab;
    lab.label.assign(n, PointLabel::noise);
    lab.cluster.assign(n, -1);
    for (int i = 0; i < n; ++i)
        if (core[i]) {
            lab.label[i] = PointLabel::core;
            lab.cluster[i] = cluster[i];
        }
    if (params.variant == Variant::dbscan) {
        Meter scratch;  // reassignment is not part of the measured query work
        std::vector<char> cr(core.begin(), core.end());
        Labeling with_borders = assign_borders(bg, ps, cr, lab.cluster, params, scratch);
        lab = with_borders;
    }
    canonicalize(lab);
    return lab;
}

bool is_refinement(const Labeling& c1, const Labeling& c2) {
    if (c1.size() != c2.size()) throw param_error("is_refinement: size mismatch");
    std::vector<int> image(c1.cluster_count(), -2);
    for (int i = 0; i < c1.size(); ++i) {
        int a = c1.cluster[i];
        if (a < 0) continue;
        int b = c2.cluster[i];
        if (b < 0) return false;  // member of a c1 cluster is noise in c2
        if (image[a] == -2)
            image[a] = b;
        else if (image[a] != b)
            return false;
    }
    return true;
}

}  // namespace dbc
