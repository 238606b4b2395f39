#include "dbc/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <unordered_map>

#include "dbc/dbscan.hpp"
#include "dbc/errors.hpp"
#include "dbc/kdtree.hpp"
#include "dbc/triangulation.hpp"

namespace dbc {

namespace {

using rational = boost::multiprecision::cpp_rational;

uint64_t coord_hash(const double* p, int dim) {
    uint64_t h = 1469598103934665603ULL;
    for (int k = 0; k < dim; ++k) {
        uint64_t bits;
        double c = p[k] == 0.0 ? 0.0 : p[k];  // normalize -0.0
        __builtin_memcpy(&bits, &c, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

bool coords_equal(const double* a, const double* b, int dim) {
    for (int k = 0; k < dim; ++k)
        if (a[k] != b[k]) return false;
    return true;
}

}  // namespace

std::vector<std::pair<int, double>> knn(const PointSet& ps, int i, int l) {
    int n = ps.size();
    if (l < 1 || l > n - 1) throw param_error("knn: l out of range");
    std::vector<std::pair<double, int>> cand;
    cand.reserve(n - 1);
    for (int j = 0; j < n; ++j)
        if (j != i) cand.push_back({ps.dist2(i, j), j});
    std::partial_sort(cand.begin(), cand.begin() + l, cand.end());
    std::vector<std::pair<int, double>> out(l);
    for (int k = 0; k < l; ++k) out[k] = {cand[k].second, std::sqrt(cand[k].first)};
    return out;
}

std::vector<int> coordinate_reps(const PointSet& ps) {
    int n = ps.size();
    std::vector<int> rep(n);
    std::unordered_map<uint64_t, std::vector<int>> buckets;
    for (int i = 0; i < n; ++i) {
        auto& bucket = buckets[coord_hash(ps[i], ps.dim())];
        int found = -1;
        for (int r : bucket)
            if (coords_equal(ps[i], ps[r], ps.dim())) {
                found = r;
                break;
            }
        if (found < 0) {
            bucket.push_back(i);
            rep[i] = i;
        } else {
            rep[i] = found;
        }
    }
    return rep;
}

WeightedEdgeList delaunay(const PointSet& ps) {
    if (ps.dim() != 2) throw unsupported_error("delaunay: only dimension 2 supported");
    if (ps.size() < 2) throw param_error("delaunay: need at least 2 points");

    std::vector<int> rep = coordinate_reps(ps);
    std::vector<int> verts;
    for (int i = 0; i < ps.size(); ++i)
        if (rep[i] == i) verts.push_back(i);

    WeightedEdgeList out;
    if (verts.size() < 2) return out;
    Triangulation tri(ps, verts);
    for (auto [i, j] : tri.edges()) out.push_back(Edge(i, j, ps.dist(i, j)));
    return out;
}

int min_circle_interior_count(const PointSet& ps, int p, int q) {
    if (ps.dim() != 2) throw unsupported_error("min_circle_interior_count: dimension 2 only");
    if (p == q) throw param_error("min_circle_interior_count: p == q");
    const double* P = ps[p];
    const double* Q = ps[q];
    if (coords_equal(P, Q, 2)) return 0;  // a shrinking circle through the doubled point

    // Circles through p,q have centers c(t) = m + t*u on the bisector,
    // u = rot90(q - p). Point r is strictly inside c(t) iff t*a_r > b_r with
    // a_r = 2 u.(r-p), b_r = |r|^2 - |p|^2 - 2 m.(r-p). Exact rationals keep
    // the sweep robust on near-cocircular inputs.
    rational px(P[0]), py(P[1]), qx(Q[0]), qy(Q[1]);
    rational ux = -(qy - py), uy = qx - px;
    rational mx = (px + qx) / 2, my = (py + qy) / 2;

    struct Event {
        rational t;
        int dir;  // +1: inside for t > t_r; -1: inside for t < t_r
    };
    std::vector<Event> events;
    long inside_at_minus_inf = 0;
    for (int r = 0; r < ps.size(); ++r) {
        if (r == p || r == q) continue;
        const double* R = ps[r];
        if (coords_equal(R, P, 2) || coords_equal(R, Q, 2)) continue;  // always on the boundary
        rational rx(R[0]), ry(R[1]);
        rational a = 2 * (ux * (rx - px) + uy * (ry - py));
        rational b = (rx * rx + ry * ry) - (px * px + py * py) -
                     2 * (mx * (rx - px) + my * (ry - py));
        if (a == 0) {
            if (b < 0) ++inside_at_minus_inf;  // strictly between p and q: inside every circle
            continue;
        }
        events.push_back({b / a, a > 0 ? 1 : -1});
        if (a < 0) ++inside_at_minus_inf;
    }
    std::sort(events.begin(), events.end(),
              [](const Event& x, const Event& y) { return x.t < y.t; });

    long best = inside_at_minus_inf;
    long running = inside_at_minus_inf;
    size_t i = 0;
    while (i < events.size()) {
        size_t j = i;
        long exits = 0, enters = 0;
        while (j < events.size() && events[j].t == events[i].t) {
            (events[j].dir < 0 ? exits : enters)++;
            ++j;
        }
        best = std::min(best, running - exits);  // the circle through the event points
        running += enters - exits;
        best = std::min(best, running);
        i = j;
    }
    return static_cast<int>(best);
}

namespace {

bool better_pair(double d2, int i, int j, double best_d2, const BccpResult& best) {
    if (d2 != best_d2) return d2 < best_d2;
    if (i != best.i) return i < best.i;
    return j < best.j;
}

BccpResult bccp_brute(const PointSet& ps, const std::vector<int>& a, const std::vector<int>& b,
                      Meter* meter) {
    BccpResult best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i : a)
        for (int j : b) {
            double d2 = ps.dist2(i, j);
            if (meter) meter->count_pair(i, j);
            if (better_pair(d2, i, j, best_d2, best)) {
                best_d2 = d2;
                best = {i, j, std::sqrt(d2)};
            }
        }
    return best;
}

// exact coordinate join: the smallest (i, j) with identical coordinates
std::optional<BccpResult> coincident_pair(const PointSet& ps, const std::vector<int>& a,
                                          const std::vector<int>& b) {
    std::unordered_map<uint64_t, std::vector<int>> amap;
    for (int i : a) amap[coord_hash(ps[i], ps.dim())].push_back(i);
    for (auto& [h, v] : amap) std::sort(v.begin(), v.end());
    BccpResult best;
    for (int j : b) {
        auto it = amap.find(coord_hash(ps[j], ps.dim()));
        if (it == amap.end()) continue;
        for (int i : it->second)
            if (coords_equal(ps[i], ps[j], ps.dim())) {
                if (best.i < 0 || i < best.i || (i == best.i && j < best.j)) best = {i, j, 0.0};
                break;  // sorted: first match is the smallest i
            }
    }
    if (best.i < 0) return std::nullopt;
    return best;
}

BccpResult bccp_delaunay(const PointSet& ps, const std::vector<int>& a, const std::vector<int>& b,
                         Meter* meter) {
    // the closest bichromatic pair appears among Delaunay edges of the union
    std::vector<char> side(ps.size(), 0);
    for (int i : a) side[i] = 1;
    for (int i : b) side[i] = 2;

    std::vector<int> all;
    all.reserve(a.size() + b.size());
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());

    // collapse exact duplicates (same-side only; cross-side duplicates were
    // handled by the coincidence pre-pass) keeping the smallest index
    std::unordered_map<uint64_t, std::vector<int>> seen;
    std::vector<int> verts;
    for (int i : all) {
        auto& bucket = seen[coord_hash(ps[i], ps.dim())];
        bool dup = false;
        for (int r : bucket)
            if (coords_equal(ps[i], ps[r], ps.dim())) {
                dup = true;
                break;
            }
        if (!dup) {
            bucket.push_back(i);
            verts.push_back(i);
        }
    }

    Triangulation tri(ps, verts);
    BccpResult best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (auto [i, j] : tri.edges()) {
        if (side[i] == side[j]) continue;
        int ai = side[i] == 1 ? i : j;
        int bj = side[i] == 1 ? j : i;
        double d2 = ps.dist2(ai, bj);
        if (meter) meter->count_pair(ai, bj);
        if (better_pair(d2, ai, bj, best_d2, best)) {
            best_d2 = d2;
            best = {ai, bj, std::sqrt(d2)};
        }
    }
    return best;
}

// One representative (lowest index) per occupied grid cell of side g.
// idx must be sorted ascending; output preserves that order.
std::vector<int> cell_reps(const PointSet& ps, const std::vector<int>& idx, double g) {
    int d = ps.dim();
    std::unordered_map<uint64_t, std::vector<std::pair<std::vector<int64_t>, int>>> cells;
    std::vector<int> out;
    std::vector<int64_t> cell(d);
    for (int i : idx) {
        uint64_t h = 1469598103934665603ULL;
        for (int k = 0; k < d; ++k) {
            cell[k] = static_cast<int64_t>(std::floor(ps.coord(i, k) / g));
            h = (h ^ static_cast<uint64_t>(cell[k])) * 1099511628211ULL;
        }
        auto& bucket = cells[h];
        bool found = false;
        for (auto& [c, r] : bucket)
            if (c == cell) {
                found = true;
                break;
            }
        if (!found) {
            bucket.push_back({cell, i});
            out.push_back(i);
        }
    }
    return out;
}

BccpResult bccp_approx(const PointSet& ps, std::vector<int> a, std::vector<int> b, double alpha,
                       Meter* meter) {
    int d = ps.dim();
    // Work with half of min(alpha, 1): iterating the grid scale to a fixed
    // point then lands within 1/(1 - alpha') <= 1 + alpha of the optimum.
    double apin = std::min(alpha, 1.0) / 2.0;
    double sqrtd = std::sqrt(static_cast<double>(d));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    BccpResult best = {a[0], b[0], ps.dist(a[0], b[0])};
    if (meter) meter->count_pair(a[0], b[0]);

    for (int round = 0; round < 100 && best.dist > 0; ++round) {
        double g = apin / (2.0 * sqrtd) * best.dist;
        if (!(g > 0)) break;
        std::vector<int> arep = cell_reps(ps, a, g);
        std::vector<int> brep = cell_reps(ps, b, g);

        std::vector<double> bc;
        bc.reserve(brep.size() * d);
        for (int i : brep)
            for (int k = 0; k < d; ++k) bc.push_back(ps.coord(i, k));
        PointSet bset(d, std::move(bc));
        KdTree bt(bset);  // brep ascending, so local tie-break == global

        BccpResult round_best = best;
        double round_d2 = best.dist * best.dist;
        for (int i : arep) {
            auto nn = bt.knn(ps[i], 1);
            int j = brep[nn[0].first];
            double d2 = ps.dist2(i, j);
            if (meter) meter->count_pair(i, j);
            if (better_pair(d2, i, j, round_d2, round_best)) {
                round_d2 = d2;
                round_best = {i, j, std::sqrt(d2)};
            }
        }
        if (round_best.dist >= best.dist) break;  // stable scale: done
        best = round_best;
    }
    return best;
}

}  // namespace

BccpResult bccp(const PointSet& ps, const std::vector<int>& a, const std::vector<int>& b,
                BccpMode mode, double alpha, Meter* meter) {
    if (a.empty() || b.empty()) throw param_error("bccp: empty side");
    if (auto hit = coincident_pair(ps, a, b)) return *hit;
    if (mode == BccpMode::exact || alpha <= 0.0) {
        if (ps.dim() == 2 && a.size() + b.size() >= 16) return bccp_delaunay(ps, a, b, meter);
        return bccp_brute(ps, a, b, meter);
    }
    return bccp_approx(ps, a, b, alpha, meter);
}

}  // namespace dbc
