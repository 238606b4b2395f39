#include "dbc/triangulation.hpp"

#include <algorithm>
#include <unordered_set>

#include "dbc/errors.hpp"
#include "dbc/predicates.hpp"
#include "dbc/rng.hpp"

namespace dbc {

namespace {

// key for a directed edge between local ids (GHOST = -1 allowed)
inline uint64_t edge_key(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a + 1)) << 32) |
           static_cast<uint32_t>(b + 1);
}

}  // namespace

Triangulation::Triangulation(const PointSet& ps, std::vector<int> vertices) : ps_(&ps) {
    verts_ = std::move(vertices);
    int m = static_cast<int>(verts_.size());
    g2l_.reserve(m * 2);
    for (int i = 0; i < m; ++i) g2l_[verts_[i]] = i;
    if (static_cast<int>(g2l_.size()) != m)
        throw param_error("triangulation: duplicate vertex index");
    present_.assign(m, true);
    present_count_ = m;
    vert2tri_.assign(m, -1);
    std::vector<int> locals(m);
    for (int i = 0; i < m; ++i) locals[i] = i;
    build(locals);
}

int Triangulation::local_of(int gv) const {
    auto it = g2l_.find(gv);
    if (it == g2l_.end()) throw param_error("triangulation: unknown vertex");
    return it->second;
}

int Triangulation::orient_l(int a, int b, int c) const { return orient2d(pt(a), pt(b), pt(c)); }

int Triangulation::incircle_l(int a, int b, int c, int d) const {
    return incircle_perturbed(pt(a), pt(b), pt(c), pt(d), gid(a), gid(b), gid(c), gid(d));
}

bool Triangulation::on_open_segment(int a, int b, int p) const {
    // precondition: a, b, p collinear and distinct
    const double* A = pt(a);
    const double* B = pt(b);
    const double* P = pt(p);
    double d1 = (P[0] - A[0]) * (B[0] - A[0]) + (P[1] - A[1]) * (B[1] - A[1]);
    double d2 = (P[0] - B[0]) * (A[0] - B[0]) + (P[1] - B[1]) * (A[1] - B[1]);
    return d1 > 0 && d2 > 0;
}

bool Triangulation::conflict(int t, int lv) const {
    const Tri& tr = tris_[t];
    int gs = -1;
    for (int k = 0; k < 3; ++k)
        if (tr.v[k] == GHOST) gs = k;
    if (gs < 0) return incircle_l(tr.v[0], tr.v[1], tr.v[2], lv) > 0;
    int x = tr.v[(gs + 1) % 3];
    int y = tr.v[(gs + 2) % 3];
    int o = orient_l(x, y, lv);
    if (o > 0) return true;
    if (o == 0) return on_open_segment(x, y, lv);
    return false;
}

int Triangulation::new_tri(int a, int b, int c) {
    int id;
    if (!free_tris_.empty()) {
        id = free_tris_.back();
        free_tris_.pop_back();
    } else {
        id = static_cast<int>(tris_.size());
        tris_.push_back({});
        mark_.push_back(0);
    }
    Tri& t = tris_[id];
    t.v[0] = a;
    t.v[1] = b;
    t.v[2] = c;
    t.nb[0] = t.nb[1] = t.nb[2] = -1;
    t.alive = true;
    mark_[id] = 0;
    for (int k = 0; k < 3; ++k)
        if (t.v[k] != GHOST) vert2tri_[t.v[k]] = id;
    return id;
}

void Triangulation::kill_tri(int t) {
    tris_[t].alive = false;
    free_tris_.push_back(t);
}

int Triangulation::slot_of(int t, int lv) const {
    for (int k = 0; k < 3; ++k)
        if (tris_[t].v[k] == lv) return k;
    throw internal_error("triangulation: vertex not in triangle");
}

int Triangulation::slot_of_neighbor(int t, int nb) const {
    for (int k = 0; k < 3; ++k)
        if (tris_[t].nb[k] == nb) return k;
    throw internal_error("triangulation: neighbor slot not found");
}

std::pair<int, int> Triangulation::norm_pair(int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void Triangulation::path_sort() {
    std::sort(path_.begin(), path_.end(), [&](int a, int b) {
        const double* A = pt(a);
        const double* B = pt(b);
        if (A[0] != B[0]) return A[0] < B[0];
        if (A[1] != B[1]) return A[1] < B[1];
        return verts_[a] < verts_[b];
    });
}

void Triangulation::build(const std::vector<int>& locals) {
    tris_.clear();
    free_tris_.clear();
    mark_.clear();
    stamp_ = 0;
    hint_ = -1;
    std::fill(vert2tri_.begin(), vert2tri_.end(), -1);
    path_.clear();
    path_mode_ = true;

    int m = static_cast<int>(locals.size());
    if (m < 3) {
        path_ = locals;
        path_sort();
        return;
    }

    // fixed insertion order derived from input size
    std::vector<int> order = locals;
    Rng rng(0x9e3779b97f4a7c15ULL ^ (static_cast<uint64_t>(m) * 0x2545f4914f6cdd1dULL));
    rng.shuffle(order);

    int third = -1;
    for (int k = 2; k < m; ++k)
        if (orient_l(order[0], order[1], order[k]) != 0) {
            third = k;
            break;
        }
    if (third < 0) {  // all collinear
        path_ = locals;
        path_sort();
        return;
    }
    std::swap(order[2], order[third]);
    path_mode_ = false;

    int a = order[0], b = order[1], c = order[2];
    if (orient_l(a, b, c) < 0) std::swap(b, c);
    int t0 = new_tri(a, b, c);
    int g0 = new_tri(b, a, GHOST);
    int g1 = new_tri(c, b, GHOST);
    int g2 = new_tri(a, c, GHOST);

    std::unordered_map<uint64_t, std::pair<int, int>> half;
    for (int t : {t0, g0, g1, g2})
        for (int k = 0; k < 3; ++k) {
            int e1 = tris_[t].v[(k + 1) % 3];
            int e2 = tris_[t].v[(k + 2) % 3];
            auto it = half.find(edge_key(e2, e1));
            if (it != half.end()) {
                tris_[t].nb[k] = it->second.first;
                tris_[it->second.first].nb[it->second.second] = t;
            } else {
                half[edge_key(e1, e2)] = {t, k};
            }
        }
    hint_ = t0;

    for (int k = 3; k < m; ++k) insert_2d(order[k]);
}

void Triangulation::rebuild_from_present() {
    std::vector<int> locals;
    locals.reserve(present_count_);
    for (int i = 0; i < static_cast<int>(present_.size()); ++i)
        if (present_[i]) locals.push_back(i);
    build(locals);
}

int Triangulation::locate_conflict(int lv) const {
    int t = hint_;
    if (t < 0 || !tris_[t].alive) {
        t = -1;
        for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
            if (tris_[i].alive && !ghost_tri(i)) {
                t = i;
                break;
            }
    }
    if (t < 0) throw internal_error("triangulation: no triangle to start walk");
    if (ghost_tri(t)) t = tris_[t].nb[slot_of(t, GHOST)];

    long steps = 0;
    long limit = 4 * static_cast<long>(tris_.size()) + 16;
    while (steps++ <= limit) {
        bool crossed = false;
        for (int kk = 0; kk < 3; ++kk) {
            int k = static_cast<int>((steps + kk) % 3);
            int e1 = tris_[t].v[(k + 1) % 3];
            int e2 = tris_[t].v[(k + 2) % 3];
            if (orient_l(e1, e2, lv) < 0) {
                int t2 = tris_[t].nb[k];
                if (ghost_tri(t2)) {
                    // walked off the hull: scan the ghost ring
                    int r = t2;
                    do {
                        if (conflict(r, lv)) return r;
                        int gs = slot_of(r, GHOST);
                        r = tris_[r].nb[(gs + 1) % 3];
                    } while (r != t2);
                    throw internal_error("triangulation: exterior point sees no hull edge");
                }
                t = t2;
                crossed = true;
                break;
            }
        }
        if (!crossed) return t;  // closed triangle contains the point
    }
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
        if (tris_[i].alive && conflict(i, lv)) return i;
    throw internal_error("triangulation: no conflicting triangle found");
}

bool Triangulation::path_insert_possible(int lv) const {
    if (path_.size() < 2) return true;
    return orient_l(path_.front(), path_.back(), lv) == 0;
}

void Triangulation::insert(int gv) {
    int lv = local_of(gv);
    if (present_[lv]) throw param_error("triangulation: vertex already present");
    present_[lv] = true;
    ++present_count_;
    if (path_mode_) {
        if (path_insert_possible(lv)) {
            path_.push_back(lv);
            path_sort();
        } else {
            rebuild_from_present();
        }
        return;
    }
    insert_2d(lv);
}

void Triangulation::insert_2d(int lv) {
    int seed = locate_conflict(lv);

    stamp_ += 2;
    int in_mark = stamp_, out_mark = stamp_ + 1;
    std::vector<int> cavity{seed};
    mark_[seed] = in_mark;
    struct BoundaryEdge {
        int a, b, outside, oslot;
    };
    std::vector<BoundaryEdge> boundary;
    for (size_t qi = 0; qi < cavity.size(); ++qi) {
        int t = cavity[qi];
        for (int k = 0; k < 3; ++k) {
            int nb = tris_[t].nb[k];
            if (mark_[nb] != in_mark && mark_[nb] != out_mark) {
                if (conflict(nb, lv)) {
                    mark_[nb] = in_mark;
                    cavity.push_back(nb);
                } else {
                    mark_[nb] = out_mark;
                }
            }
            if (mark_[nb] == out_mark)
                boundary.push_back(
                    {tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], nb, slot_of_neighbor(nb, t)});
        }
    }

    // fan new triangles from lv over the cavity boundary
    std::unordered_map<uint64_t, std::pair<int, int>> half;
    int any_new = -1;
    for (const BoundaryEdge& bd : boundary) {
        int t = new_tri(lv, bd.a, bd.b);
        any_new = t;
        tris_[t].nb[0] = bd.outside;
        tris_[bd.outside].nb[bd.oslot] = t;
        for (int k : {1, 2}) {
            int e1 = tris_[t].v[(k + 1) % 3];
            int e2 = tris_[t].v[(k + 2) % 3];
            auto it = half.find(edge_key(e2, e1));
            if (it != half.end()) {
                tris_[t].nb[k] = it->second.first;
                tris_[it->second.first].nb[it->second.second] = t;
                half.erase(it);
            } else {
                half[edge_key(e1, e2)] = {t, k};
            }
        }
    }
    if (!half.empty()) throw internal_error("triangulation: open cavity boundary");
    for (int t : cavity) kill_tri(t);
    hint_ = any_new;
}

std::vector<int> Triangulation::star_of(int lv, std::vector<int>* ring) const {
    int t0 = vert2tri_[lv];
    if (t0 < 0 || !tris_[t0].alive || (tris_[t0].v[0] != lv && tris_[t0].v[1] != lv && tris_[t0].v[2] != lv)) {
        t0 = -1;
        for (int i = 0; i < static_cast<int>(tris_.size()) && t0 < 0; ++i)
            if (tris_[i].alive)
                for (int k = 0; k < 3; ++k)
                    if (tris_[i].v[k] == lv) {
                        t0 = i;
                        break;
                    }
        if (t0 < 0) throw internal_error("triangulation: lost vertex");
    }
    std::vector<int> star;
    if (ring) ring->clear();
    int t = t0;
    do {
        star.push_back(t);
        int s = slot_of(t, lv);
        if (ring) ring->push_back(tris_[t].v[(s + 1) % 3]);
        t = tris_[t].nb[(s + 1) % 3];
    } while (t != t0);
    return star;
}

void Triangulation::remove(int gv) {
    int lv = local_of(gv);
    if (!present_[lv]) throw param_error("triangulation: vertex not present");
    last_fill_.clear();

    if (path_mode_) {
        auto it = std::find(path_.begin(), path_.end(), lv);
        size_t pos = it - path_.begin();
        path_.erase(it);
        if (pos > 0 && pos < path_.size())
            last_fill_.push_back(norm_pair(verts_[path_[pos - 1]], verts_[path_[pos]]));
        present_[lv] = false;
        --present_count_;
        return;
    }

    present_[lv] = false;
    --present_count_;
    if (present_count_ < 3) {
        rebuild_from_present();
        for (auto& e : edges()) last_fill_.push_back(e);
        return;
    }
    remove_2d(lv);

    bool any_finite = false;
    for (int i = 0; i < static_cast<int>(tris_.size()) && !any_finite; ++i)
        if (tris_[i].alive && !ghost_tri(i)) any_finite = true;
    if (!any_finite) {
        rebuild_from_present();
        last_fill_ = edges();
    }
}

void Triangulation::remove_2d(int lv) {
    std::vector<int> ring;
    std::vector<int> star = star_of(lv, &ring);
    int m = static_cast<int>(ring.size());

    // surviving half-edges across every ring edge
    std::vector<std::pair<int, int>> olds;  // (tri, slot)
    for (int i = 0; i < m; ++i) {
        int t = star[i];
        int s = slot_of(t, lv);
        int outside = tris_[t].nb[s];
        olds.push_back({outside, slot_of_neighbor(outside, t)});
    }
    for (int t : star) kill_tri(t);

    // finite chain in ring order (rotate a ghost, if any, out of the way)
    bool hull_case = false;
    std::vector<int> chain;
    int gpos = -1;
    for (int i = 0; i < m; ++i)
        if (ring[i] == GHOST) gpos = i;
    if (gpos >= 0) {
        hull_case = true;
        for (int i = 1; i < m; ++i) chain.push_back(ring[(gpos + i) % m]);
    } else {
        chain = ring;
    }

    // Delaunay of the chain vertices, restricted to the hole side of the
    // chain, is exactly the retriangulation of the hole
    std::vector<int> chain_globals;
    chain_globals.reserve(chain.size());
    for (int c : chain) chain_globals.push_back(verts_[c]);
    Triangulation sub(*ps_, chain_globals);

    int nchain = static_cast<int>(chain.size());
    int nedges = hull_case ? nchain - 1 : nchain;
    std::unordered_set<uint64_t> chain_edges;  // undirected, sub-local ids
    for (int i = 0; i < nedges; ++i) {
        int sa = sub.local_of(verts_[chain[i]]);
        int sb = sub.local_of(verts_[chain[(i + 1) % nchain]]);
        chain_edges.insert(edge_key(sa, sb));
        chain_edges.insert(edge_key(sb, sa));
    }

    std::vector<int> fill_sub;
    std::unordered_set<int> fill_set;
    if (!sub.path_mode()) {
        for (int i = 0; i < nedges; ++i) {
            int sa = sub.local_of(verts_[chain[i]]);
            int sb = sub.local_of(verts_[chain[(i + 1) % nchain]]);
            int seed = sub.tri_left_of(sa, sb);
            if (seed >= 0) {
                if (fill_set.insert(seed).second) fill_sub.push_back(seed);
            } else if (!hull_case) {
                throw internal_error("triangulation: interior hole edge without fill");
            }
        }
        for (size_t qi = 0; qi < fill_sub.size(); ++qi) {
            int t = fill_sub[qi];
            for (int k = 0; k < 3; ++k) {
                int e1 = sub.tris_[t].v[(k + 1) % 3];
                int e2 = sub.tris_[t].v[(k + 2) % 3];
                if (chain_edges.count(edge_key(e1, e2))) continue;
                int nb = sub.tris_[t].nb[k];
                if (sub.ghost_tri(nb)) continue;
                if (fill_set.insert(nb).second) fill_sub.push_back(nb);
            }
        }
    }

    // copy fill triangles into the main pool
    std::unordered_map<int, int> sub2main;
    std::vector<int> new_tris;
    for (int st : fill_sub) {
        int a = local_of(sub.verts_[sub.tris_[st].v[0]]);
        int b = local_of(sub.verts_[sub.tris_[st].v[1]]);
        int c = local_of(sub.verts_[sub.tris_[st].v[2]]);
        int t = new_tri(a, b, c);
        sub2main[st] = t;
        new_tris.push_back(t);
    }
    for (int st : fill_sub) {
        int t = sub2main[st];
        for (int k = 0; k < 3; ++k) {
            auto it = sub2main.find(sub.tris_[st].nb[k]);
            if (it != sub2main.end()) tris_[t].nb[k] = it->second;
        }
    }

    // stitch: match half-edges; leftovers facing the removed region become
    // fresh hull edges and receive ghosts
    std::unordered_map<uint64_t, std::pair<int, int>> half;
    auto offer = [&](int tri, int slot) {
        int e1 = tris_[tri].v[(slot + 1) % 3];
        int e2 = tris_[tri].v[(slot + 2) % 3];
        auto it = half.find(edge_key(e2, e1));
        if (it != half.end()) {
            tris_[tri].nb[slot] = it->second.first;
            tris_[it->second.first].nb[it->second.second] = tri;
            half.erase(it);
        } else {
            half[edge_key(e1, e2)] = {tri, slot};
        }
    };
    for (auto [t, s] : olds) offer(t, s);
    for (int t : new_tris)
        for (int k = 0; k < 3; ++k)
            if (tris_[t].nb[k] < 0) offer(t, k);

    std::vector<std::pair<int, int>> exposed;
    for (auto& [key, ts] : half) {
        int e1 = tris_[ts.first].v[(ts.second + 1) % 3];
        int e2 = tris_[ts.first].v[(ts.second + 2) % 3];
        if (e1 != GHOST && e2 != GHOST) exposed.push_back({e1, e2});
    }
    std::vector<int> new_ghosts;
    new_ghosts.reserve(exposed.size());
    for (auto [a, b] : exposed) new_ghosts.push_back(new_tri(b, a, GHOST));
    for (int g : new_ghosts)
        for (int k = 0; k < 3; ++k) offer(g, k);
    if (!half.empty()) throw internal_error("triangulation: unmatched half-edges after removal");

    hint_ = -1;
    for (int t : new_tris) hint_ = t;
    if (hint_ < 0)
        for (auto [t, s] : olds)
            if (!ghost_tri(t)) hint_ = t;

    for (auto [t, s] : olds)
        for (int k = 0; k < 3; ++k)
            if (tris_[t].v[k] != GHOST) vert2tri_[tris_[t].v[k]] = t;
    for (int t : new_tris)
        for (int k = 0; k < 3; ++k) vert2tri_[tris_[t].v[k]] = t;

    // new edges = edges of the fill triangles
    std::unordered_set<uint64_t> seen;
    for (int t : new_tris)
        for (int k = 0; k < 3; ++k) {
            auto pr = norm_pair(gid(tris_[t].v[(k + 1) % 3]), gid(tris_[t].v[(k + 2) % 3]));
            if (seen.insert(edge_key(pr.first, pr.second)).second) last_fill_.push_back(pr);
        }
}

std::vector<std::pair<int, int>> Triangulation::edges() const {
    std::vector<std::pair<int, int>> out;
    if (path_mode_) {
        for (size_t i = 0; i + 1 < path_.size(); ++i)
            out.push_back(norm_pair(verts_[path_[i]], verts_[path_[i + 1]]));
    } else {
        std::unordered_set<uint64_t> seen;
        for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
            if (!tris_[t].alive || ghost_tri(t)) continue;
            for (int k = 0; k < 3; ++k) {
                auto pr = norm_pair(gid(tris_[t].v[(k + 1) % 3]), gid(tris_[t].v[(k + 2) % 3]));
                if (seen.insert(edge_key(pr.first, pr.second)).second) out.push_back(pr);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Triangulation::neighbors(int gv) const {
    int lv = local_of(gv);
    if (!present_[lv]) throw param_error("triangulation: vertex not present");
    std::vector<int> out;
    if (path_mode_) {
        auto it = std::find(path_.begin(), path_.end(), lv);
        size_t pos = it - path_.begin();
        if (pos > 0) out.push_back(verts_[path_[pos - 1]]);
        if (pos + 1 < path_.size()) out.push_back(verts_[path_[pos + 1]]);
        return out;
    }
    std::vector<int> ring;
    star_of(lv, &ring);
    for (int r : ring)
        if (r != GHOST) out.push_back(verts_[r]);
    return out;
}

int Triangulation::tri_left_of(int a, int b) const {
    std::vector<int> ring;
    std::vector<int> star = star_of(a, &ring);
    for (int t : star) {
        int s = slot_of(t, a);
        if (tris_[t].v[(s + 1) % 3] == b) return ghost_tri(t) ? -1 : t;
    }
    return -1;
}

void Triangulation::check_valid() const {
    if (path_mode_) return;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        if (!tris_[t].alive) continue;
        const Tri& tr = tris_[t];
        for (int k = 0; k < 3; ++k) {
            int nb = tr.nb[k];
            if (nb < 0 || !tris_[nb].alive) throw internal_error("dangling neighbor");
            int e1 = tr.v[(k + 1) % 3], e2 = tr.v[(k + 2) % 3];
            bool found = false;
            for (int k2 = 0; k2 < 3; ++k2)
                if (tris_[nb].nb[k2] == t && tris_[nb].v[(k2 + 1) % 3] == e2 &&
                    tris_[nb].v[(k2 + 2) % 3] == e1)
                    found = true;
            if (!found) throw internal_error("asymmetric adjacency");
        }
        if (!ghost_tri(t)) {
            if (orient_l(tr.v[0], tr.v[1], tr.v[2]) <= 0)
                throw internal_error("non-ccw finite triangle");
            for (int k = 0; k < 3; ++k) {
                int nb = tr.nb[k];
                int opp = -2;
                for (int k2 = 0; k2 < 3; ++k2)
                    if (tris_[nb].nb[k2] == t) opp = tris_[nb].v[k2];
                if (opp != GHOST && incircle_l(tr.v[0], tr.v[1], tr.v[2], opp) > 0)
                    throw internal_error("delaunay property violated");
            }
        }
    }
}

}  // namespace dbc
