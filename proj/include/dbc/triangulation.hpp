#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "dbc/types.hpp"

namespace dbc {

// Planar Delaunay triangulation with vertex deletion and re-insertion.
//
// Vertices are identified by their global PointSet indices; coordinates of
// the supplied vertices must be pairwise distinct (callers deduplicate).
// Cocircular ties are broken by incircle_perturbed, so the triangulation is
// unique for a given vertex set no matter how it was reached. All-collinear
// sets degenerate to a path of consecutive points in sorted order.
//
// The hull is closed with ghost triangles carrying the sentinel vertex -1;
// a ghost (x, y, GHOST) in cyclic order stands for the hull edge y -> x with
// the triangulation interior on its left.
class Triangulation {
public:
    static constexpr int GHOST = -1;

    Triangulation(const PointSet& ps, std::vector<int> vertices);

    int vertex_count() const { return present_count_; }
    bool path_mode() const { return path_mode_; }

    // Current Delaunay edges as global index pairs (i < j), sorted.
    std::vector<std::pair<int, int>> edges() const;

    // Delaunay neighbors of a present vertex (global indices).
    std::vector<int> neighbors(int gv) const;

    void remove(int gv);
    void insert(int gv);  // re-insert a removed vertex

    // Edges created by the last remove() (global pairs, i < j). After a
    // degenerate rebuild this is every edge of the rebuilt triangulation.
    const std::vector<std::pair<int, int>>& last_fill_edges() const { return last_fill_; }

    // Structural + Delaunay-property audit; throws internal_error on breach.
    void check_valid() const;

private:
    struct Tri {
        int v[3];   // local vertex ids, -1 for ghost
        int nb[3];  // nb[k] = triangle across the edge opposite v[k]
        bool alive = false;
    };

    const PointSet* ps_;
    std::vector<int> verts_;  // local -> global
    std::unordered_map<int, int> g2l_;
    std::vector<bool> present_;
    int present_count_ = 0;

    bool path_mode_ = true;
    std::vector<int> path_;  // local ids sorted by (x, y, global) — path mode only

    std::vector<Tri> tris_;
    std::vector<int> free_tris_;
    std::vector<int> vert2tri_;  // some alive incident triangle, -1 unknown
    int hint_ = -1;
    mutable std::vector<int> mark_;  // per-triangle scratch stamps
    mutable int stamp_ = 0;

    std::vector<std::pair<int, int>> last_fill_;

    const double* pt(int lv) const { return (*ps_)[verts_[lv]]; }
    int gid(int lv) const { return lv == GHOST ? -1 : verts_[lv]; }
    int local_of(int gv) const;
    bool ghost_tri(int t) const {
        return tris_[t].v[0] == GHOST || tris_[t].v[1] == GHOST || tris_[t].v[2] == GHOST;
    }

    int orient_l(int a, int b, int c) const;
    int incircle_l(int a, int b, int c, int d) const;
    bool conflict(int t, int lv) const;
    bool on_open_segment(int a, int b, int p) const;

    int new_tri(int a, int b, int c);
    void kill_tri(int t);
    int slot_of(int t, int lv) const;
    int slot_of_neighbor(int t, int nb) const;
    static std::pair<int, int> norm_pair(int a, int b);

    void build(const std::vector<int>& locals);
    void rebuild_from_present();
    bool path_insert_possible(int lv) const;
    void insert_2d(int lv);
    void remove_2d(int lv);
    int locate_conflict(int lv) const;
    std::vector<int> star_of(int lv, std::vector<int>* ring) const;
    int tri_left_of(int a, int b) const;
    void path_sort();
};

}  // namespace dbc
