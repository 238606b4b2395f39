#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dbc/geometry.hpp"
#include "dbc/triangulation.hpp"
#include "oracles.hpp"

using dbc::PointSet;
using dbc::Rng;
using dbc::Triangulation;

namespace {

std::vector<int> all_indices(const PointSet& ps) {
    std::vector<int> v(ps.size());
    for (int i = 0; i < ps.size(); ++i) v[i] = i;
    return v;
}

std::set<std::pair<int, int>> edge_set(const Triangulation& t) {
    auto e = t.edges();
    return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("triangle: all three pairs are edges") {
    PointSet ps = PointSet::from_xy({{0, 0}, {4, 0}, {1, 3}});
    Triangulation t(ps, all_indices(ps));
    CHECK(edge_set(t) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("square: four sides plus exactly one diagonal, fixed by the tie rule") {
    PointSet ps = PointSet::from_xy({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    Triangulation t(ps, all_indices(ps));
    auto edges = edge_set(t);
    CHECK(edges.size() == 5);
    CHECK(edges.count({0, 1}));
    CHECK(edges.count({1, 2}));
    CHECK(edges.count({2, 3}));
    CHECK(edges.count({0, 3}));
    int diagonals = static_cast<int>(edges.count({0, 2})) + static_cast<int>(edges.count({1, 3}));
    CHECK(diagonals == 1);
    t.check_valid();
}

TEST_CASE("square tie rule is stable under relabeling") {
    // rotating the labels must still give exactly one diagonal
    std::vector<std::pair<double, double>> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int shift = 0; shift < 4; ++shift) {
        std::vector<std::pair<double, double>> rot;
        for (int i = 0; i < 4; ++i) rot.push_back(corners[(i + shift) % 4]);
        PointSet ps = PointSet::from_xy(rot);
        Triangulation t(ps, all_indices(ps));
        CHECK(edge_set(t).size() == 5);
        t.check_valid();
    }
}

TEST_CASE("collinear input degenerates to the sorted path") {
    PointSet ps = PointSet::from_xy({{3, 3}, {0, 0}, {2, 2}, {1, 1}});
    Triangulation t(ps, all_indices(ps));
    CHECK(t.path_mode());
    CHECK(edge_set(t) == std::set<std::pair<int, int>>{{1, 3}, {2, 3}, {0, 2}});
}

TEST_CASE("random instances match the empty-circle oracle") {
    Rng rng(7);
    for (int rep = 0; rep < 60; ++rep) {
        int n = 3 + static_cast<int>(rng.next_below(38));
        PointSet ps = oracle::random_points(rng, n, 2);
        Triangulation t(ps, all_indices(ps));
        t.check_valid();
        auto got = edge_set(t);
        auto want = oracle::delaunay_empty_circle(ps);
        REQUIRE(got == want);
        CHECK(static_cast<int>(got.size()) <= 3 * n - 6);
    }
}

TEST_CASE("degenerate fixtures build valid triangulations") {
    Rng rng(11);
    SUBCASE("integer lattice") {
        PointSet ps = oracle::lattice(9);
        Triangulation t(ps, all_indices(ps));
        t.check_valid();
        CHECK(static_cast<int>(t.edges().size()) <= 3 * ps.size() - 6);
    }
    SUBCASE("cocircular ring") {
        PointSet ps = oracle::cocircular(rng, 24, 0);
        Triangulation t(ps, all_indices(ps));
        t.check_valid();
        // triangulating a convex polygon: exactly 2n-3 edges
        CHECK(static_cast<int>(t.edges().size()) == 2 * ps.size() - 3);
    }
    SUBCASE("cocircular ring with interior points") {
        PointSet ps = oracle::cocircular(rng, 16, 10);
        Triangulation t(ps, all_indices(ps));
        t.check_valid();
    }
}

TEST_CASE("removal leaves the Delaunay triangulation of the remaining points") {
    Rng rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        int n = 4 + static_cast<int>(rng.next_below(30));
        PointSet ps = rep % 3 == 0 ? oracle::lattice(3 + rep % 4)
                                   : oracle::random_points(rng, n, 2);
        n = ps.size();
        Triangulation t(ps, all_indices(ps));
        std::vector<int> removed;
        std::vector<int> alive = all_indices(ps);
        for (int round = 0; round < 3 && static_cast<int>(alive.size()) > 3; ++round) {
            int pick = alive[rng.next_below(alive.size())];
            alive.erase(std::find(alive.begin(), alive.end(), pick));
            t.remove(pick);
            t.check_valid();
            Triangulation fresh(ps, alive);
            REQUIRE(t.edges() == fresh.edges());
            // fill edges must all be present edges
            auto now = edge_set(t);
            for (auto& e : t.last_fill_edges()) REQUIRE(now.count(e));
        }
    }
}

TEST_CASE("remove then insert restores the triangulation exactly") {
    Rng rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        int n = 5 + static_cast<int>(rng.next_below(40));
        PointSet ps = rep % 4 == 0 ? oracle::cocircular(rng, 12, n - 12 > 0 ? n - 12 : 0)
                                   : oracle::random_points(rng, n, 2);
        Triangulation t(ps, all_indices(ps));
        auto before = t.edges();
        for (int round = 0; round < 5; ++round) {
            int pick = static_cast<int>(rng.next_below(ps.size()));
            t.remove(pick);
            t.insert(pick);
        }
        t.check_valid();
        REQUIRE(t.edges() == before);
    }
}

TEST_CASE("removal down to degenerate configurations") {
    // removing the apex of a near-degenerate set collapses to a path
    PointSet ps = PointSet::from_xy({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1.5, 2}});
    Triangulation t(ps, all_indices(ps));
    CHECK_FALSE(t.path_mode());
    t.remove(4);
    CHECK(t.path_mode());
    CHECK(edge_set(t) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    t.insert(4);
    CHECK_FALSE(t.path_mode());
    t.check_valid();
    CHECK(edge_set(t).count({0, 4}));
}

TEST_CASE("hull vertex removal on a convex polygon") {
    Rng rng(47);
    PointSet ps = oracle::cocircular(rng, 10, 0);
    Triangulation t(ps, all_indices(ps));
    for (int v : {0, 3, 7}) {
        std::vector<int> alive;
        for (int i = 0; i < ps.size(); ++i) alive.push_back(i);
        t.remove(v);
        t.check_valid();
        alive.erase(std::find(alive.begin(), alive.end(), v));
        Triangulation fresh(ps, alive);
        REQUIRE(t.edges() == fresh.edges());
        t.insert(v);
        t.check_valid();
    }
}
