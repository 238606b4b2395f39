#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dbc/errors.hpp"
#include "dbc/geometry.hpp"
#include "dbc/kdtree.hpp"
#include "oracles.hpp"

using dbc::PointSet;
using dbc::Rng;

TEST_CASE("knn: two points at distance 5") {
    PointSet ps = PointSet::from_xy({{0, 0}, {3, 4}});
    auto r = dbc::knn(ps, 0, 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == 1);
    CHECK(r[0].second == doctest::Approx(5.0));
}

TEST_CASE("knn: collinear points, forced order") {
    PointSet ps = PointSet::from_xy({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    auto r = dbc::knn(ps, 0, 2);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == std::pair{1, 1.0});
    CHECK(r[1] == std::pair{2, 2.0});
}

TEST_CASE("knn: equidistant ties break to the smaller index") {
    PointSet ps = PointSet::from_xy({{0, 0}, {0, 2}, {2, 0}, {-2, 0}});
    auto r = dbc::knn(ps, 0, 2);
    CHECK(r[0].first == 1);
    CHECK(r[1].first == 2);
}

TEST_CASE("knn matches the all-pairs sort oracle; kd-tree agrees") {
    Rng rng(101);
    for (int rep = 0; rep < 10; ++rep) {
        int n = 50;
        PointSet ps = oracle::random_points(rng, n, 2);
        dbc::KdTree tree(ps);
        for (int i = 0; i < n; i += 7) {
            auto got = dbc::knn(ps, i, 3);
            auto want = oracle::knn_bruteforce(ps, i, 3);
            REQUIRE(got == want);
            auto kd = tree.knn_of(i, 3);
            REQUIRE(kd == want);
            for (size_t k = 1; k < got.size(); ++k) CHECK(got[k - 1].second <= got[k].second);
        }
    }
}

TEST_CASE("knn parameter errors") {
    PointSet ps = PointSet::from_xy({{0, 0}, {1, 1}, {2, 2}});
    CHECK_THROWS_AS(dbc::knn(ps, 0, 0), dbc::param_error);
    CHECK_THROWS_AS(dbc::knn(ps, 0, 3), dbc::param_error);
}

TEST_CASE("delaunay: spec examples and errors") {
    SUBCASE("triangle") {
        PointSet ps = PointSet::from_xy({{0, 0}, {4, 0}, {1, 3}});
        CHECK(dbc::delaunay(ps).size() == 3);
    }
    SUBCASE("square: exactly one diagonal") {
        PointSet ps = PointSet::from_xy({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        CHECK(dbc::delaunay(ps).size() == 5);
    }
    SUBCASE("random: oracle equality, weights are lengths") {
        Rng rng(5);
        PointSet ps = oracle::random_points(rng, 30, 2);
        auto edges = dbc::delaunay(ps);
        std::set<std::pair<int, int>> got;
        for (auto& e : edges) {
            got.insert({e.i, e.j});
            CHECK(e.w == doctest::Approx(ps.dist(e.i, e.j)));
        }
        CHECK(got == oracle::delaunay_empty_circle(ps));
        CHECK(static_cast<int>(edges.size()) <= 3 * ps.size() - 6);
    }
    SUBCASE("errors") {
        PointSet p3(3, {0, 0, 0, 1, 1, 1});
        CHECK_THROWS_AS(dbc::delaunay(p3), dbc::unsupported_error);
        PointSet p1 = PointSet::from_xy({{0, 0}});
        CHECK_THROWS_AS(dbc::delaunay(p1), dbc::param_error);
    }
    SUBCASE("duplicates collapse to representatives") {
        PointSet ps = PointSet::from_xy({{0, 0}, {4, 0}, {0, 0}, {1, 3}});
        auto edges = dbc::delaunay(ps);
        CHECK(edges.size() == 3);
        for (auto& e : edges) {
            CHECK(e.i != 2);
            CHECK(e.j != 2);
        }
    }
}

TEST_CASE("min_circle_interior_count: spec examples") {
    SUBCASE("two points alone") {
        PointSet ps = PointSet::from_xy({{0, 0}, {2, 0}});
        CHECK(dbc::min_circle_interior_count(ps, 0, 1) == 0);
    }
    SUBCASE("midpoint is inside every circle through p and q") {
        PointSet ps = PointSet::from_xy({{0, 0}, {2, 0}, {1, 0}});
        CHECK(dbc::min_circle_interior_count(ps, 0, 1) == 1);
    }
    SUBCASE("p == q is a parameter error") {
        PointSet ps = PointSet::from_xy({{0, 0}, {2, 0}});
        CHECK_THROWS_AS(dbc::min_circle_interior_count(ps, 1, 1), dbc::param_error);
    }
    SUBCASE("random pairs match the candidate-circle oracle") {
        Rng rng(77);
        for (int rep = 0; rep < 12; ++rep) {
            PointSet ps = oracle::random_points(rng, 20, 2);
            for (int t = 0; t < 8; ++t) {
                int p = static_cast<int>(rng.next_below(20));
                int q = static_cast<int>(rng.next_below(20));
                if (p == q) continue;
                CHECK(dbc::min_circle_interior_count(ps, p, q) ==
                      oracle::min_circle_count_candidates(ps, p, q));
            }
        }
    }
}

TEST_CASE("min count zero iff Delaunay edge (random instances)") {
    Rng rng(13);
    for (int rep = 0; rep < 8; ++rep) {
        int n = 8 + static_cast<int>(rng.next_below(43));
        PointSet ps = oracle::random_points(rng, n, 2);
        std::set<std::pair<int, int>> dt;
        for (auto& e : dbc::delaunay(ps)) dt.insert({e.i, e.j});
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                bool zero = dbc::min_circle_interior_count(ps, p, q) == 0;
                CHECK(zero == (dt.count({p, q}) > 0));
            }
    }
}

TEST_CASE("bccp: singletons, both modes") {
    PointSet ps = PointSet::from_xy({{0, 0}, {3, 4}});
    auto r1 = dbc::bccp(ps, {0}, {1}, dbc::BccpMode::exact);
    CHECK(r1.i == 0);
    CHECK(r1.j == 1);
    CHECK(r1.dist == doctest::Approx(5.0));
    auto r2 = dbc::bccp(ps, {0}, {1}, dbc::BccpMode::approx, 0.25);
    CHECK(r2.dist == doctest::Approx(5.0));
}

TEST_CASE("bccp exact equals the brute-force oracle (2D Delaunay path)") {
    Rng rng(19);
    for (int rep = 0; rep < 20; ++rep) {
        PointSet ps = oracle::random_points(rng, 40, 2);
        std::vector<int> a, b;
        for (int i = 0; i < 20; ++i) a.push_back(i);
        for (int i = 20; i < 40; ++i) b.push_back(i);
        auto r = dbc::bccp(ps, a, b, dbc::BccpMode::exact);
        CHECK(r.dist == doctest::Approx(oracle::bccp_bruteforce(ps, a, b)).epsilon(1e-12));
    }
}

TEST_CASE("bccp exact in 3D (brute path) and approx contract in 3D") {
    Rng rng(29);
    for (int rep = 0; rep < 15; ++rep) {
        PointSet ps = oracle::random_points(rng, 100, 3);
        std::vector<int> a, b;
        for (int i = 0; i < 50; ++i) a.push_back(i);
        for (int i = 50; i < 100; ++i) b.push_back(i);
        double truth = oracle::bccp_bruteforce(ps, a, b);
        auto ex = dbc::bccp(ps, a, b, dbc::BccpMode::exact);
        CHECK(ex.dist == doctest::Approx(truth).epsilon(1e-12));
        auto ap = dbc::bccp(ps, a, b, dbc::BccpMode::approx, 0.25);
        CHECK(ap.dist >= truth - 1e-12);
        CHECK(ap.dist <= 1.25 * truth * (1 + 1e-12));
        // the reported pair is an actual pair at the reported distance
        CHECK(ap.dist == doctest::Approx(ps.dist(ap.i, ap.j)));
    }
}

TEST_CASE("bccp: approx contract at several alphas, 2D") {
    Rng rng(41);
    for (double alpha : {0.05, 0.5, 2.0}) {
        for (int rep = 0; rep < 10; ++rep) {
            PointSet ps = oracle::random_points(rng, 60, 2);
            std::vector<int> a, b;
            for (int i = 0; i < 30; ++i) a.push_back(i);
            for (int i = 30; i < 60; ++i) b.push_back(i);
            double truth = oracle::bccp_bruteforce(ps, a, b);
            auto ap = dbc::bccp(ps, a, b, dbc::BccpMode::approx, alpha);
            CHECK(ap.dist >= truth - 1e-12);
            CHECK(ap.dist <= (1 + alpha) * truth * (1 + 1e-12));
        }
    }
}

TEST_CASE("bccp: coincident cross pair short-circuits to distance zero") {
    PointSet ps = PointSet::from_xy({{0, 0}, {5, 5}, {9, 9}, {5, 5}});
    auto r = dbc::bccp(ps, {0, 1}, {2, 3}, dbc::BccpMode::approx, 1e-3);
    CHECK(r.i == 1);
    CHECK(r.j == 3);
    CHECK(r.dist == 0.0);
}

TEST_CASE("bccp: empty side is a parameter error") {
    PointSet ps = PointSet::from_xy({{0, 0}, {1, 1}});
    CHECK_THROWS_AS(dbc::bccp(ps, {}, {0}, dbc::BccpMode::exact), dbc::param_error);
}
