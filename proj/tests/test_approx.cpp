#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dbc/approx.hpp"
#include "dbc/errors.hpp"
#include "dbc/geometry.hpp"
#include "oracles.hpp"

using dbc::ApproxParams;
using dbc::Labeling;
using dbc::Meter;
using dbc::PointSet;
using dbc::Rng;

namespace {

dbc::Params star_params(double eps, int min_pts = 4) {
    dbc::Params p;
    p.eps = eps;
    p.min_pts = min_pts;
    p.variant = dbc::Variant::dbscan_star;
    return p;
}

// the module's central contract: C_{(1-delta)eps} < C* < C_eps
void check_sandwich(const PointSet& ps, const Labeling& approx, double eps, double delta,
                    int min_pts) {
    Labeling lower = dbc::dbscan_oracle(ps, star_params((1 - delta) * eps, min_pts));
    Labeling upper = dbc::dbscan_oracle(ps, star_params(eps, min_pts));
    REQUIRE(dbc::is_refinement(lower, approx));
    REQUIRE(dbc::is_refinement(approx, upper));
}

}  // namespace

TEST_CASE("ApproxParams: derived values and validation") {
    ApproxParams ap(0.1);
    CHECK(ap.alpha == doctest::Approx(0.1 / 0.9));
    CHECK(ap.theta == doctest::Approx(std::sqrt(0.2)));
    CHECK(std::cos(ap.theta) >= 1 - 0.1);
    CHECK_FALSE(ap.large_theta);
    CHECK(ApproxParams(0.9).large_theta);
    CHECK_THROWS_AS(ApproxParams(0.0), dbc::param_error);
    CHECK_THROWS_AS(ApproxParams(1.0), dbc::param_error);
    CHECK_THROWS_AS(ApproxParams(-0.5), dbc::param_error);
}

TEST_CASE("approx_dbscan_star: tiny delta pinches to the exact clustering") {
    Rng rng(10101);
    for (int rep = 0; rep < 6; ++rep) {
        PointSet ps = oracle::random_points(rng, 200, 2, 0, 25);
        double eps = 0.8 + 2 * rng.next_double();
        Meter meter;
        Labeling approx = dbc::approx_dbscan_star(ps, star_params(eps), ApproxParams(1e-6), meter);
        Labeling exact = dbc::dbscan_oracle(ps, star_params(eps));
        CHECK(approx == exact);
    }
}

TEST_CASE("approx_dbscan_star with exact pairs reproduces exact DBSCAN*") {
    Rng rng(20202);
    for (int rep = 0; rep < 6; ++rep) {
        int dim = 2 + rep % 3;
        PointSet ps = oracle::random_points(rng, 300, dim, 0, 20);
        double eps = dim + rng.next_double() * 2;
        Meter meter;
        Labeling got =
            dbc::approx_dbscan_star(ps, star_params(eps), ApproxParams(0.1), meter, true);
        CHECK(got == dbc::dbscan_oracle(ps, star_params(eps)));
    }
}

TEST_CASE("approx_dbscan_star: gap at the approximation boundary still sandwiches") {
    Rng rng(30303);
    double delta = 0.2, eps = 2.0;
    // two blobs separated by exactly (1 - delta/2) * eps: merge is optional,
    // the refinement sandwich is not
    PointSet ps = oracle::blobs(rng, 30, 2, 0.4, (1 - delta / 2) * eps + 0.8);
    Meter meter;
    Labeling approx = dbc::approx_dbscan_star(ps, star_params(eps), ApproxParams(delta), meter);
    check_sandwich(ps, approx, eps, delta, 4);
}

TEST_CASE("approx_dbscan_star: sandwich across dimensions and deltas") {
    Rng rng(40404);
    for (int dim : {2, 3, 4}) {
        for (double delta : {0.3, 0.1, 0.01}) {
            for (int rep = 0; rep < 3; ++rep) {
                PointSet ps = oracle::random_points(rng, 400, dim, 0, 15);
                double eps = 1.0 + dim * rng.next_double();
                Meter meter;
                Labeling approx =
                    dbc::approx_dbscan_star(ps, star_params(eps), ApproxParams(delta), meter);
                check_sandwich(ps, approx, eps, delta, 4);
            }
        }
    }
}

TEST_CASE("approx_dbscan_star: delta outside (0,1) rejected") {
    PointSet ps = PointSet::from_xy({{0, 0}});
    Meter meter;
    CHECK_THROWS_AS(dbc::approx_dbscan_star(ps, star_params(1.0), ApproxParams(1.5), meter),
                    dbc::param_error);
}

TEST_CASE("theta_edge_set: tiny instance gives the complete graph") {
    // n <= k+1 = 2*min_pts - 2: every cone connects to everything it sees
    PointSet ps = PointSet::from_xy({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto edges = dbc::theta_edge_set(ps, 4, ApproxParams(0.3));
    CHECK(edges.size() == 6);
}

TEST_CASE("theta_edge_set: one point per occupied sector connects to each") {
    ApproxParams ap(0.1);
    int m = static_cast<int>(std::ceil(2 * 3.14159265358979 / ap.theta));
    std::vector<std::pair<double, double>> pts{{0, 0}};
    // drop one far point into every third sector
    for (int c = 0; c < m; c += 3) {
        double a = (c + 0.5) * (2 * 3.14159265358979 / m);
        pts.push_back({std::cos(a), std::sin(a)});
    }
    PointSet ps = PointSet::from_xy(pts);
    auto edges = dbc::theta_edge_set(ps, 2, ap);
    int deg0 = 0;
    for (auto& e : edges)
        if (e.i == 0 || e.j == 0) ++deg0;
    CHECK(deg0 == static_cast<int>(pts.size()) - 1);
}

TEST_CASE("theta_edge_set: size bound and per-cone selection oracle") {
    Rng rng(50505);
    ApproxParams ap(0.1);
    int min_pts = 4, k = 2 * min_pts - 3;
    int m = static_cast<int>(std::ceil(2 * 3.14159265358979 / ap.theta));
    double sector = 2 * 3.14159265358979 / m;
    for (int rep = 0; rep < 4; ++rep) {
        PointSet ps = oracle::random_points(rng, 200, 2, 0, 10);
        auto edges = dbc::theta_edge_set(ps, min_pts, ap);
        CHECK(static_cast<int>(edges.size()) <= ps.size() * k * m);
        std::set<std::pair<int, int>> got;
        for (auto& e : edges) got.insert({e.i, e.j});
        // replay the construction point by point
        for (int p = 0; p < ps.size(); ++p) {
            std::vector<std::vector<std::pair<double, int>>> cones(m);
            for (int q = 0; q < ps.size(); ++q) {
                if (q == p) continue;
                double dx = ps.x(q) - ps.x(p), dy = ps.y(q) - ps.y(p);
                double ang = std::atan2(dy, dx);
                if (ang < 0) ang += 2 * 3.14159265358979;
                int c = std::min(static_cast<int>(ang / sector), m - 1);
                double proj = dx * std::cos((c + 0.5) * sector) + dy * std::sin((c + 0.5) * sector);
                cones[c].push_back({proj, q});
            }
            for (auto& cone : cones) {
                std::sort(cone.begin(), cone.end());
                for (int t = 0; t < std::min<int>(k, cone.size()); ++t) {
                    int q = cone[t].second;
                    REQUIRE(got.count({std::min(p, q), std::max(p, q)}));
                }
            }
        }
    }
}

TEST_CASE("approx_hdbscan: n = 2 merges at the pair's mutual reachability") {
    PointSet ps = PointSet::from_xy({{0, 0}, {3, 4}});
    for (double delta : {0.5, 0.05}) {
        auto dg = dbc::approx_hdbscan(ps, 2, ApproxParams(delta));
        REQUIRE(dg.merges.size() == 1);
        CHECK(dg.merges[0].eps == doctest::Approx(5.0));
    }
}

TEST_CASE("approx_hdbscan: small delta reproduces exact cuts on a tiny instance") {
    Rng rng(60606);
    PointSet ps = oracle::random_points(rng, 40, 2);
    auto exact = dbc::hdbscan(ps, 4);
    auto approx = dbc::approx_hdbscan(ps, 4, ApproxParams(0.001));
    for (int t = 0; t < 25; ++t) {
        double eps = 5 * rng.next_double();
        CHECK(dbc::extract_at(approx, eps, ps, 4) == dbc::extract_at(exact, eps, ps, 4));
    }
}

TEST_CASE("approx_hdbscan: sandwich at every tested eps") {
    Rng rng(70707);
    for (double delta : {0.3, 0.1}) {
        for (int rep = 0; rep < 4; ++rep) {
            PointSet ps = oracle::random_points(rng, 300, 2, 0, 18);
            auto dg = dbc::approx_hdbscan(ps, 4, ApproxParams(delta));
            for (int t = 0; t < 5; ++t) {
                double eps = 0.3 + 3.5 * rng.next_double();
                Labeling cut = dbc::extract_at(dg, eps, ps, 4);
                check_sandwich(ps, cut, eps, delta, 4);
            }
        }
    }
}
