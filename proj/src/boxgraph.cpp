#include "dbc/boxgraph.hpp"

#include <algorithm>
#include <unordered_map>

#include "dbc/errors.hpp"

namespace dbc {

namespace {

void finish(BoxGraph& bg, const PointSet& ps) {
    bg.box_of.assign(ps.size(), -1);
    for (int b = 0; b < bg.size(); ++b)
        for (int i : bg.boxes[b].point_indices) bg.box_of[i] = b;
}

}  // namespace

BoxGraph build_strips(const PointSet& ps, double eps) {
    if (!(eps > 0) || !std::isfinite(eps)) throw param_error("build_strips: eps must be positive");
    if (ps.dim() != 2) throw unsupported_error("build_strips: dimension 2 only");

    BoxGraph bg;
    bg.eps = eps;
    bg.mode = BoxMode::strip;
    int n = ps.size();
    if (n == 0) {
        finish(bg, ps);
        return bg;
    }

    double half = eps / std::sqrt(2.0);

    // strips left to right; a point exactly on the threshold stays
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ps.x(a) != ps.x(b)) return ps.x(a) < ps.x(b);
        if (ps.y(a) != ps.y(b)) return ps.y(a) < ps.y(b);
        return a < b;
    });

    std::vector<std::vector<int>> strips;
    double strip_left = 0;
    for (int i : order) {
        if (strips.empty() || ps.x(i) - strip_left > half) {
            strips.push_back({});
            strip_left = ps.x(i);
        }
        strips.back().push_back(i);
    }

    // within each strip: boxes bottom to top, tight bounding boxes
    std::vector<std::vector<int>> strip_boxes(strips.size());
    for (size_t s = 0; s < strips.size(); ++s) {
        auto& pts = strips[s];
        std::sort(pts.begin(), pts.end(), [&](int a, int b) {
            if (ps.y(a) != ps.y(b)) return ps.y(a) < ps.y(b);
            return a < b;
        });
        double box_bottom = 0;
        for (int i : pts) {
            if (strip_boxes[s].empty() || ps.y(i) - box_bottom > half) {
                Box box;
                box.lo = {ps.x(i), ps.y(i)};
                box.hi = {ps.x(i), ps.y(i)};
                box.point_indices = {i};
                box_bottom = ps.y(i);
                bg.boxes.push_back(std::move(box));
                strip_boxes[s].push_back(bg.size() - 1);
            } else {
                Box& box = bg.boxes[strip_boxes[s].back()];
                box.point_indices.push_back(i);
                box.lo[0] = std::min(box.lo[0], ps.x(i));
                box.hi[0] = std::max(box.hi[0], ps.x(i));
                box.hi[1] = std::max(box.hi[1], ps.y(i));  // sorted by y: lo[1] fixed
            }
        }
    }

    // adjacency: coordinated scan of strips j-2..j+2 (upper side only)
    bg.adj.assign(bg.size(), {});
    double eps2 = eps * eps;
    int m = static_cast<int>(strips.size());
    for (int s = 0; s < m; ++s) {
        for (int s2 = s; s2 <= std::min(s + 2, m - 1); ++s2) {
            size_t start = 0;
            for (int bid : strip_boxes[s]) {
                const Box& b = bg.boxes[bid];
                // boxes in a strip are sorted by their bottom edge
                while (start < strip_boxes[s2].size() &&
                       bg.boxes[strip_boxes[s2][start]].hi[1] < b.lo[1] - eps)
                    ++start;
                for (size_t k = start; k < strip_boxes[s2].size(); ++k) {
                    int cid = strip_boxes[s2][k];
                    const Box& c = bg.boxes[cid];
                    if (c.lo[1] > b.hi[1] + eps) break;
                    if (cid == bid || (s2 == s && cid < bid)) continue;
                    if (b.dist2_to(c) <= eps2) {
                        bg.adj[bid].push_back(cid);
                        bg.adj[cid].push_back(bid);
                    }
                }
            }
        }
    }
    for (auto& v : bg.adj) std::sort(v.begin(), v.end());
    finish(bg, ps);
    return bg;
}

BoxGraph build_grid(const PointSet& ps, double eps) {
    if (!(eps > 0) || !std::isfinite(eps)) throw param_error("build_grid: eps must be positive");
    if (ps.dim() < 2) throw unsupported_error("build_grid: dimension >= 2 required");

    BoxGraph bg;
    bg.eps = eps;
    bg.mode = BoxMode::grid;
    int n = ps.size();
    int d = ps.dim();
    double side = eps / std::sqrt(static_cast<double>(d));

    struct CellRec {
        std::vector<int64_t> key;
        int box = -1;
    };
    std::unordered_map<uint64_t, std::vector<CellRec>> cells;
    auto hash_key = [](const std::vector<int64_t>& key) {
        uint64_t h = 1469598103934665603ULL;
        for (int64_t k : key) h = (h ^ static_cast<uint64_t>(k)) * 1099511628211ULL;
        return h;
    };

    std::vector<std::vector<int64_t>> box_key;
    std::vector<int64_t> key(d);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k)
            key[k] = static_cast<int64_t>(std::floor(ps.coord(i, k) / side));
        auto& bucket = cells[hash_key(key)];
        int box = -1;
        for (auto& rec : bucket)
            if (rec.key == key) {
                box = rec.box;
                break;
            }
        if (box < 0) {
            Box b;
            b.lo.resize(d);
            b.hi.resize(d);
            for (int k = 0; k < d; ++k) {
                b.lo[k] = key[k] * side;
                b.hi[k] = (key[k] + 1) * side;
            }
            bg.boxes.push_back(std::move(b));
            box = bg.size() - 1;
            bucket.push_back({key, box});
            box_key.push_back(key);
        }
        bg.boxes[box].point_indices.push_back(i);
    }

    // neighbor cell offsets with cell-gap distance <= eps, i.e.
    // sum_k max(0, |o_k| - 1)^2 <= d; enumerate once per build
    std::vector<std::vector<int64_t>> offsets;
    {
        int omax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(d)))) + 1;
        std::vector<int64_t> off(d, -omax);
        while (true) {
            long s = 0;
            bool zero = true;
            for (int k = 0; k < d; ++k) {
                long g = std::max<long>(0, std::llabs(off[k]) - 1);
                s += g * g;
                if (off[k] != 0) zero = false;
            }
            if (!zero && s <= d) offsets.push_back(off);
            int k = 0;
            while (k < d && off[k] == omax) off[k++] = -omax;
            if (k == d) break;
            ++off[k];
        }
    }

    bg.adj.assign(bg.size(), {});
    double eps2 = eps * eps;
    std::vector<int64_t> probe(d);
    for (int b = 0; b < bg.size(); ++b) {
        for (auto& off : offsets) {
            for (int k = 0; k < d; ++k) probe[k] = box_key[b][k] + off[k];
            auto it = cells.find(hash_key(probe));
            if (it == cells.end()) continue;
            for (auto& rec : it->second)
                if (rec.key == probe && rec.box > b &&
                    bg.boxes[b].dist2_to(bg.boxes[rec.box]) <= eps2) {
                    bg.adj[b].push_back(rec.box);
                    bg.adj[rec.box].push_back(b);
                }
        }
    }
    for (auto& v : bg.adj) std::sort(v.begin(), v.end());
    finish(bg, ps);
    return bg;
}

}  // namespace dbc
