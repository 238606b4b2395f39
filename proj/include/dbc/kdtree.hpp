#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "dbc/types.hpp"

namespace dbc {

// Static kd-tree over a PointSet. Queries are exact; distance ties are broken
// by ascending point index so results are deterministic.
class KdTree {
public:
    explicit KdTree(const PointSet& ps) : ps_(&ps) {
        int n = ps.size();
        idx_.resize(n);
        for (int i = 0; i < n; ++i) idx_[i] = i;
        if (n > 0) root_ = build(0, n, 0);
    }

    // The l nearest points to point i (excluding i), ascending by (dist, index).
    std::vector<std::pair<int, double>> knn_of(int i, int l) const {
        return knn((*ps_)[i], l, i);
    }

    // The l nearest points to raw query q, ascending by (dist, index).
    std::vector<std::pair<int, double>> knn(const double* q, int l, int exclude = -1) const {
        Heap heap;
        if (root_ >= 0) search(root_, q, l, exclude, heap);
        std::vector<std::pair<int, double>> out(heap.size());
        for (size_t k = out.size(); k-- > 0;) {
            out[k] = {heap.top().second, std::sqrt(heap.top().first)};
            heap.pop();
        }
        return out;
    }

private:
    struct Node {
        int axis = 0;
        double split = 0;
        int begin = 0, end = 0;  // leaf range into idx_
        int left = -1, right = -1;
    };
    // max-heap of (dist2, index): worst candidate on top
    using Heap = std::priority_queue<std::pair<double, int>>;

    static constexpr int kLeafSize = 16;

    int build(int begin, int end, int depth) {
        Node nd;
        if (end - begin <= kLeafSize) {
            nd.begin = begin;
            nd.end = end;
            nodes_.push_back(nd);
            return static_cast<int>(nodes_.size()) - 1;
        }
        int axis = widest_axis(begin, end);
        int mid = (begin + end) / 2;
        std::nth_element(idx_.begin() + begin, idx_.begin() + mid, idx_.begin() + end,
                         [&](int a, int b) {
                             double ca = ps_->coord(a, axis), cb = ps_->coord(b, axis);
                             return ca < cb || (ca == cb && a < b);
                         });
        nd.axis = axis;
        nd.split = ps_->coord(idx_[mid], axis);
        int self = static_cast<int>(nodes_.size());
        nodes_.push_back(nd);
        int left = build(begin, mid, depth + 1);
        int right = build(mid, end, depth + 1);
        nodes_[self].left = left;
        nodes_[self].right = right;
        return self;
    }

    int widest_axis(int begin, int end) const {
        int d = ps_->dim();
        int best = 0;
        double best_w = -1;
        for (int a = 0; a < d; ++a) {
            double lo = ps_->coord(idx_[begin], a), hi = lo;
            for (int k = begin + 1; k < end; ++k) {
                double c = ps_->coord(idx_[k], a);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            if (hi - lo > best_w) {
                best_w = hi - lo;
                best = a;
            }
        }
        return best;
    }

    void consider(int p, const double* q, int l, Heap& heap) const {
        double d2 = dist2_raw((*ps_)[p], q, ps_->dim());
        if (static_cast<int>(heap.size()) < l) {
            heap.push({d2, p});
        } else if (d2 < heap.top().first || (d2 == heap.top().first && p < heap.top().second)) {
            heap.pop();
            heap.push({d2, p});
        }
    }

    void search(int node, const double* q, int l, int exclude, Heap& heap) const {
        const Node& nd = nodes_[node];
        if (nd.left < 0) {
            for (int k = nd.begin; k < nd.end; ++k)
                if (idx_[k] != exclude) consider(idx_[k], q, l, heap);
            return;
        }
        double diff = q[nd.axis] - nd.split;
        int near = diff < 0 ? nd.left : nd.right;
        int far = diff < 0 ? nd.right : nd.left;
        search(near, q, l, exclude, heap);
        // descend far side unless strictly farther than the current worst
        if (static_cast<int>(heap.size()) < l || diff * diff <= heap.top().first)
            search(far, q, l, exclude, heap);
    }

    const PointSet* ps_;
    std::vector<int> idx_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace dbc
