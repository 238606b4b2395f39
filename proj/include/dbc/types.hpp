#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dbc/errors.hpp"

namespace dbc {

// Immutable set of d-dimensional points with stable 0-based indices.
// Coordinates are stored flat (point i occupies coords[i*dim .. i*dim+dim)).
// Duplicate coordinates are allowed; indices are the identities.
class PointSet {
public:
    PointSet() = default;

    PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
        if (dim_ < 1) throw param_error("PointSet: dimension must be >= 1");
        if (coords_.size() % static_cast<size_t>(dim_) != 0)
            throw param_error("PointSet: coordinate count not a multiple of dim");
        for (double c : coords_)
            if (!std::isfinite(c)) throw param_error("PointSet: non-finite coordinate");
    }

    static PointSet from_xy(const std::vector<std::pair<double, double>>& pts) {
        std::vector<double> c;
        c.reserve(pts.size() * 2);
        for (auto& [x, y] : pts) {
            c.push_back(x);
            c.push_back(y);
        }
        return PointSet(2, std::move(c));
    }

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(coords_.size() / static_cast<size_t>(dim_ ? dim_ : 1)); }
    bool empty() const { return coords_.empty(); }

    const double* operator[](int i) const { return coords_.data() + static_cast<size_t>(i) * dim_; }
    double coord(int i, int axis) const { return coords_[static_cast<size_t>(i) * dim_ + axis]; }
    double x(int i) const { return coords_[static_cast<size_t>(i) * dim_]; }
    double y(int i) const { return coords_[static_cast<size_t>(i) * dim_ + 1]; }

    double dist2(int i, int j) const {
        const double* a = (*this)[i];
        const double* b = (*this)[j];
        double s = 0;
        for (int k = 0; k < dim_; ++k) {
            double d = a[k] - b[k];
            s += d * d;
        }
        return s;
    }
    double dist(int i, int j) const { return std::sqrt(dist2(i, j)); }

    const std::vector<double>& raw() const { return coords_; }

private:
    int dim_ = 2;
    std::vector<double> coords_;
};

// Undirected weighted edge; stored once with i < j.
struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;

    Edge() = default;
    Edge(int a, int b, double weight = 0.0) : i(a < b ? a : b), j(a < b ? b : a), w(weight) {
        if (a == b) throw param_error("Edge: self loop");
    }
    friend bool operator==(const Edge& a, const Edge& b) { return a.i == b.i && a.j == b.j && a.w == b.w; }
};

using WeightedEdgeList = std::vector<Edge>;

inline double dist2_raw(const double* a, const double* b, int dim) {
    double s = 0;
    for (int k = 0; k < dim; ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

}  // namespace dbc
