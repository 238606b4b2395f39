#pragma once

namespace dbc {

// Robust planar predicates. Each returns the exact sign (-1, 0, +1) of the
// underlying determinant: fast double evaluation guarded by a static error
// bound, with an exact rational fallback when the filter is inconclusive.

// Sign of det[[bx-ax, by-ay], [cx-ax, cy-ay]]:
// +1 if a,b,c make a left turn (counterclockwise), -1 right turn, 0 collinear.
int orient2d(const double* a, const double* b, const double* c);

// Sign of the in-circle determinant: +1 if d is strictly inside the circle
// through a,b,c (oriented counterclockwise), -1 strictly outside, 0 cocircular.
// For clockwise a,b,c the sign flips.
int incircle(const double* a, const double* b, const double* c, const double* d);

// In-circle with index-based symbolic perturbation: never returns 0 for
// distinct points. Conceptually each point i is lifted to the paraboloid
// with its height lowered by eps^(i+1), eps -> 0+; cocircular ties resolve to
// the dominant (lowest-index) nonzero perturbation term. Degenerate quads
// (all four collinear) still return 0.
int incircle_perturbed(const double* a, const double* b, const double* c, const double* d,
                       int ia, int ib, int ic, int id);

}  // namespace dbc
