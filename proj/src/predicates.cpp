#include "dbc/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

namespace dbc {

namespace {

using rational = boost::multiprecision::cpp_rational;

// Shewchuk-style static filter constants. u = half an ulp of 1.
constexpr double kU = std::numeric_limits<double>::epsilon() / 2.0;
const double kOrientBound = (3.0 + 16.0 * kU) * kU;
const double kIncircleBound = (10.0 + 96.0 * kU) * kU;

int sign_of(const rational& v) {
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

int orient2d_exact(const double* a, const double* b, const double* c) {
    rational ax(a[0]), ay(a[1]), bx(b[0]), by(b[1]), cx(c[0]), cy(c[1]);
    rational det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sign_of(det);
}

int incircle_exact(const double* a, const double* b, const double* c, const double* d) {
    rational adx = rational(a[0]) - rational(d[0]);
    rational ady = rational(a[1]) - rational(d[1]);
    rational bdx = rational(b[0]) - rational(d[0]);
    rational bdy = rational(b[1]) - rational(d[1]);
    rational cdx = rational(c[0]) - rational(d[0]);
    rational cdy = rational(c[1]) - rational(d[1]);

    rational alift = adx * adx + ady * ady;
    rational blift = bdx * bdx + bdy * bdy;
    rational clift = cdx * cdx + cdy * cdy;

    rational det = alift * (bdx * cdy - bdy * cdx) - blift * (adx * cdy - ady * cdx) +
                   clift * (adx * bdy - ady * bdx);
    return sign_of(det);
}

}  // namespace

int orient2d(const double* a, const double* b, const double* c) {
    double detleft = (b[0] - a[0]) * (c[1] - a[1]);
    double detright = (b[1] - a[1]) * (c[0] - a[0]);
    double det = detleft - detright;

    double detsum;
    if (detleft > 0) {
        if (detright <= 0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0) {
        if (detright >= 0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return det > 0 ? 1 : (det < 0 ? -1 : 0);
    }
    if (det >= kOrientBound * detsum || -det >= kOrientBound * detsum)
        return det > 0 ? 1 : -1;
    return orient2d_exact(a, b, c);
}

int incircle(const double* a, const double* b, const double* c, const double* d) {
    double adx = a[0] - d[0], ady = a[1] - d[1];
    double bdx = b[0] - d[0], bdy = b[1] - d[1];
    double cdx = c[0] - d[0], cdy = c[1] - d[1];

    double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    double cdxady = cdx * ady, adxcdy = adx * cdy;
    double adxbdy = adx * bdy, bdxady = bdx * ady;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;

    double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                       (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                       (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
    if (det > kIncircleBound * permanent || -det > kIncircleBound * permanent)
        return det > 0 ? 1 : -1;
    return incircle_exact(a, b, c, d);
}

int incircle_perturbed(const double* a, const double* b, const double* c, const double* d,
                       int ia, int ib, int ic, int id) {
    int s = incircle(a, b, c, d);
    if (s != 0) return s;

    // Lifted heights perturbed by -eps^(i+1). With rows (a,b,c | column h-h_d),
    // d(det)/dh_a = orient(d,b,c), /dh_b = orient(d,c,a), /dh_c = orient(d,a,b),
    // /dh_d = -orient(a,b,c). Dominant term: smallest point index; the term's
    // sign is -coefficient (perturbation is negative).
    struct Term {
        int idx;
        int coeff;
    } terms[4] = {
        {ia, orient2d(d, b, c)},
        {ib, orient2d(d, c, a)},
        {ic, orient2d(d, a, b)},
        {id, -orient2d(a, b, c)},
    };
    // insertion sort by index ascending (4 elements)
    for (int i = 1; i < 4; ++i)
        for (int j = i; j > 0 && terms[j].idx < terms[j - 1].idx; --j) std::swap(terms[j], terms[j - 1]);
    for (const Term& t : terms)
        if (t.coeff != 0) return -t.coeff;
    return 0;  // all four collinear
}

}  // namespace dbc
