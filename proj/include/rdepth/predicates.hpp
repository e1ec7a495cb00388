#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rdepth::exact {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a, av = x - bv;
    y = (a - av) + (b - bv);
}

inline double two_diff_tail(double a, double b, double x) {
    const double bv = a - x, av = x + bv;
    return (a - av) + (bv - b);
}

// Exact sign of a*b - c*d from error-free products; false when a product may have underflowed.
inline bool product_difference_sign(double a, double b, double c, double d, int& sign) {
    const double p = a * b, q = c * d;
    constexpr double tiny = 1e-280;
    if ((p != 0.0 && std::abs(p) < tiny) || (q != 0.0 && std::abs(q) < tiny)) return false;
    const double pe = std::fma(a, b, -p), qe = std::fma(c, d, -q);
    // (p + pe) - (q + qe) as a nonoverlapping four-term expansion; its largest nonzero term has the sign.
    double i, x0, j, k, x1, x2, x3;
    two_sum(pe, -qe, i, x0);
    two_sum(p, i, j, k);
    two_sum(k, -q, i, x1);
    two_sum(j, i, x3, x2);
    for (double t : {x3, x2, x1, x0})
        if (t != 0.0) return sign = (t > 0) - (t < 0), true;
    sign = 0;
    return true;
}

}  // namespace detail

// Sign of (ax-cx)(by-cy) - (ay-cy)(bx-cx): +1 when a, b, c turn counter-clockwise.
// Floating filter with Shewchuk's first-stage bound, then an error-free stage when the
// coordinate differences are exact, and a rational fallback otherwise.
inline int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
    const double adx = ax - cx, bdy = by - cy, ady = ay - cy, bdx = bx - cx;
    const double l = adx * bdy;
    const double r = ady * bdx;
    const double det = l - r;
    constexpr double eps = std::numeric_limits<double>::epsilon() * 0.5;
    const double bound = (3.0 + 16.0 * eps) * eps * (std::abs(l) + std::abs(r));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    if (std::isfinite(det) && detail::two_diff_tail(ax, cx, adx) == 0.0 && detail::two_diff_tail(by, cy, bdy) == 0.0 &&
        detail::two_diff_tail(ay, cy, ady) == 0.0 && detail::two_diff_tail(bx, cx, bdx) == 0.0) {
        int s = 0;
        if (detail::product_difference_sign(adx, bdy, ady, bdx, s)) return s;
    }
    const Rational e = (Rational(ax) - Rational(cx)) * (Rational(by) - Rational(cy)) -
                       (Rational(ay) - Rational(cy)) * (Rational(bx) - Rational(cx));
    return e.sign();
}

// Residual sign of point k against the line through i and j (x_i != x_j).
inline int line_residual_sign(double xi, double yi, double xj, double yj, double xk, double yk) {
    // orient(i, j, k) = (x_j - x_i) * r_k up to the pivot choice.
    const int o = orient2d(xj, yj, xk, yk, xi, yi);
    const int sx = (xj > xi) - (xj < xi);
    return o * sx;
}

// Sign of det(M) for a small dense matrix given row-major, via rational elimination.
inline int det_sign(std::span<const double> m, std::size_t k) {
    std::vector<Rational> a(m.begin(), m.end());
    int sgn = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv * k + c] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
            sgn = -sgn;
        }
        for (std::size_t r = c + 1; r < k; ++r) {
            if (a[r * k + c] == 0) continue;
            const Rational f = a[r * k + c] / a[c * k + c];
            for (std::size_t j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
        }
        sgn *= a[c * k + c].sign();
    }
    return sgn;
}

// Exact residual sign of (wk, yk) against the hyperplane interpolating the p rows of (W, ys).
// Uses det([W ys; wk yk]) = det(W) * r_k.  Returns 2 if W is singular.
inline int hyperplane_residual_sign(std::span<const double> W, std::span<const double> ys,
                                    std::span<const double> wk, double yk) {
    const std::size_t p = ys.size();
    std::vector<double> m((p + 1) * (p + 1));
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) m[r * (p + 1) + c] = W[r * p + c];
        m[r * (p + 1) + p] = ys[r];
    }
    for (std::size_t c = 0; c < p; ++c) m[p * (p + 1) + c] = wk[c];
    m[p * (p + 1) + p] = yk;
    const int dw = det_sign(W, p);
    if (dw == 0) return 2;
    return det_sign(m, p + 1) * dw;
}

}  // namespace rdepth::exact
