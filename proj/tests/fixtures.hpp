// Exact reference fixtures shared by the unit and acceptance suites: the
// closed-form balance coefficients and parameter-curve relations.
#pragma once

#include <vector>

#include "ym/poly.hpp"

namespace ym::fixtures {

inline Poly V(const char* n, int e = 1) { return Poly::var(n, e); }
inline Scalar Q(long n, long d = 1) { return Scalar(Rational(n, d)); }

// Raw tau-series coefficients (tau^2 = t) of the 4d balance, stages 0..8.
inline std::vector<std::vector<Poly>> balance4(const Scalar& eps) {
    Poly u = V("u"), v = V("v"), w = V("w"), a = V("a");
    const Scalar es2 = eps * Scalar::sqrt2();

    Poly bracket8 = Q(41, 32) * u.pow(8) - a * u.pow(4) + Q(3, 2) * (u.pow(3) * v) +
                    Q(1, 6) * (a * a) - (es2 * Q(3, 2)) * w;
    Poly bracket6 = Q(-11, 16) * u.pow(5) + Q(1, 3) * (a * u) + v;

    std::vector<std::vector<Poly>> c(4);
    for (auto& col : c) col.assign(9, Poly());

    c[0][0] = u;
    c[0][2] = Q(-1, 2) * u.pow(3);
    c[0][4] = v;
    c[0][6] = u * u * bracket6;
    c[0][8] = Q(1, 4) * u * bracket8;

    const Scalar pre2 = es2 * Q(1, 4);
    c[1][0] = Poly(pre2);
    c[1][2] = pre2 * (u * u);
    c[1][4] = (pre2 * Q(1, 3)) * (2 * a - 3 * u.pow(4));
    c[1][6] = (pre2 * Q(1, 8)) * (u * (24 * v - u.pow(5)));
    c[1][8] = w;

    c[2][0] = Q(-1, 2) * u;
    c[2][2] = Q(-1, 4) * u.pow(3);
    c[2][4] = Q(3, 2) * v;
    c[2][6] = Q(5, 2) * (u * u) * bracket6;
    c[2][8] = Q(7, 8) * u * bracket8;

    c[3][0] = Poly(-pre2);
    c[3][4] = (pre2 * Q(1, 3)) * (2 * a - 3 * u.pow(4));
    c[3][6] = (pre2 * Q(1, 4)) * (u * (24 * v - u.pow(5)));
    c[3][8] = 3 * w;
    return c;
}

// Raw tau-series coefficients of the 5d balance (a series in t: only even
// tau stages appear), stages 0..8.
inline std::vector<std::vector<Poly>> balance5(const Scalar& eps) {
    Poly al = V("alpha"), be = V("beta"), ga = V("gamma"), th = V("theta"), a = V("a");
    const Scalar es2 = eps * Scalar::sqrt2();
    const Scalar pre2 = es2 * Q(1, 4);

    std::vector<std::vector<Poly>> c(5);
    for (auto& col : c) col.assign(9, Poly());

    Poly cubic = 3 * be - 9 * al.pow(3) + 4 * (a * al);

    c[0][0] = al;
    c[0][2] = -(al * al);
    c[0][4] = be;
    c[0][6] = Q(1, 6) * (al * cubic);
    c[0][8] = ga;

    c[1][0] = Poly(pre2);
    c[1][2] = pre2 * al;
    c[1][4] = (pre2 * Q(1, 3)) * (-3 * (al * al) + 2 * a);
    c[1][6] = (pre2 * Q(1, 2)) * (3 * be - al.pow(3));
    c[1][8] = th;

    c[2][0] = Poly(-pre2);
    c[2][4] = (pre2 * Q(1, 3)) * (-3 * (al * al) + 2 * a);
    c[2][6] = pre2 * (3 * be - al.pow(3));
    c[2][8] = 3 * th;

    c[3][0] = Q(-1, 2) * al;
    c[3][4] = Q(1, 2) * be;
    c[3][6] = Q(1, 6) * (al * cubic);
    c[3][8] = Q(3, 2) * ga;

    c[4][0] = Q(-1, 3) * (a * al) + al.pow(3) - be;
    c[4][2] = 3 * al.pow(4) - a * al * al - 3 * (al * be);
    c[4][4] = (Scalar(4) * es2) * (al * th) + 2 * ga + Q(8, 3) * (a * al.pow(3)) -
              Q(1, 3) * (a * be) - al * al * be - 3 * al.pow(5) - Q(4, 9) * (a * a * al);
    return c;
}

// The z5 reference stops at t^2; its t^3 and t^4 coefficients are computed
// but have no closed-form value to compare against.
inline bool balance5_has_reference(size_t comp, size_t stage) {
    return !(comp == 4 && stage > 4);
}

// 2v^2 + (1/6)(15u^4 - 8a)uv - (39/32)u^10 + (7/6)a u^6 + (2/9)(a^2+9b1)u^2 - eps sqrt2 b2
inline Poly curve4(const Scalar& eps) {
    Poly u = V("u"), v = V("v"), a = V("a"), b1 = V("b1"), b2 = V("b2");
    return 2 * (v * v) + Q(5, 2) * (u.pow(5) * v) - Q(4, 3) * (a * u * v) - Q(39, 32) * u.pow(10) +
           Q(7, 6) * (a * u.pow(6)) + Q(2, 9) * (a * a * u * u) + 2 * (b1 * u * u) -
           (eps * Scalar::sqrt2()) * b2;
}

// beta^2 + (2/3)(3 alpha^2 - 2a) alpha beta - 3 alpha^6 + (8/3) a alpha^4
//   + (4/9)(a^2 + 9 c1) alpha^2 - 2 eps sqrt2 c2 alpha + c3
inline Poly curve5(const Scalar& eps) {
    Poly al = V("alpha"), be = V("beta"), a = V("a"), c1 = V("c1"), c2 = V("c2"), c3 = V("c3");
    return be * be + 2 * (al.pow(3) * be) - Q(4, 3) * (a * al * be) - 3 * al.pow(6) +
           Q(8, 3) * (a * al.pow(4)) + Q(4, 9) * (a * a * al * al) + 4 * (c1 * al * al) -
           (Scalar(2) * eps * Scalar::sqrt2()) * (c2 * al) + c3;
}

// 2w^2 + (1/6)(15z^2 - 8a)zw + z(-(39/32)z^5 + (7/6)az^3 + (2/9)(a^2+9b1)z - eps sqrt2 b2)
inline Poly gamma_curve(const Scalar& eps) {
    Poly z = V("z"), w = V("w"), a = V("a"), b1 = V("b1"), b2 = V("b2");
    return 2 * (w * w) + Q(5, 2) * (z.pow(3) * w) - Q(4, 3) * (a * z * w) - Q(39, 32) * z.pow(6) +
           Q(7, 6) * (a * z.pow(4)) + Q(2, 9) * (a * a * z * z) + 2 * (b1 * z * z) -
           (eps * Scalar::sqrt2()) * (b2 * z);
}

} // namespace ym::fixtures
