#include "ellcert/divpoly.hpp"

namespace ellcert {

namespace {

// psi_m = c_m(x) * w^{e_m} with w = 2y + a1 x + a3, w^2 = F(x) the
// two-division polynomial; e_m = 1 for even m, 0 for odd m.
std::vector<IntPoly> psi_factors(const WeierstrassCurve& cu, unsigned top) {
    const ZZ &b2 = cu.b2, &b4 = cu.b4, &b6 = cu.b6, &b8 = cu.b8;
    std::vector<IntPoly> c(std::max(top + 1, 5u));
    c[0] = IntPoly{};
    c[1] = IntPoly::constant(1);
    c[2] = IntPoly::constant(1);
    c[3] = IntPoly({b8, 3 * b6, 3 * b4, b2, ZZ(3)});
    c[4] = IntPoly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6,
                    5 * b4, b2, ZZ(2)});
    IntPoly F = cu.two_division_poly();
    IntPoly F2 = F * F;
    for (unsigned k = 5; k <= top; ++k) {
        unsigned m = k / 2;
        if (k % 2 == 1) {
            // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            IntPoly t1 = c[m + 2] * c[m] * c[m] * c[m];
            IntPoly t2 = c[m - 1] * c[m + 1] * c[m + 1] * c[m + 1];
            c[k] = (m % 2 == 0) ? (F2 * t1 - t2) : (t1 - F2 * t2);
        } else {
            // psi_2 psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
            IntPoly t1 = c[m + 2] * c[m - 1] * c[m - 1];
            IntPoly t2 = c[m - 2] * c[m + 1] * c[m + 1];
            c[k] = c[m] * (t1 - t2);
        }
    }
    return c;
}

}  // namespace

DivPolyPair division_polys(const WeierstrassCurve& curve, unsigned m,
                           unsigned budget) {
    if (m < 1) throw range_error("division_polys: m must be >= 1");
    if (m > budget) throw budget_error("division_polys: m exceeds budget");
    std::vector<IntPoly> c = psi_factors(curve, m + 1);
    IntPoly F = curve.two_division_poly();
    bool even = (m % 2 == 0);
    IntPoly psi_sq = even ? c[m] * c[m] * F : c[m] * c[m];
    // phi_m = x psi_m^2 - psi_{m+1} psi_{m-1}
    IntPoly cross = c[m + 1] * c[m - 1];
    if (!even) cross = cross * F;  // neighbours are even
    IntPoly phi = IntPoly::x() * psi_sq - cross;
    return DivPolyPair{m, std::move(psi_sq), std::move(phi)};
}

std::optional<Point> divide_point(const WeierstrassCurve& curve, const Point& q,
                                  unsigned m, unsigned budget) {
    if (q.infinity || !is_integral(q))
        throw range_error("divide_point: Q must be finite and integral");
    if (m == 1) return q;
    DivPolyPair dp = division_polys(curve, m, budget);
    ZZ alpha = numerator(q.x);
    IntPoly target = dp.phi - dp.psi_sq.scaled(alpha);
    for (const ZZ& x0 : integer_roots(target)) {
        // y solves the monic quadratic y^2 + (a1 x0 + a3) y - rhs = 0
        ZZ lin = curve.a1 * x0 + curve.a3;
        ZZ rhs = x0 * x0 * x0 + curve.a2 * x0 * x0 + curve.a4 * x0 + curve.a6;
        ZZ disc = lin * lin + 4 * rhs, root;
        if (!is_perfect_square(disc, &root)) continue;
        for (int sgn : {1, -1}) {
            ZZ num = -lin + sgn * root;
            if (num % 2 != 0) continue;
            Point cand = Point::affine(QQ(x0), QQ(num / 2));
            if (!on_curve(curve, cand)) continue;
            Point img = scalar_mul(curve, ZZ(m), cand);
            if (!img.infinity && img.x == q.x && img.y == q.y) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace ellcert
