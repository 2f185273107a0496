#include "ellcert/curve.hpp"

namespace ellcert {

WeierstrassCurve WeierstrassCurve::from_ai(ZZ a1, ZZ a2, ZZ a3, ZZ a4, ZZ a6,
                                           ModelTag tag) {
    WeierstrassCurve c;
    c.a1 = std::move(a1);
    c.a2 = std::move(a2);
    c.a3 = std::move(a3);
    c.a4 = std::move(a4);
    c.a6 = std::move(a6);
    c.b2 = c.a1 * c.a1 + 4 * c.a2;
    c.b4 = c.a1 * c.a3 + 2 * c.a4;
    c.b6 = c.a3 * c.a3 + 4 * c.a6;
    c.b8 = (c.b2 * c.b6 - c.b4 * c.b4) / 4;
    c.c4 = c.b2 * c.b2 - 24 * c.b4;
    c.c6 = -c.b2 * c.b2 * c.b2 + 36 * c.b2 * c.b4 - 216 * c.b6;
    c.disc = -c.b2 * c.b2 * c.b8 - 8 * c.b4 * c.b4 * c.b4 -
             27 * c.b6 * c.b6 + 9 * c.b2 * c.b4 * c.b6;
    if (c.disc == 0) throw range_error("singular Weierstrass model");
    c.j = QQ(c.c4 * c.c4 * c.c4) / QQ(c.disc);
    c.provenance = tag;
    return c;
}

IntPoly WeierstrassCurve::two_division_poly() const {
    return IntPoly({b6, 2 * b4, b2, ZZ(4)});
}

bool on_curve(const WeierstrassCurve& c, const Point& p) {
    if (p.infinity) return true;
    QQ lhs = p.y * p.y + QQ(c.a1) * p.x * p.y + QQ(c.a3) * p.y;
    QQ rhs = p.x * p.x * p.x + QQ(c.a2) * p.x * p.x + QQ(c.a4) * p.x + QQ(c.a6);
    return lhs == rhs;
}

bool is_integral(const Point& p) {
    if (p.infinity) throw range_error("is_integral: point at infinity");
    return denominator(p.x) == 1 && denominator(p.y) == 1;
}

WeierstrassCurve Transform::apply(const WeierstrassCurve& c, ModelTag tag) const {
    ZZ u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    ZZ na1 = c.a1 + 2 * s;
    ZZ na2 = c.a2 - s * c.a1 + 3 * r - s * s;
    ZZ na3 = c.a3 + r * c.a1 + 2 * t;
    ZZ na4 = c.a4 - s * c.a3 + 2 * r * c.a2 - (t + r * s) * c.a1 + 3 * r * r -
             2 * s * t;
    ZZ na6 = c.a6 + r * c.a4 + r * r * c.a2 + r * r * r - t * c.a3 - t * t -
             r * t * c.a1;
    if (na1 % u != 0 || na2 % u2 != 0 || na3 % u3 != 0 || na4 % u4 != 0 ||
        na6 % u6 != 0)
        throw range_error("transform does not yield an integral model");
    return WeierstrassCurve::from_ai(na1 / u, na2 / u2, na3 / u3, na4 / u4,
                                     na6 / u6, tag);
}

Point Transform::forward(const Point& p) const {
    if (p.infinity) return p;
    QQ u2 = QQ(u * u), u3 = QQ(u * u * u);
    QQ nx = (p.x - QQ(r)) / u2;
    QQ ny = (p.y - QQ(s) * (p.x - QQ(r)) - QQ(t)) / u3;
    return Point::affine(nx, ny);
}

Point Transform::backward(const Point& p) const {
    if (p.infinity) return p;
    QQ u2 = QQ(u * u), u3 = QQ(u * u * u);
    QQ nx = u2 * p.x + QQ(r);
    QQ ny = u3 * p.y + QQ(s) * u2 * p.x + QQ(t);
    return Point::affine(nx, ny);
}

WeierstrassCurve make_curve(const CurveParams& params) {
    if (params.n < 1) throw range_error("make_curve: n must be positive");
    if (params.t == 0) throw range_error("make_curve: t must be nonzero");
    ZZ n2 = params.n * params.n;
    return WeierstrassCurve::from_ai(ZZ(0), params.t, ZZ(0),
                                     -n2 * (params.t + 3 * n2),
                                     n2 * n2 * n2, ModelTag::E);
}

std::pair<WeierstrassCurve, Transform> minimal_model(const CurveParams& params) {
    WeierstrassCurve e = make_curve(params);
    if (params.n % 4 == 0 && mod(params.t, ZZ(4)) == 1) {
        Transform tr{ZZ(2), ZZ(0), ZZ(1), ZZ(0)};
        return {tr.apply(e, ModelTag::Eprime), tr};
    }
    return {e, Transform{}};
}

CubicRootData cubic_roots(const WeierstrassCurve& curve, unsigned precision) {
    IntPoly f = curve.two_division_poly();
    QQ rel = QQ(1) / pow(ZZ(2), precision / 2);
    std::vector<QInterval> roots = isolate_real_roots(f, rel);
    if (roots.size() != 3)
        throw range_error("cubic_roots: model does not have three real roots");
    CubicRootData data;
    QQ shift = QQ(curve.b2) / 12;
    for (int i = 0; i < 3; ++i) {
        data.alpha[i] = roots[i];
        data.e[i] = {roots[i].lo + shift, roots[i].hi + shift};
    }
    return data;
}

ComponentTag component_of(const WeierstrassCurve& curve, const Point& p,
                          const CubicRootData& roots) {
    if (p.infinity) return ComponentTag::IdentityComponent;
    // Finite real points satisfy F(x) >= 0, so x <= alpha2 or x >= alpha3;
    // the egg is exactly x < alpha3 (boundary alpha3 is on the identity
    // component).
    const QInterval& a3 = roots.alpha[2];
    if (p.x < QQ(a3.lo)) return ComponentTag::Egg;
    if (p.x >= QQ(a3.lo) && p.x <= QQ(a3.hi)) {
        // inside the enclosure: either x is alpha3 itself (2-torsion) or the
        // enclosure is too wide for this point
        if (curve.two_division_poly().eval(p.x) == 0)
            return ComponentTag::IdentityComponent;
        throw range_error("component_of: root enclosure too wide");
    }
    return ComponentTag::IdentityComponent;
}

ComponentTag component_of(const WeierstrassCurve& curve, const Point& p) {
    return component_of(curve, p, cubic_roots(curve, 64));
}

}  // namespace ellcert
