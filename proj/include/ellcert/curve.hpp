#ifndef ELLCERT_CURVE_HPP
#define ELLCERT_CURVE_HPP

#include <array>

#include "ellcert/poly.hpp"

namespace ellcert {

/// The family parameters (n, t) with delta = t^2 + 3n^2 t + 9n^4.
struct CurveParams {
    ZZ n;
    ZZ t;
    ZZ delta() const { return t * t + 3 * n * n * t + 9 * n * n * n * n; }
};

enum class ModelTag { E, Eprime };

/// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with the standard derived invariants.
struct WeierstrassCurve {
    ZZ a1, a2, a3, a4, a6;
    ZZ b2, b4, b6, b8, c4, c6, disc;
    QQ j;
    ModelTag provenance = ModelTag::E;

    static WeierstrassCurve from_ai(ZZ a1, ZZ a2, ZZ a3, ZZ a4, ZZ a6,
                                    ModelTag tag = ModelTag::E);

    /// 4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2, the two-division
    /// polynomial; its roots are the alpha_i used for components and periods.
    IntPoly two_division_poly() const;
};

struct Point {
    bool infinity = true;
    QQ x, y;

    static Point at_infinity() { return {}; }
    static Point affine(QQ x, QQ y) { return {false, std::move(x), std::move(y)}; }
};

bool on_curve(const WeierstrassCurve& c, const Point& p);
bool is_integral(const Point& p);

/// Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t between a
/// model and its transformed model (primes on the target).
struct Transform {
    ZZ u{1}, r{0}, s{0}, t{0};

    WeierstrassCurve apply(const WeierstrassCurve& c,
                           ModelTag tag = ModelTag::E) const;
    Point forward(const Point& p) const;   // source -> target coordinates
    Point backward(const Point& p) const;  // target -> source coordinates
    bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
};

/// Model E of the family: a2 = t, a4 = -n^2(t+3n^2), a6 = n^6.
WeierstrassCurve make_curve(const CurveParams& params);

/// The minimal Weierstrass model together with the point map from model E.
/// For 4 | n and t = 1 mod 4 this is the u=2 index-2 rescaling E'; otherwise
/// model E itself with the identity map.
std::pair<WeierstrassCurve, Transform> minimal_model(const CurveParams& params);

struct CubicRootData {
    std::array<QInterval, 3> alpha;  // roots of the 2-division cubic, increasing
    std::array<QInterval, 3> e;      // alpha_i + b2/12
};

/// Certified enclosures of the three real roots; relative width bounded by
/// 2^(-precision/2).
CubicRootData cubic_roots(const WeierstrassCurve& curve, unsigned precision);

enum class ComponentTag { IdentityComponent, Egg };

ComponentTag component_of(const WeierstrassCurve& curve, const Point& p,
                          const CubicRootData& roots);
/// Convenience overload that isolates the roots itself.
ComponentTag component_of(const WeierstrassCurve& curve, const Point& p);

}  // namespace ellcert

#endif
