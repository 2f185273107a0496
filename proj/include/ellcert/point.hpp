#ifndef ELLCERT_POINT_HPP
#define ELLCERT_POINT_HPP

#include "ellcert/curve.hpp"

namespace ellcert {

Point negate(const WeierstrassCurve& c, const Point& p);
Point add(const WeierstrassCurve& c, const Point& p, const Point& q);
Point scalar_mul(const WeierstrassCurve& c, const ZZ& k, const Point& p);

struct FpPoint {
    bool infinity = true;
    ZZ x, y;

    static FpPoint at_infinity() { return {}; }
    static FpPoint affine(ZZ x, ZZ y) { return {false, std::move(x), std::move(y)}; }
    friend bool operator==(const FpPoint& a, const FpPoint& b) = default;
};

/// The curve reduced mod a good prime p (p not dividing the discriminant).
struct FpCurve {
    ZZ p;
    ZZ a1, a2, a3, a4, a6;
};

FpCurve reduce_curve(const WeierstrassCurve& c, const ZZ& p);
FpPoint reduce_mod_p(const WeierstrassCurve& c, const Point& pt, const ZZ& p);

bool fp_on_curve(const FpCurve& c, const FpPoint& pt);
FpPoint fp_negate(const FpCurve& c, const FpPoint& pt);
FpPoint fp_add(const FpCurve& c, const FpPoint& a, const FpPoint& b);
FpPoint fp_scalar_mul(const FpCurve& c, const ZZ& k, const FpPoint& pt);

struct FpGroupInfo {
    ZZ p;
    ZZ order;     // #E(F_p)
    ZZ exponent;  // r_p, the group exponent
};

/// Group order by quadratic-character counting over all x residues, then the
/// exponent from sampled point orders. Budget guards the O(p) enumeration.
FpGroupInfo fp_group_info(const WeierstrassCurve& c, const ZZ& p,
                          const ZZ& budget = ZZ(1000000));

ZZ fp_point_order(const FpCurve& c, const FpPoint& pt, const FpGroupInfo& info);

}  // namespace ellcert

#endif
