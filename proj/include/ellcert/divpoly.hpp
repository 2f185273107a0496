#ifndef ELLCERT_DIVPOLY_HPP
#define ELLCERT_DIVPOLY_HPP

#include <optional>

#include "ellcert/point.hpp"

namespace ellcert {

/// psi_m^2 (degree m^2-1, leading coefficient m^2) and the monic phi_m
/// (degree m^2), both univariate in x: x(mP) = phi_m(x) / psi_m^2(x).
struct DivPolyPair {
    unsigned m;
    IntPoly psi_sq;
    IntPoly phi;
};

DivPolyPair division_polys(const WeierstrassCurve& curve, unsigned m,
                           unsigned budget = 50);

/// Search for an integral P with mP = Q (Q finite integral): integer roots of
/// phi_m(X) - x(Q) psi_m^2(X), then the two y lifts checked by scalar_mul.
std::optional<Point> divide_point(const WeierstrassCurve& curve, const Point& q,
                                  unsigned m, unsigned budget = 50);

}  // namespace ellcert

#endif
