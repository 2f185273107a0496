#ifndef ELLCERT_HEIGHT_HPP
#define ELLCERT_HEIGHT_HPP

#include "ellcert/period.hpp"

namespace ellcert {

struct HeightValue {
    RR value;
    RR error_bound;
};

/// Logarithmic height of x(P): log max(|num|, den); 0 at infinity.
RR naive_height(const Point& p);

/// Local non-archimedean contribution lambda_p of an integral non-2-torsion
/// point on a model minimal at p. Zero unless p | gcd(A, B) with
/// A = 3x^2 + 2a2 x + a4 - a1 y and B = 2y + a1 x + a3.
RR local_nonarch(const WeierstrassCurve& curve, const Point& p, const ZZ& prime);

/// Archimedean contribution via the theta series in the nome q.
HeightValue local_arch(const WeierstrassCurve& curve, const Point& p,
                       const PeriodData& pd, unsigned precision = 128);

/// Canonical height: sum of local contributions for integral points on a
/// minimal model, falling back to the doubling limit otherwise.
HeightValue canonical_height(const WeierstrassCurve& curve, const Point& p,
                             unsigned precision = 128);

/// Independent slow oracle: (1/2) lim h(x(2^k P)) / 4^k by exact doubling.
/// Throws budget_error once coordinates exceed `coord_bit_budget` bits.
RR doubling_oracle(const WeierstrassCurve& curve, const Point& p,
                   unsigned kmax = 12, std::size_t coord_bit_budget = 1u << 25);

/// Upper bound for the height of the base point (0, n^3) (resp. its image on
/// the rescaled model); valid for |t| >= 100 n^2.
RR upper_bound_h0(const CurveParams& params, ModelTag model);

/// Lower bound for the height of any integral point P with lP = base point,
/// l >= 2; valid on the asymptotic ranges of t.
RR lower_bound_hP(const CurveParams& params, ModelTag model);

/// Silverman's bound for hhat(P) - h(P)/2 on this model.
RR silverman_gap(const WeierstrassCurve& curve);

}  // namespace ellcert

#endif
