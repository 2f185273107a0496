#ifndef ELLCERT_TATE_HPP
#define ELLCERT_TATE_HPP

#include <string>
#include <vector>

#include "ellcert/curve.hpp"

namespace ellcert {

enum class KodairaClass { Im, II, III, IV, ImStar, IVStar, IIIStar, IIStar };

enum class ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive
};

struct LocalReduction {
    ZZ p;
    KodairaClass kodaira = KodairaClass::Im;
    long m = 0;  // the index for I_m / I_m^*; 0 elsewhere (I_0 = good)
    ZZ tamagawa{1};
    long v_min_delta = 0;  // valuation of the minimal discriminant at p
    ReductionKind kind = ReductionKind::Good;

    std::string symbol() const;  // "I0", "I5", "II", "I2*", ...
};

/// Tate's algorithm at p, including the u = p descent when the given model is
/// not minimal at p. The input model must be integral.
LocalReduction tate_local(const WeierstrassCurve& curve, const ZZ& p);

struct GlobalReduction {
    std::vector<LocalReduction> locals;  // bad primes, increasing
    ZZ tamagawa_lcm{1};                  // C_E, the lcm of the local c_p
    RR log_min_delta;                    // log |minimal discriminant|
    RR height_floor;                     // log|D_min| / (768 C_E^2)
};

/// Local data at every bad prime of the minimal model of the family curve.
GlobalReduction tate_global(const CurveParams& params);
GlobalReduction tate_global(const WeierstrassCurve& minimal_curve);

}  // namespace ellcert

#endif
