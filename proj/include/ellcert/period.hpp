#ifndef ELLCERT_PERIOD_HPP
#define ELLCERT_PERIOD_HPP

#include <array>

#include "ellcert/curve.hpp"

namespace ellcert {

/// Real and imaginary periods of the model, with the nome and mu = 2*pi/omega1.
/// omega2_im is omega_2/i taken positive. All values carry a conservative
/// error bound derived from the root enclosures and the working precision.
struct PeriodData {
    RR omega1;
    RR omega2_im;
    RR q;   // exp(-2 pi omega2_im / omega1), in (0,1)
    RR mu;  // 2 pi / omega1
    RR e1, e2, e3;  // midpoints of the shifted root enclosures
    unsigned precision = 128;
    RR error_bound;  // relative, applies to omega1 and omega2_im
};

PeriodData periods(const WeierstrassCurve& curve, unsigned precision = 128);
PeriodData periods(const WeierstrassCurve& curve, const CubicRootData& roots,
                   unsigned precision);

struct EllipticLog {
    RR re_z;  // in [0, omega1)
    ComponentTag component = ComponentTag::IdentityComponent;
    RR error_bound;
};

/// Real part of the elliptic logarithm of a finite real point (0 for the
/// point at infinity), consistent with the period normalization above.
EllipticLog elliptic_log_re(const WeierstrassCurve& curve, const Point& p,
                            const PeriodData& pd, unsigned precision = 128);

/// The six root-interval inequalities valid for t >= 3n^2 (positive branch)
/// or t <= -3n^2 (negative branch), checked exactly against the enclosures.
struct RootBoundReport {
    bool positive_branch = false;
    std::array<bool, 6> holds{};
    bool all() const {
        for (bool b : holds)
            if (!b) return false;
        return true;
    }
};

RootBoundReport check_root_bounds(const CurveParams& params,
                                  const CubicRootData& roots);

// Basic multiprecision building blocks (exposed for the quadrature oracle in
// the tests).
RR agm(RR a, RR b);
RR carlson_rf(RR x, RR y, RR z);
RR pi_value();

}  // namespace ellcert

#endif
