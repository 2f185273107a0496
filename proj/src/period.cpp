#include "ellcert/period.hpp"

#include <mpfr.h>

#include <algorithm>

namespace ellcert {

namespace {

RR to_rr(const QQ& q) { return to_RR(q); }

RR eps_at_working_precision(int slack_bits) {
    // default_precision is in decimal digits; 3.33 bits per digit
    long bits = static_cast<long>(RR::default_precision() * 3.3219280948874);
    return pow(RR(2), -(static_cast<int>(bits) - slack_bits));
}

}  // namespace

RR pi_value() {
    RR v;
    mpfr_const_pi(v.backend().data(), MPFR_RNDN);
    return v;
}

RR agm(RR a, RR b) {
    if (a <= 0 || b <= 0) throw range_error("agm: arguments must be positive");
    RR eps = eps_at_working_precision(4);
    for (int i = 0; i < 10000; ++i) {
        if (abs(a - b) <= eps * a) return (a + b) / 2;
        RR m = (a + b) / 2;
        RR g = sqrt(a * b);
        a = m;
        b = g;
    }
    throw range_error("agm: no convergence");
}

RR carlson_rf(RR x, RR y, RR z) {
    if (x < 0 || y < 0 || z < 0 || (x == 0 && y == 0) || (y == 0 && z == 0) ||
        (x == 0 && z == 0))
        throw range_error("carlson_rf: arguments outside domain");
    RR eps = eps_at_working_precision(8);
    // sqrt the tolerance: the tail series below is O(spread^2)
    RR tol = sqrt(eps);
    RR mu;
    for (int i = 0; i < 10000; ++i) {
        mu = (x + y + z) / 3;
        RR spread = std::max({abs(x - mu), abs(y - mu), abs(z - mu)});
        if (spread <= tol * mu) break;
        RR sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
        RR lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) / 4;
        y = (y + lam) / 4;
        z = (z + lam) / 4;
    }
    RR X = 1 - x / mu, Y = 1 - y / mu, Z = -X - Y;
    RR e2 = X * Y - Z * Z, e3 = X * Y * Z;
    RR series = 1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44;
    return series / sqrt(mu);
}

PeriodData periods(const WeierstrassCurve& curve, unsigned precision) {
    return periods(curve, cubic_roots(curve, 2 * precision), precision);
}

PeriodData periods(const WeierstrassCurve& curve, const CubicRootData& roots,
                   unsigned precision) {
    PrecisionGuard guard(precision + 32);
    (void)curve;
    const QInterval &e1 = roots.e[0], &e2 = roots.e[1], &e3 = roots.e[2];
    RR pi = pi_value();

    // omega1 = pi / agm(sqrt(e3-e1), sqrt(e3-e2)): decreasing in e3, increasing
    // in e1 and e2, so the extremes sit at box corners of the enclosures.
    auto corner = [&](const QQ& a, const QQ& b, const QQ& c) {
        // period value at the root triple (a, b, c) = (e1, e2, e3)
        if (!(c > a && c > b)) throw range_error("periods: root enclosures overlap");
        return pi / agm(sqrt(to_rr(QQ(c - a))), sqrt(to_rr(QQ(c - b))));
    };
    RR w1_lo = corner(e1.lo, e2.lo, e3.hi);
    RR w1_hi = corner(e1.hi, e2.hi, e3.lo);

    auto corner2 = [&](const QQ& a, const QQ& b, const QQ& c) {
        if (!(b > a && c > a)) throw range_error("periods: root enclosures overlap");
        return pi / agm(sqrt(to_rr(QQ(c - a))), sqrt(to_rr(QQ(b - a))));
    };
    RR w2_lo = corner2(e1.lo, e2.hi, e3.hi);
    RR w2_hi = corner2(e1.hi, e2.lo, e3.lo);

    PeriodData pd;
    pd.precision = precision;
    pd.omega1 = (w1_lo + w1_hi) / 2;
    pd.omega2_im = (w2_lo + w2_hi) / 2;
    pd.mu = 2 * pi / pd.omega1;
    pd.q = exp(-2 * pi * pd.omega2_im / pd.omega1);
    pd.e1 = to_rr(e1.mid());
    pd.e2 = to_rr(e2.mid());
    pd.e3 = to_rr(e3.mid());
    RR rel1 = (w1_hi - w1_lo) / (2 * pd.omega1);
    RR rel2 = (w2_hi - w2_lo) / (2 * pd.omega2_im);
    pd.error_bound = std::max(abs(rel1), abs(rel2)) + eps_at_working_precision(16);
    return pd;
}

EllipticLog elliptic_log_re(const WeierstrassCurve& curve, const Point& p,
                            const PeriodData& pd, unsigned precision) {
    PrecisionGuard guard(precision + 32);
    EllipticLog out;
    out.error_bound = pow(RR(2), -static_cast<int>(precision) / 2 + 16);
    if (p.infinity) {
        out.re_z = 0;
        return out;
    }
    CubicRootData roots = cubic_roots(curve, 64);
    out.component = component_of(curve, p, roots);
    RR X = to_rr(p.x) + to_RR(curve.b2) / 12;
    const RR &E1 = pd.e1, &E2 = pd.e2, &E3 = pd.e3;
    auto clamp0 = [](RR v) { return v < 0 ? RR(0) : v; };
    if (out.component == ComponentTag::IdentityComponent) {
        // z = R_F(X - e1, X - e2, X - e3); only X - e3 can round below zero,
        // at the 2-torsion point over alpha_3
        out.re_z = carlson_rf(clamp0(X - E1), clamp0(X - E2), clamp0(X - E3));
    } else {
        // far end of the egg (x = alpha_1) is the 2-torsion point with
        // Re z = omega1 / 2; elsewhere use the inverted argument triple
        bool at_alpha1 = curve.two_division_poly().eval(p.x) == 0 &&
                         roots.alpha[0].contains(p.x);
        if (at_alpha1) {
            out.re_z = pd.omega1 / 2;
        } else {
            RR a = X - E1;
            if (a <= 0)
                throw range_error("elliptic_log_re: root enclosure too coarse");
            RR d21 = E2 - E1, d31 = E3 - E1;
            out.re_z = carlson_rf(clamp0(E2 - X) * d31 / a,
                                  clamp0(E3 - X) * d21 / a, d21 * d31 / a);
        }
    }
    if (out.re_z < 0) out.re_z = 0;
    if (out.re_z >= pd.omega1) out.re_z -= pd.omega1;
    out.error_bound = out.error_bound * (1 + abs(out.re_z)) +
                      pd.error_bound * pd.omega1;
    return out;
}

RootBoundReport check_root_bounds(const CurveParams& params,
                                  const CubicRootData& roots) {
    RootBoundReport rep;
    QQ n2 = QQ(params.n * params.n);
    QQ n4 = n2 * n2;
    QQ t = QQ(params.t);
    QQ lb[3], ub[3];
    if (t >= 3 * n2) {
        rep.positive_branch = true;
        lb[0] = -2 * t / 3 - n2 - 2 * n4 / t;
        ub[0] = -2 * t / 3 - n2 - n4 / t;
        lb[1] = t / 3;
        ub[1] = t / 3 + n4 / t;
        lb[2] = t / 3 + n2;
        ub[2] = t / 3 + n2 + n4 / t;
    } else if (t <= -3 * n2) {
        rep.positive_branch = false;
        lb[0] = t / 3 + 2 * n4 / t;
        ub[0] = t / 3 + n4 / t;
        lb[1] = t / 3 + n2 + 2 * n4 / t;
        ub[1] = t / 3 + n2 + n4 / t;
        lb[2] = -2 * t / 3 - n2;
        ub[2] = -2 * t / 3;
    } else {
        throw range_error("check_root_bounds: |t| < 3n^2");
    }
    for (int i = 0; i < 3; ++i) {
        rep.holds[2 * i] = lb[i] <= roots.e[i].lo;
        rep.holds[2 * i + 1] = roots.e[i].hi <= ub[i];
    }
    return rep;
}

}  // namespace ellcert
