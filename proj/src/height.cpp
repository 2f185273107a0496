#include "ellcert/height.hpp"

#include "ellcert/point.hpp"

namespace ellcert {

namespace {

RR to_rr(const QQ& q) { return to_RR(q); }

RR log_abs_rr(const QQ& q) { return log(abs(to_rr(q))); }

}  // namespace

RR naive_height(const Point& p) {
    if (p.infinity) return RR(0);
    ZZ num = abs(numerator(p.x));
    const ZZ& den = denominator(p.x);
    return log(to_RR(num > den ? num : den));
}

RR local_nonarch(const WeierstrassCurve& c, const Point& p, const ZZ& prime) {
    if (p.infinity) throw range_error("local_nonarch: finite point required");
    const QQ& x = p.x;
    const QQ& y = p.y;
    RR logp = log(to_RR(prime));
    // a pole at the prime: the point reduces to the (smooth) origin, and the
    // whole local contribution is the denominator term
    if (x != 0 && valuation(x, prime) < 0)
        return to_rr(QQ(-valuation(x, prime), 2)) * logp;
    QQ A = 3 * x * x + 2 * c.a2 * x + c.a4 - QQ(c.a1) * y;
    QQ B = 2 * y + QQ(c.a1) * x + c.a3;
    if (B == 0) throw range_error("local_nonarch: 2-torsion point");
    long vB = valuation(B, prime);
    if (vB <= 0 || (A != 0 && valuation(A, prime) <= 0)) return RR(0);
    QQ C = 3 * x * x * x * x + QQ(c.b2) * x * x * x + 3 * QQ(c.b4) * x * x +
           3 * QQ(c.b6) * x + c.b8;
    if (c.c4 % prime != 0) {
        long vD = valuation(c.disc, prime);
        if (vD == 0) return RR(0);
        QQ m = std::min(QQ(vD, 2), QQ(vB));
        QQ coeff = -m * (QQ(vD) - m) / (2 * QQ(vD));
        return to_rr(coeff) * logp;
    }
    if (C == 0) throw range_error("local_nonarch: degenerate point");
    long vC = valuation(C, prime);
    if (vC >= 3 * vB) return RR(-vB) / 3 * logp;
    return RR(-vC) / 8 * logp;
}

HeightValue local_arch(const WeierstrassCurve& c, const Point& p,
                       const PeriodData& pd, unsigned precision) {
    PrecisionGuard guard(precision + 32);
    if (p.infinity) throw range_error("local_arch: finite point required");
    // beta_w = ((2y + a1 x + a3)/2)^2 equals the shifted cubic at x
    QQ w = (2 * p.y + QQ(c.a1) * p.x + QQ(c.a3)) / 2;
    QQ v = w * w;
    if (v == 0) throw range_error("local_arch: 2-torsion point");

    EllipticLog lg = elliptic_log_re(c, p, pd, precision);
    RR pi = pi_value();
    RR s = pd.mu * lg.re_z;
    RR log_q = -2 * pi * pd.omega2_im / pd.omega1;
    RR q = exp(log_q);

    RR theta = 0, qpow = 1;  // q^{k(k+1)/2}, updated by factor q^{k+1}
    RR qstep = 1;
    RR tail = pow(RR(2), -static_cast<int>(precision) - 8);
    for (int k = 0; k < 10000; ++k) {
        RR term = sin((2 * k + 1) * s) * qpow;
        theta += (k % 2 == 0) ? term : -term;
        qstep *= q;
        qpow *= qstep;
        if (qpow < tail) break;
    }
    if (abs(theta) < tail)
        throw range_error("local_arch: theta vanishes (torsion point)");

    RR value = (log(to_RR(ZZ(abs(c.disc)))) - log_q) / 32 - log(abs(theta)) / 4 +
               (log_abs_rr(v) - log(pd.mu)) / 8;
    // the dominant error comes from s: d theta / d s is O(1)
    RR err = pd.mu * lg.error_bound * (abs(cos(s)) + q) / (4 * abs(theta)) +
             pow(RR(2), -static_cast<int>(precision) / 2) * (1 + abs(value));
    return HeightValue{value, err};
}

HeightValue canonical_height(const WeierstrassCurve& c, const Point& p,
                             unsigned precision) {
    PrecisionGuard guard(precision + 32);
    if (p.infinity) return HeightValue{RR(0), RR(0)};
    QQ w = 2 * p.y + QQ(c.a1) * p.x + QQ(c.a3);
    if (w == 0) return HeightValue{RR(0), RR(0)};  // 2-torsion
    PeriodData pd = periods(c, precision);
    HeightValue arch = local_arch(c, p, pd, precision);
    RR total = arch.value;
    // denominator term: every prime q with v_q(x) = -2s contributes s log q,
    // with no further correction (the point reduces to the smooth origin)
    total += log(to_RR(denominator(p.x))) / 2;
    // corrections at the remaining candidate primes
    ZZ den = denominator(p.x);
    if (is_integral(p)) {
        ZZ x = numerator(p.x), y = numerator(p.y);
        ZZ A = 3 * x * x + 2 * c.a2 * x + c.a4 - c.a1 * y;
        ZZ B = 2 * y + c.a1 * x + c.a3;
        for (const auto& [q, e] : factorize(abs(gcd(A, B))).factors)
            total += local_nonarch(c, p, q);
    } else {
        for (const auto& [q, e] : factorize(abs(c.disc)).factors)
            if (den % q != 0) total += local_nonarch(c, p, q);
    }
    return HeightValue{total, arch.error_bound};
}

RR doubling_oracle(const WeierstrassCurve& c, const Point& p, unsigned kmax,
                   std::size_t coord_bit_budget) {
    if (p.infinity) return RR(0);
    PrecisionGuard guard(96);
    Point cur = p;
    RR est = 0;
    for (unsigned k = 1; k <= kmax; ++k) {
        cur = add(c, cur, cur);
        if (cur.infinity) return RR(0);  // torsion
        std::size_t bits = mpz_sizeinbase(numerator(cur.x).backend().data(), 2) +
                           mpz_sizeinbase(denominator(cur.x).backend().data(), 2);
        if (bits > coord_bit_budget) {
            // nine completed doublings already pin the limit to ~4^-9
            if (k > 9) break;
            throw budget_error("doubling_oracle: coordinate budget exceeded");
        }
        RR prev = est;
        est = naive_height(cur) / pow(RR(4), static_cast<int>(k)) / 2;
        if (k > 4 && abs(est - prev) <= pow(RR(2), -34) * (1 + abs(est))) break;
    }
    return est;
}

RR upper_bound_h0(const CurveParams& params, ModelTag model) {
    ZZ n2 = params.n * params.n;
    if (abs(params.t) < 100 * n2)
        throw range_error("upper_bound_h0: requires |t| >= 100 n^2");
    RR logt = log(to_RR(ZZ(abs(params.t))));
    return logt + (model == ModelTag::Eprime ? RR("0.19") : RR("1.57"));
}

RR lower_bound_hP(const CurveParams& params, ModelTag model) {
    ZZ n2 = params.n * params.n;
    ZZ n4 = n2 * n2;
    const ZZ& t = params.t;
    RR logt = log(to_RR(ZZ(abs(t))));
    RR logn = log(to_RR(params.n));
    bool eprime = (model == ModelTag::Eprime);
    if (t > 0) {
        if (t < 100 * n2 || t < n4)
            throw range_error("lower_bound_hP: requires t >= max(100n^2, n^4)");
        return eprime ? RR("0.1625") * logt + RR("0.375") * logn + RR("0.04")
                      : RR("0.1625") * logt - RR("0.125") * logn + RR("0.06");
    }
    if (-t < 100 * n2 || -t < (eprime ? 2 * n4 : n4))
        throw range_error("lower_bound_hP: t out of the valid negative range");
    return eprime ? RR("0.1875") * logt + RR("0.25") * logn + RR("0.10")
                  : RR("0.1875") * logt - RR("0.125") * logn;
}

RR silverman_gap(const WeierstrassCurve& c) {
    auto h_inf = [](const RR& x) {
        RR l = log(abs(x));
        return l > 0 ? l : RR(0);
    };
    RR term_j = h_inf(to_RR(c.j));
    RR term_b2 = h_inf(to_RR(c.b2) / 12);
    return log(to_RR(ZZ(abs(c.disc)))) / 12 + term_j / 12 + term_b2 / 2 +
           log(RR(2)) / 2 + RR("1.07");
}

}  // namespace ellcert
