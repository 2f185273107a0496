#include "ellcert/tate.hpp"

#include <climits>

namespace ellcert {

namespace {

constexpr long kInfV = LONG_MAX / 4;

long vval(const ZZ& x, const ZZ& p) {
    return x == 0 ? kInfV : valuation(x, p);
}

// ---- dense polynomials over F_p, ascending coefficients ----

using PV = std::vector<ZZ>;

PV ptrim(PV a, const ZZ& p) {
    for (ZZ& c : a) c = mod(c, p);
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

int pdeg(const PV& a) { return static_cast<int>(a.size()) - 1; }

PV prem(PV a, const PV& b, const ZZ& p) {
    ZZ binv = invmod(b.back(), p);
    while (pdeg(a) >= pdeg(b)) {
        ZZ f = mod(a.back() * binv, p);
        int shift = pdeg(a) - pdeg(b);
        for (int i = 0; i <= pdeg(b); ++i)
            a[i + shift] = mod(a[i + shift] - f * b[i], p);
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

PV pgcd(PV a, PV b, const ZZ& p) {
    a = ptrim(std::move(a), p);
    b = ptrim(std::move(b), p);
    while (!b.empty()) {
        PV r = prem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        ZZ inv = invmod(a.back(), p);
        for (ZZ& c : a) c = mod(c * inv, p);
    }
    return a;
}

PV pmulmod(const PV& a, const PV& b, const PV& m, const ZZ& p) {
    PV r(a.size() + b.size() - 1, ZZ(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod(r[i + j] + a[i] * b[j], p);
    return prem(ptrim(std::move(r), p), m, p);
}

// number of distinct roots of the monic polynomial f in F_p, via
// gcd(X^p - X, f); f must be squarefree mod p for the usual reading
long rational_root_count(const PV& f, const ZZ& p) {
    PV x = {ZZ(0), ZZ(1)};
    PV acc = {ZZ(1)};
    PV base = prem(x, f, p);
    ZZ e = p;
    while (e > 0) {
        if (e % 2 == 1) acc = pmulmod(acc, base, f, p);
        base = pmulmod(base, base, f, p);
        e /= 2;
    }
    // acc = X^p mod f; subtract X
    if (acc.size() < 2) acc.resize(2, ZZ(0));
    acc[1] = mod(acc[1] - 1, p);
    PV g = pgcd(std::move(acc), f, p);
    return std::max(0, pdeg(g));
}

// ---- quadratic helpers mod p ----

int quad_roots(const ZZ& al, const ZZ& be, const ZZ& ga, const ZZ& p) {
    if (p == 2) {
        int c = 0;
        for (int y = 0; y < 2; ++y)
            if (mod(al * y * y + be * y + ga, p) == 0) ++c;
        return c;
    }
    ZZ disc = mod(be * be - 4 * al * ga, p);
    if (disc == 0) return 1;
    return legendre(disc, p) == 1 ? 2 : 0;
}

bool quad_separable(const ZZ& al, const ZZ& be, const ZZ& ga, const ZZ& p) {
    return mod(be * be - 4 * al * ga, p) != 0;
}

ZZ quad_double_root(const ZZ& al, const ZZ& be, const ZZ& ga, const ZZ& p) {
    if (p == 2) return mod(ga, p);  // be is even here, al odd
    (void)ga;
    return mod(-be * invmod(2 * al, p), p);
}

// ---- singular point of the reduction ----

std::pair<ZZ, ZZ> singular_point(const WeierstrassCurve& c, const ZZ& p) {
    if (p < 5) {
        for (ZZ x = 0; x < p; ++x)
            for (ZZ y = 0; y < p; ++y) {
                ZZ f = y * y + c.a1 * x * y + c.a3 * y - x * x * x -
                       c.a2 * x * x - c.a4 * x - c.a6;
                ZZ fx = c.a1 * y - 3 * x * x - 2 * c.a2 * x - c.a4;
                ZZ fy = 2 * y + c.a1 * x + c.a3;
                if (mod(f, p) == 0 && mod(fx, p) == 0 && mod(fy, p) == 0)
                    return {x, y};
            }
        throw range_error("tate: no singular point found mod p");
    }
    // singular x is a repeated root of F = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p
    PV F = ptrim({c.b6, 2 * c.b4, c.b2, ZZ(4)}, p);
    PV Fd = ptrim({2 * c.b4, 2 * c.b2, ZZ(12)}, p);
    PV g = pgcd(F, Fd, p);
    ZZ x0;
    if (pdeg(g) == 1)
        x0 = mod(-g[0] * invmod(g[1], p), p);
    else if (pdeg(g) == 2)
        x0 = mod(-c.b2 * invmod(ZZ(12), p), p);  // triple root
    else
        throw range_error("tate: singular point detection failed");
    ZZ y0 = mod(-(c.a1 * x0 + c.a3) * invmod(ZZ(2), p), p);
    return {x0, y0};
}

// cubic P(T) = T^3 + b T^2 + c T + d mod p: root structure
struct CubicShape {
    int repeated = 0;  // 0 = squarefree, 2 = one double root, 3 = triple root
    ZZ root;           // the repeated root when repeated > 0
    long rational_roots = 0;  // when squarefree
};

CubicShape analyze_cubic(const ZZ& b, const ZZ& c, const ZZ& d, const ZZ& p) {
    CubicShape sh;
    if (p < 5) {
        // brute force: repeated roots of a cubic are rational, so counting
        // multiplicities by deflation over [0, p) sees everything
        for (ZZ r = 0; r < p; ++r) {
            std::vector<ZZ> cur = {mod(d, p), mod(c, p), mod(b, p), ZZ(1)};
            int mult = 0;
            while (cur.size() > 1) {
                std::vector<ZZ> q(cur.size() - 1);
                ZZ acc = 0;
                for (int i = static_cast<int>(cur.size()) - 1; i >= 1; --i) {
                    acc = mod(acc * r + cur[i], p);
                    q[i - 1] = acc;
                }
                if (mod(acc * r + cur[0], p) != 0) break;
                ++mult;
                cur = std::move(q);
            }
            if (mult == 0) continue;
            sh.rational_roots += 1;
            if (mult >= 2) {
                sh.repeated = mult;
                sh.root = r;
            }
        }
        return sh;
    }
    PV P = ptrim({d, c, b, ZZ(1)}, p);
    PV Pd = ptrim({c, 2 * b, ZZ(3)}, p);
    PV g = pgcd(P, Pd, p);
    if (pdeg(g) <= 0) {
        sh.repeated = 0;
        sh.rational_roots = rational_root_count(P, p);
        return sh;
    }
    if (pdeg(g) == 1) {
        sh.repeated = 2;
        sh.root = mod(-g[0] * invmod(g[1], p), p);
        return sh;
    }
    sh.repeated = 3;
    sh.root = mod(-b * invmod(ZZ(3), p), p);
    return sh;
}

WeierstrassCurve shift(const WeierstrassCurve& c, const ZZ& r, const ZZ& s,
                       const ZZ& t) {
    return Transform{ZZ(1), r, s, t}.apply(c, c.provenance);
}

}  // namespace

std::string LocalReduction::symbol() const {
    switch (kodaira) {
        case KodairaClass::Im:
            return "I" + std::to_string(m);
        case KodairaClass::II:
            return "II";
        case KodairaClass::III:
            return "III";
        case KodairaClass::IV:
            return "IV";
        case KodairaClass::ImStar:
            return "I" + std::to_string(m) + "*";
        case KodairaClass::IVStar:
            return "IV*";
        case KodairaClass::IIIStar:
            return "III*";
        case KodairaClass::IIStar:
            return "II*";
    }
    return "?";
}

LocalReduction tate_local(const WeierstrassCurve& curve, const ZZ& p) {
    if (!is_probable_prime(p)) throw range_error("tate_local: p not prime");
    WeierstrassCurve cur = curve;
    LocalReduction out;
    out.p = p;

    for (int descent = 0; descent < 64; ++descent) {
        long vd = (cur.disc % p == 0) ? valuation(cur.disc, p) : 0;
        out.v_min_delta = vd;
        if (vd == 0) {
            out.kodaira = KodairaClass::Im;
            out.m = 0;
            out.tamagawa = 1;
            out.kind = ReductionKind::Good;
            return out;
        }

        auto [x0, y0] = singular_point(cur, p);
        if (x0 != 0 || y0 != 0) cur = shift(cur, x0, ZZ(0), y0);

        if (cur.b2 % p != 0) {
            // multiplicative: tangent directions split by T^2 + a1 T - a2
            out.kodaira = KodairaClass::Im;
            out.m = vd;
            bool split = (p == 2) ? (cur.a2 % 2 == 0)
                                  : (legendre(mod(cur.b2, p), p) == 1);
            out.kind = split ? ReductionKind::SplitMultiplicative
                             : ReductionKind::NonsplitMultiplicative;
            out.tamagawa = split ? ZZ(vd) : ZZ(vd % 2 == 0 ? 2 : 1);
            return out;
        }

        out.kind = ReductionKind::Additive;
        if (vval(cur.a6, p) < 2) {
            out.kodaira = KodairaClass::II;
            out.tamagawa = 1;
            return out;
        }
        if (vval(cur.b8, p) < 3) {
            out.kodaira = KodairaClass::III;
            out.tamagawa = 2;
            return out;
        }
        ZZ p2 = p * p, p3 = p2 * p, p4 = p3 * p, p6 = p3 * p3;
        if (vval(cur.b6, p) < 3) {
            out.kodaira = KodairaClass::IV;
            int nr = quad_roots(ZZ(1), cur.a3 / p, -(cur.a6 / p2), p);
            out.tamagawa = (nr == 2) ? 3 : 1;
            return out;
        }

        // normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6
        ZZ s = (p == 2) ? mod(cur.a2, p) : mod(-cur.a1 * invmod(ZZ(2), p), p);
        cur = shift(cur, ZZ(0), s, ZZ(0));
        // the t shift adds 2t to a3; force p^2 | a3 (a3 is already even)
        ZZ t = (p == 2) ? mod(-(cur.a3 / 2), ZZ(2))
                        : mod(-cur.a3 * invmod(ZZ(2), p2), p2);
        cur = shift(cur, ZZ(0), ZZ(0), t);
        if (vval(cur.a1, p) < 1 || vval(cur.a2, p) < 1 || vval(cur.a3, p) < 2 ||
            vval(cur.a4, p) < 2 || vval(cur.a6, p) < 3)
            throw range_error("tate: normalization failed");

        CubicShape sh = analyze_cubic(mod(cur.a2 / p, p), mod(cur.a4 / p2, p),
                                      mod(cur.a6 / p3, p), p);
        if (sh.repeated == 0) {
            out.kodaira = KodairaClass::ImStar;
            out.m = 0;
            out.tamagawa = 1 + sh.rational_roots;
            return out;
        }
        if (sh.repeated == 2) {
            cur = shift(cur, p * sh.root, ZZ(0), ZZ(0));
            long mm = 1;
            ZZ pj1 = p2;   // p^{j+1}
            ZZ pa6 = p4;   // p^{2j+2}
            for (;;) {
                // quadratic Y^2 + (a3/p^{j+1}) Y - a6/p^{2j+2}
                ZZ u = cur.a3 / pj1, w = cur.a6 / pa6;
                if (quad_separable(ZZ(1), u, -w, p)) {
                    out.tamagawa = 2 + quad_roots(ZZ(1), u, -w, p);
                    break;
                }
                ZZ yy = quad_double_root(ZZ(1), u, -w, p);
                cur = shift(cur, ZZ(0), ZZ(0), pj1 * yy);
                ++mm;
                // quadratic (a2/p) X^2 + (a4/p^{j+2}) X + a6/p^{2j+3}
                ZZ al = cur.a2 / p, be = cur.a4 / (pj1 * p), ga = cur.a6 / (pa6 * p);
                if (quad_separable(al, be, ga, p)) {
                    out.tamagawa = 2 + quad_roots(al, be, ga, p);
                    break;
                }
                ZZ xx = quad_double_root(al, be, ga, p);
                cur = shift(cur, pj1 * xx, ZZ(0), ZZ(0));
                ++mm;
                pj1 *= p;
                pa6 *= p2;
            }
            out.kodaira = KodairaClass::ImStar;
            out.m = mm;
            return out;
        }
        // triple root
        cur = shift(cur, p * sh.root, ZZ(0), ZZ(0));
        {
            ZZ u = cur.a3 / p2, w = cur.a6 / p4;
            if (quad_separable(ZZ(1), u, -w, p)) {
                out.kodaira = KodairaClass::IVStar;
                out.tamagawa = (quad_roots(ZZ(1), u, -w, p) == 2) ? 3 : 1;
                return out;
            }
            ZZ yy = quad_double_root(ZZ(1), u, -w, p);
            cur = shift(cur, ZZ(0), ZZ(0), p2 * yy);
        }
        if (vval(cur.a4, p) < 4) {
            out.kodaira = KodairaClass::IIIStar;
            out.tamagawa = 2;
            return out;
        }
        if (vval(cur.a6, p) < 6) {
            out.kodaira = KodairaClass::IIStar;
            out.tamagawa = 1;
            return out;
        }
        // non-minimal at p: rescale by u = p and restart
        if (cur.a1 % p != 0 || cur.a2 % p2 != 0 || cur.a3 % p3 != 0 ||
            cur.a4 % p4 != 0 || cur.a6 % p6 != 0)
            throw range_error("tate: expected non-minimal model");
        cur = Transform{p, ZZ(0), ZZ(0), ZZ(0)}.apply(cur, cur.provenance);
    }
    throw range_error("tate: descent did not terminate");
}

GlobalReduction tate_global(const WeierstrassCurve& minimal_curve) {
    GlobalReduction g;
    RR logd = 0;
    for (const auto& [q, e] : factorize(abs(minimal_curve.disc)).factors) {
        LocalReduction lr = tate_local(minimal_curve, q);
        if (lr.v_min_delta == 0) continue;  // good after local minimalization
        logd += lr.v_min_delta * log(to_RR(q));
        g.tamagawa_lcm = lcm(g.tamagawa_lcm, lr.tamagawa);
        g.locals.push_back(std::move(lr));
    }
    g.log_min_delta = logd;
    RR c = to_RR(g.tamagawa_lcm);
    g.height_floor = logd / (768 * c * c);
    return g;
}

GlobalReduction tate_global(const CurveParams& params) {
    return tate_global(minimal_model(params).first);
}

}  // namespace ellcert
