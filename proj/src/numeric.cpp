#include "ellcert/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ellcert {

namespace {

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits)
    : saved_digits10_(RR::default_precision()) {
    RR::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { RR::default_precision(saved_digits10_); }

bool is_probable_prime(const ZZ& n) {
    if (n < 2) return false;
    // 40 Miller-Rabin rounds on top of GMP's BPSW-style test; deterministic
    // for anything reachable at desk scale.
    return mpz_probab_prime_p(n.backend().data(), 40) != 0;
}

namespace {

ZZ pollard_rho(const ZZ& n, unsigned seed) {
    // Brent's variant.
    ZZ x = 2 + seed, y = x, c = 1 + seed, d = 1;
    ZZ diff;
    while (d == 1) {
        x = mod(x * x + c, n);
        y = mod(y * y + c, n);
        y = mod(y * y + c, n);
        diff = x > y ? x - y : y - x;
        if (diff == 0) return 0;  // cycle without factor, retry with new seed
        d = gcd(diff, n);
    }
    return d == n ? ZZ(0) : d;
}

void factor_into(const ZZ& m, std::map<ZZ, unsigned>& out, unsigned max_rounds) {
    if (m == 1) return;
    if (is_probable_prime(m)) {
        out[m] += 1;
        return;
    }
    for (unsigned r = 0; r < max_rounds; ++r) {
        ZZ d = pollard_rho(m, r);
        if (d > 1) {
            factor_into(d, out, max_rounds);
            factor_into(m / d, out, max_rounds);
            return;
        }
    }
    throw budget_error("factorize: rho budget exhausted on composite cofactor");
}

}  // namespace

Factorization factorize(const ZZ& m, unsigned max_rho_rounds) {
    if (m < 1) throw range_error("factorize: argument must be positive");
    Factorization f;
    f.value = m;
    ZZ rest = m;
    std::map<ZZ, unsigned> acc;
    for (std::uint64_t p = 2; p <= 1000000u && ZZ(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
        while (rest % p == 0) {
            acc[ZZ(p)] += 1;
            rest /= p;
        }
    }
    if (rest > 1) {
        if (rest <= ZZ(1000000) * 1000000)
            acc[rest] += 1;  // below trial bound squared, necessarily prime
        else
            factor_into(rest, acc, max_rho_rounds);
    }
    for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
    return f;
}

bool is_squarefree(const ZZ& m) {
    Factorization f = factorize(m);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

long valuation(const ZZ& x, const ZZ& p) {
    if (x == 0) throw range_error("valuation: zero input");
    long v = 0;
    ZZ r = abs(x);
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

long valuation(const QQ& x, const ZZ& p) {
    if (x == 0) throw range_error("valuation: zero input");
    return valuation(numerator(x), p) - valuation(denominator(x), p);
}

ZZ isqrt(const ZZ& n) { return sqrt(n); }

bool is_perfect_square(const ZZ& n, ZZ* root) {
    if (n < 0) return false;
    ZZ r = sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

ZZ gcd(const ZZ& a, const ZZ& b) { return boost::multiprecision::gcd(a, b); }
ZZ lcm(const ZZ& a, const ZZ& b) { return boost::multiprecision::lcm(a, b); }

ZZ powmod(const ZZ& a, const ZZ& e, const ZZ& m) {
    return boost::multiprecision::powm(mod(a, m), e, m);
}

ZZ invmod(const ZZ& a, const ZZ& m) {
    ZZ r;
    if (mpz_invert(r.backend().data(), ZZ(mod(a, m)).backend().data(),
                   m.backend().data()) == 0)
        throw range_error("invmod: not invertible");
    return r;
}

ZZ mod(const ZZ& a, const ZZ& m) {
    ZZ r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

int legendre(const ZZ& a, const ZZ& p) {
    return mpz_legendre(a.backend().data(), p.backend().data());
}

ZZ sqrt_mod(const ZZ& a0, const ZZ& p) {
    ZZ a = mod(a0, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) throw range_error("sqrt_mod: non-residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    ZZ q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    ZZ z = 2;
    while (legendre(z, p) != -1) ++z;
    ZZ m = s, c = powmod(z, q, p), t = powmod(a, q, p),
       r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        ZZ t2 = t;
        unsigned i = 0;
        while (t2 != 1) {
            t2 = mod(t2 * t2, p);
            ++i;
        }
        ZZ b = c;
        for (ZZ j = 0; j < m - i - 1; ++j) b = mod(b * b, p);
        m = i;
        c = mod(b * b, p);
        t = mod(t * c, p);
        r = mod(r * b, p);
    }
    return r;
}

double to_double(const QQ& x) { return x.convert_to<double>(); }

double log_abs(const ZZ& x) {
    if (x == 0) throw range_error("log_abs: zero");
    signed long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, x.backend().data());
    return std::log(std::fabs(d)) + static_cast<double>(exp2) * std::log(2.0);
}

RR to_RR(const ZZ& z) {
    RR r;  // default-precision target
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

RR to_RR(const QQ& q) {
    RR r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

}  // namespace ellcert
