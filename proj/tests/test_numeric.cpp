#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ellcert/numeric.hpp"

using namespace ellcert;

namespace {

// independent trial-division oracle
std::vector<std::pair<ZZ, unsigned>> trial_factor(ZZ m) {
    std::vector<std::pair<ZZ, unsigned>> out;
    for (ZZ d = 2; d * d <= m; ++d) {
        unsigned e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        if (e) out.push_back({d, e});
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

std::vector<bool> sieve(unsigned limit) {
    std::vector<bool> is(limit + 1, true);
    is[0] = is[1] = false;
    for (unsigned i = 2; i * i <= limit; ++i)
        if (is[i])
            for (unsigned j = i * i; j <= limit; j += i) is[j] = false;
    return is;
}

}  // namespace

TEST_CASE("primality agrees with a sieve up to 10000") {
    auto is = sieve(10000);
    for (unsigned k = 0; k <= 10000; ++k)
        CHECK(is_probable_prime(ZZ(k)) == is[k]);
}

TEST_CASE("factorize matches trial division and reassembles") {
    std::vector<ZZ> samples = {2,      3,       4,      12,      360,
                               720720, 1000003, 999983, 1048576, 600851475143};
    for (const ZZ& m : samples) {
        Factorization f = factorize(m);
        CHECK(f.value == m);
        ZZ prod = 1;
        for (const auto& [p, e] : f.factors) {
            CHECK(is_probable_prime(p));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == m);
        if (m < 2000000) {
            auto oracle = trial_factor(m);
            REQUIRE(f.factors.size() == oracle.size());
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                CHECK(f.factors[i].first == oracle[i].first);
                CHECK(f.factors[i].second == oracle[i].second);
            }
        }
    }
}

TEST_CASE("factorize handles large semiprimes with rho") {
    ZZ p("2147483647");           // 2^31 - 1
    ZZ q("2305843009213693951");  // 2^61 - 1
    Factorization f = factorize(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == p);
    CHECK(f.factors[1].first == q);
}

TEST_CASE("squarefree detection") {
    for (int m = 1; m <= 500; ++m) {
        bool sf = true;
        for (const auto& [p, e] : trial_factor(ZZ(m)))
            if (e > 1) sf = false;
        CHECK(is_squarefree(ZZ(m)) == sf);
    }
    CHECK(is_squarefree(ZZ("40621")) == false);  // 7^2 * 829
}

TEST_CASE("valuations") {
    CHECK(valuation(ZZ(48), ZZ(2)) == 4);
    CHECK(valuation(ZZ(-54), ZZ(3)) == 3);
    CHECK(valuation(ZZ(7), ZZ(5)) == 0);
    CHECK(valuation(QQ(3, 8), ZZ(2)) == -3);
    CHECK(valuation(QQ(18, 5), ZZ(3)) == 2);
}

TEST_CASE("integer square roots") {
    for (int k = 0; k <= 2000; ++k) {
        ZZ r = isqrt(ZZ(k));
        CHECK(r * r <= k);
        CHECK((r + 1) * (r + 1) > k);
    }
    ZZ root;
    CHECK(is_perfect_square(ZZ(144), &root));
    CHECK(root == 12);
    CHECK(!is_perfect_square(ZZ(145)));
    ZZ big("123456789123456789");
    CHECK(is_perfect_square(big * big));
    CHECK(!is_perfect_square(big * big + 1));
}

TEST_CASE("modular arithmetic identities") {
    ZZ p = 1000003;
    for (ZZ a : {ZZ(2), ZZ(17), ZZ(-5), ZZ(999999), ZZ("123456789012345")}) {
        ZZ am = mod(a, p);
        CHECK(am >= 0);
        CHECK(am < p);
        CHECK(mod(a - am, p) == 0);
        if (am != 0) {
            CHECK(mod(invmod(a, p) * a, p) == 1);
            // Fermat
            CHECK(powmod(a, p - 1, p) == 1);
        }
    }
    CHECK(powmod(ZZ(2), ZZ(10), ZZ(1000)) == 24);
    CHECK(powmod(ZZ(5), ZZ(0), ZZ(7)) == 1);
}

TEST_CASE("legendre symbol matches the Euler criterion") {
    for (ZZ p : {ZZ(3), ZZ(5), ZZ(7), ZZ(11), ZZ(101), ZZ(997)}) {
        for (ZZ a = 0; a < p && a < 60; ++a) {
            int l = legendre(a, p);
            ZZ e = powmod(a, (p - 1) / 2, p);
            int expect = (a % p == 0) ? 0 : (e == 1 ? 1 : -1);
            CHECK(l == expect);
        }
    }
}

TEST_CASE("modular square roots") {
    for (ZZ p : {ZZ(3), ZZ(5), ZZ(13), ZZ(17), ZZ(97), ZZ(1000003)}) {
        int found = 0;
        for (ZZ a = 1; a < 50 && a < p; ++a) {
            if (legendre(a, p) != 1) continue;
            ZZ r = sqrt_mod(a, p);
            CHECK(mod(r * r - a, p) == 0);
            ++found;
        }
        CHECK(found > 0);
    }
}

TEST_CASE("gcd lcm and conversions") {
    CHECK(gcd(ZZ(48), ZZ(36)) == 12);
    CHECK(lcm(ZZ(4), ZZ(6)) == 12);
    CHECK(to_double(QQ(1, 4)) == doctest::Approx(0.25));
    CHECK(log_abs(ZZ(-1000)) == doctest::Approx(3 * std::log(10.0)));
}

TEST_CASE("precision guard restores state") {
    RR before = RR(1) / 3;
    {
        PrecisionGuard g(512);
        RR fine = RR(1) / 3;
        CHECK(fine.precision() >= 150);  // decimal digits
    }
    RR after = RR(1) / 3;
    CHECK(before.precision() == after.precision());
}
