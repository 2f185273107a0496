#ifndef ELLCERT_NUMERIC_HPP
#define ELLCERT_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ellcert {

using ZZ = boost::multiprecision::mpz_int;
using QQ = boost::multiprecision::mpq_rational;
using RR = boost::multiprecision::mpfr_float;

/// Thrown when a computation would exceed a configured budget
/// (factoring effort, point-counting prime size, coordinate growth).
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation is called outside its range of validity.
struct range_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scoped working precision for RR, in bits (plus a few guard digits).
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_digits10_;
};

struct Factorization {
    ZZ value;
    std::vector<std::pair<ZZ, unsigned>> factors;  // (prime, exponent), primes increasing
};

bool is_probable_prime(const ZZ& n);

/// Exact prime factorization: trial division up to 10^6, then Pollard rho
/// with deterministic stopping. `max_rounds` bounds the rho effort; a
/// cofactor that survives the budget without a primality proof raises
/// budget_error.
Factorization factorize(const ZZ& m, unsigned max_rho_rounds = 64);

bool is_squarefree(const ZZ& m);

/// v_p(x) for nonzero integer x.
long valuation(const ZZ& x, const ZZ& p);
/// v_p(x) for nonzero rational x (numerator minus denominator valuation).
long valuation(const QQ& x, const ZZ& p);

ZZ isqrt(const ZZ& n);
bool is_perfect_square(const ZZ& n, ZZ* root = nullptr);

ZZ gcd(const ZZ& a, const ZZ& b);
ZZ lcm(const ZZ& a, const ZZ& b);

/// a^e mod m, e >= 0.
ZZ powmod(const ZZ& a, const ZZ& e, const ZZ& m);
/// Inverse of a mod m (gcd(a,m)=1 required).
ZZ invmod(const ZZ& a, const ZZ& m);
/// Euclidean remainder in [0, m).
ZZ mod(const ZZ& a, const ZZ& m);

/// Legendre symbol (a/p) for odd prime p.
int legendre(const ZZ& a, const ZZ& p);
/// Square root mod an odd prime (Tonelli–Shanks); requires (a/p) != -1.
ZZ sqrt_mod(const ZZ& a, const ZZ& p);

double to_double(const QQ& x);
double log_abs(const ZZ& x);

/// Convert exact values to floating point at the current working precision.
/// Direct construction RR(z) inherits the (possibly tiny) precision of the
/// source integer, which silently truncates later transcendental evaluations.
RR to_RR(const ZZ& z);
RR to_RR(const QQ& q);

}  // namespace ellcert

#endif
