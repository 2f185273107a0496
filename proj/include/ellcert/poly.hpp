#ifndef ELLCERT_POLY_HPP
#define ELLCERT_POLY_HPP

#include <vector>

#include "ellcert/numeric.hpp"

namespace ellcert {

/// Dense polynomial with integer coefficients, ascending degree order.
/// The zero polynomial has an empty coefficient vector.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<ZZ> coeffs);
    static IntPoly x();
    static IntPoly constant(const ZZ& c);

    const std::vector<ZZ>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const ZZ& leading() const;
    const ZZ& operator[](std::size_t i) const { return c_[i]; }
    bool is_monic() const { return !c_.empty() && leading() == 1; }

    ZZ eval(const ZZ& x) const;
    QQ eval(const QQ& x) const;
    int sign_at(const QQ& x) const;

    IntPoly derivative() const;
    IntPoly scaled(const ZZ& k) const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

  private:
    std::vector<ZZ> c_;
    void trim();
};

/// All integer roots of a monic integer polynomial (each listed once,
/// sorted). Zero roots are peeled off first; the rest are found among the
/// divisors of the trailing coefficient.
std::vector<ZZ> integer_roots(const IntPoly& f);

/// Half-open isolating interval (lo, hi] semantics are not needed here:
/// the enclosure is a closed rational interval known to contain exactly
/// one real root, with sign-definite or vanishing endpoints. lo == hi
/// marks an exactly-known rational root.
struct QInterval {
    QQ lo, hi;
    QQ width() const { return hi - lo; }
    QQ mid() const { return (lo + hi) / 2; }
    bool contains(const QQ& x) const { return lo <= x && x <= hi; }
};

/// Isolate all real roots of a squarefree-or-not integer polynomial with
/// Sturm sequences, then bisect each isolating interval until its width is
/// at most `rel_width` * max(1,|root|). Roots are returned in increasing
/// order. Throws range_error if refinement stalls.
std::vector<QInterval> isolate_real_roots(const IntPoly& f, const QQ& rel_width);

}  // namespace ellcert

#endif
