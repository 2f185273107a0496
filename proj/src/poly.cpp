#include "ellcert/poly.hpp"

#include <algorithm>

namespace ellcert {

IntPoly::IntPoly(std::vector<ZZ> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::x() { return IntPoly({ZZ(0), ZZ(1)}); }

IntPoly IntPoly::constant(const ZZ& c) { return IntPoly({c}); }

const ZZ& IntPoly::leading() const {
    if (c_.empty()) throw range_error("leading coefficient of zero polynomial");
    return c_.back();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZZ IntPoly::eval(const ZZ& x) const {
    ZZ r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

QQ IntPoly::eval(const QQ& x) const {
    QQ r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + QQ(*it);
    return r;
}

int IntPoly::sign_at(const QQ& x) const {
    QQ v = eval(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<ZZ> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = ZZ(i) * c_[i];
    return IntPoly(std::move(d));
}

IntPoly IntPoly::scaled(const ZZ& k) const {
    std::vector<ZZ> d = c_;
    for (auto& v : d) v *= k;
    return IntPoly(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<ZZ> c(std::max(a.c_.size(), b.c_.size()), ZZ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<ZZ> c(std::max(a.c_.size(), b.c_.size()), ZZ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ZZ> c(a.c_.size() + b.c_.size() - 1, ZZ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
}

std::vector<ZZ> integer_roots(const IntPoly& f) {
    if (f.degree() < 1) throw range_error("integer_roots: degree must be >= 1");
    std::vector<ZZ> roots;
    std::vector<ZZ> c = f.coeffs();
    // peel off x | f
    std::size_t shift = 0;
    while (shift < c.size() && c[shift] == 0) ++shift;
    if (shift > 0) {
        roots.push_back(0);
        c.erase(c.begin(), c.begin() + shift);
    }
    IntPoly g{std::vector<ZZ>(c)};
    if (g.degree() >= 1) {
        ZZ a0 = abs(c[0]);
        // candidate roots divide the constant term
        std::vector<ZZ> divs;
        for (ZZ d = 1; d * d <= a0; ++d) {
            if (a0 % d == 0) {
                divs.push_back(d);
                if (d * d != a0) divs.push_back(a0 / d);
            }
        }
        for (const ZZ& d : divs) {
            for (int s : {1, -1}) {
                ZZ cand = s * d;
                if (g.eval(cand) == 0) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace {

using QPoly = std::vector<QQ>;  // ascending

QPoly to_qpoly(const IntPoly& f) {
    QPoly q(f.coeffs().size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = QQ(f.coeffs()[i]);
    return q;
}

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(QQ(ZZ(i)) * p[i]);
    return d;
}

// remainder of a by b (b nonzero)
QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        QQ q = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
        qtrim(a);
        if (!a.empty() && a.size() >= b.size() && a.back() == 0) qtrim(a);
    }
    return a;
}

QQ qeval(const QPoly& p, const QQ& x) {
    QQ r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

int qsign(const QQ& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Number of sign changes of the Sturm sequence at x.
int sturm_changes(const std::vector<QPoly>& seq, const QQ& x) {
    int changes = 0, prev = 0;
    for (const auto& p : seq) {
        int s = qsign(qeval(p, x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

}  // namespace

std::vector<QInterval> isolate_real_roots(const IntPoly& f, const QQ& rel_width) {
    if (f.degree() < 1) throw range_error("isolate_real_roots: degree must be >= 1");
    // squarefree part f / gcd(f, f') via the Sturm remainder chain
    std::vector<QPoly> seq;
    seq.push_back(to_qpoly(f));
    seq.push_back(qderiv(seq[0]));
    while (seq.back().size() > 1) {
        QPoly r = qrem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& v : r) v = -v;
        seq.push_back(std::move(r));
    }
    // If the chain ended in a nonconstant gcd, f has repeated roots; restart
    // the Sturm sequence from the squarefree part.
    if (seq.back().size() > 1) {
        // divide f by the gcd (last element) to get the squarefree part
        QPoly g = seq.back();
        QPoly num = to_qpoly(f), quot(num.size() - g.size() + 1, QQ(0));
        while (num.size() >= g.size() && !num.empty()) {
            QQ q = num.back() / g.back();
            quot[num.size() - g.size()] = q;
            std::size_t off = num.size() - g.size();
            for (std::size_t i = 0; i < g.size(); ++i) num[off + i] -= q * g[i];
            qtrim(num);
        }
        std::vector<ZZ> zc;
        ZZ den = 1;
        for (auto& v : quot) den = lcm(den, denominator(v));
        for (auto& v : quot) zc.push_back(numerator(v) * (den / denominator(v)));
        return isolate_real_roots(IntPoly(std::move(zc)), rel_width);
    }

    const QPoly& sf = seq[0];
    // Cauchy bound
    QQ bound = 0;
    for (std::size_t i = 0; i + 1 < sf.size(); ++i)
        bound = std::max(bound, QQ(abs(sf[i] / sf.back())));
    bound += 1;

    struct Seg {
        QQ lo, hi;
        int clo, chi;
    };
    std::vector<QInterval> isolated;
    std::vector<Seg> stack{{-bound, bound, sturm_changes(seq, -bound),
                            sturm_changes(seq, bound)}};
    auto push_root = [&](const QQ& r) { isolated.push_back({r, r}); };
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        int nroots = s.clo - s.chi;
        if (nroots <= 0) continue;
        if (nroots == 1 && qsign(qeval(sf, s.lo)) != 0 &&
            qsign(qeval(sf, s.hi)) != 0 &&
            qsign(qeval(sf, s.lo)) != qsign(qeval(sf, s.hi))) {
            isolated.push_back({s.lo, s.hi});
            continue;
        }
        QQ m = (s.lo + s.hi) / 2;
        if (qsign(qeval(sf, m)) == 0) {
            push_root(m);
            // shrink around the exact root so the flanks isolate cleanly
            QQ eps = (s.hi - s.lo) / 1024;
            stack.push_back({s.lo, m - eps, s.clo, sturm_changes(seq, m - eps)});
            stack.push_back({m + eps, s.hi, sturm_changes(seq, m + eps), s.chi});
        } else {
            int cm = sturm_changes(seq, m);
            stack.push_back({s.lo, m, s.clo, cm});
            stack.push_back({m, s.hi, cm, s.chi});
        }
    }

    // refine by bisection to the requested relative width
    for (auto& iv : isolated) {
        if (iv.lo == iv.hi) continue;
        int slo = qsign(qeval(sf, iv.lo));
        for (int iter = 0; iter < 20000; ++iter) {
            QQ scale = std::max(QQ(1), std::max(QQ(abs(iv.lo)), QQ(abs(iv.hi))));
            if (iv.width() <= rel_width * scale) break;
            QQ m = iv.mid();
            int sm = qsign(qeval(sf, m));
            if (sm == 0) {
                iv.lo = iv.hi = m;
                break;
            }
            if (sm == slo)
                iv.lo = m;
            else
                iv.hi = m;
        }
        QQ scale = std::max(QQ(1), std::max(QQ(abs(iv.lo)), QQ(abs(iv.hi))));
        if (iv.width() > rel_width * scale)
            throw range_error("isolate_real_roots: refinement stalled");
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const QInterval& a, const QInterval& b) { return a.lo < b.lo; });
    return isolated;
}

}  // namespace ellcert
