#include "liftgeo/poly.hpp"

#include <algorithm>

#include "liftgeo/error.hpp"

namespace liftgeo::poly {

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(e), Rational(1));
}

Poly Poly::monomial(Exponents e, const Rational& c) {
  Poly p(e.size());
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool Poly::is_one() const { return is_constant() && !is_zero() && leading_coefficient() == 1; }

int Poly::degree_in(std::size_t v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

bool Poly::contains(std::size_t v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) { return t.first[v] != 0; });
}

Poly Poly::coefficient_in(std::size_t v, int k) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[v] != k) continue;
    Exponents f = e;
    f[v] = 0;
    out.add_term(f, c);
  }
  return out;
}

Exponents Poly::min_exponents() const {
  Exponents m(nvars_, 0);
  if (terms_.empty()) return m;
  m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  out.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  out.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly Poly::operator*(const Poly& o) const {
  Poly out(std::max(nvars_, o.nvars_));
  Exponents e(out.nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::scaled(const Rational& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, v * c);
  return out;
}

Poly Poly::shifted(const Exponents& shift) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t i = 0; i < nvars_; ++i) f[i] += shift[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
  }
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, Rational(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  const Rational lc = p.leading_coefficient();
  if (lc == 1) return p;
  return p.scaled(1 / lc);
}

Poly divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.is_constant()) return a.scaled(1 / b.leading_coefficient());
  const std::size_t n = a.nvars();
  Poly q(n);
  Poly r = a;
  const Exponents& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  Exponents shift(n);
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (std::size_t i = 0; i < n; ++i) {
      shift[i] = lr[i] - lb[i];
      if (shift[i] < 0) throw Error("internal: inexact polynomial division");
    }
    const Rational c = r.leading_coefficient() / cb;
    q.add_term(shift, c);
    r = r - b.shifted(shift).scaled(c);
  }
  return q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v) {
  const int db = b.degree_in(v);
  if (db == 0) throw InvalidArgument("pseudo_remainder: divisor does not contain the variable");
  const Poly lcb = b.coefficient_in(v, db);
  Poly r = a;
  Exponents shift(a.nvars(), 0);
  while (!r.is_zero() && r.degree_in(v) >= db) {
    const int dr = r.degree_in(v);
    const Poly lcr = r.coefficient_in(v, dr);
    std::fill(shift.begin(), shift.end(), 0);
    shift[v] = dr - db;
    r = lcb * r - lcr * b.shifted(shift);
  }
  return r;
}

namespace {

Poly gcd_impl(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed as a polynomial in v.
Poly content_in(const Poly& p, std::size_t v) {
  const int d = p.degree_in(v);
  Poly g(p.nvars());
  for (int k = d; k >= 0; --k) {
    Poly c = p.coefficient_in(v, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? make_monic(c) : gcd_impl(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.nvars(), b.nvars());
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(n, Rational(1));

  const Exponents ea = a.min_exponents();
  const Exponents eb = b.min_exponents();
  Exponents common(n), negate_a(n), negate_b(n);
  bool any_shift = false;
  for (std::size_t i = 0; i < n; ++i) {
    common[i] = std::min(ea[i], eb[i]);
    negate_a[i] = -ea[i];
    negate_b[i] = -eb[i];
    any_shift = any_shift || ea[i] != 0 || eb[i] != 0;
  }
  if (any_shift) {
    Poly core = gcd_impl(a.shifted(negate_a), b.shifted(negate_b));
    return make_monic(core.shifted(common));
  }

  std::size_t v = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.contains(i) || b.contains(i)) {
      v = i;
      break;
    }
  }
  if (!b.contains(v)) return gcd_impl(content_in(a, v), b);
  if (!a.contains(v)) return gcd_impl(a, content_in(b, v));

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly c = gcd_impl(ca, cb);
  Poly p = divide_exact(a, ca);
  Poly q = divide_exact(b, cb);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);

  Poly g;
  while (true) {
    Poly r = pseudo_remainder(p, q, v);
    if (r.is_zero()) {
      g = q;
      break;
    }
    if (!r.contains(v)) {
      g = Poly::constant(n, Rational(1));
      break;
    }
    p = std::move(q);
    q = divide_exact(r, content_in(r, v));
  }
  if (g.contains(v)) g = divide_exact(g, content_in(g, v));
  return make_monic(c * g);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

RationalFunction::RationalFunction(Poly num)
    : num_(std::move(num)), den_(Poly::constant(num_.nvars(), Rational(1))) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw DivisionByZero();
  const std::size_t n = std::max(num_.nvars(), den_.nvars());
  if (num_.is_zero()) {
    num_ = Poly(n);
    den_ = Poly::constant(n, Rational(1));
    return;
  }
  const Exponents en = num_.min_exponents();
  const Exponents ed = den_.min_exponents();
  Exponents cancel(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    cancel[i] = -std::min(en[i], ed[i]);
    any = any || cancel[i] != 0;
  }
  if (any) {
    num_ = num_.shifted(cancel);
    den_ = den_.shifted(cancel);
  }
  if (!den_.is_monomial() && !num_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  const Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  if (den_.is_monomial() && o.den_.is_monomial()) {
    // Both denominators are monic monomials: use their lcm.
    const Exponents& a = den_.leading_exponents();
    const Exponents& b = o.den_.leading_exponents();
    const std::size_t n = a.size();
    Exponents l(n), sa(n), sb(n);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = std::max(a[i], b[i]);
      sa[i] = l[i] - a[i];
      sb[i] = l[i] - b[i];
    }
    return RationalFunction(num_.shifted(sa) + o.num_.shifted(sb), Poly::monomial(l, Rational(1)));
  }
  const Poly g = gcd(den_, o.den_);
  const Poly oa = divide_exact(o.den_, g);
  const Poly ob = divide_exact(den_, g);
  return RationalFunction(num_ * oa + o.num_ * ob, den_ * oa);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(Poly(std::max(num_.nvars(), o.num_.nvars())));
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::pow(long e) const {
  if (e == 0) return RationalFunction(Poly::constant(num_.nvars(), Rational(1)));
  if (e > 0) {
    RationalFunction out;
    out.num_ = num_.pow(static_cast<unsigned>(e));
    out.den_ = den_.pow(static_cast<unsigned>(e));
    return out;
  }
  if (num_.is_zero()) throw DivisionByZero();
  const auto m = static_cast<unsigned>(-e);
  return RationalFunction(den_.pow(m), num_.pow(m));
}

}  // namespace liftgeo::poly
