#pragma once

// Sparse multivariate polynomials and rational functions over Q, used by
// simplify(). Variables are indices into an atom table owned by the caller.

#include <map>
#include <vector>

#include "liftgeo/expr.hpp"

namespace liftgeo::poly {

using Exponents = std::vector<int>;

// Terms are kept in lexicographic order of exponent vectors (variable 0 most
// significant); the leading term is the last one.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(Exponents e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;

  const Exponents& leading_exponents() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  int degree_in(std::size_t v) const;
  bool contains(std::size_t v) const;
  // Coefficient of v^k, as a polynomial in the remaining variables.
  Poly coefficient_in(std::size_t v, int k) const;
  // Componentwise minimum exponent (the monomial content).
  Exponents min_exponents() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  // Multiply by x^shift; negative entries divide (caller guarantees exactness).
  Poly shifted(const Exponents& shift) const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  void add_term(const Exponents& e, const Rational& c);

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

// Leading coefficient scaled to 1; zero stays zero.
Poly make_monic(const Poly& p);
// a / b; throws liftgeo::Error when b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);
// Pseudo-remainder of a by b with respect to variable v.
Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v);
// Monic greatest common divisor (primitive PRS, recursive on variables).
Poly gcd(const Poly& a, const Poly& b);

// num/den with gcd(num, den) = 1 and lc(den) = 1.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Poly num);
  RationalFunction(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction pow(long e) const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

}  // namespace liftgeo::poly
