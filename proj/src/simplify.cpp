#include <map>
#include <set>

#include "liftgeo/error.hpp"
#include "liftgeo/expr.hpp"
#include "liftgeo/poly.hpp"

namespace liftgeo {

namespace {

using poly::Exponents;
using poly::Poly;
using poly::RationalFunction;

bool is_atom(const Expr& e) {
  return e.kind() == Expr::Kind::Symbol || e.kind() == Expr::Kind::Function ||
         e.kind() == Expr::Kind::Known;
}

// Rebuilds e with canonical arguments inside every atom and records the atoms.
Expr canonical_atoms(const Expr& e, std::set<Expr>& atoms) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e;
    case Expr::Kind::Symbol:
      atoms.insert(e);
      return e;
    case Expr::Kind::Function: {
      Expr out = Expr::function(e.name(), e.order(), simplify(e.argument()));
      atoms.insert(out);
      return out;
    }
    case Expr::Kind::Known: {
      Expr out = Expr::known(e.known_fn(), simplify(e.argument()));
      if (is_atom(out)) {
        atoms.insert(out);
        return out;
      }
      return canonical_atoms(out, atoms);
    }
    case Expr::Kind::Power:
      return pow(canonical_atoms(e.base(), atoms), e.exponent());
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& op : e.operands()) ops.push_back(canonical_atoms(op, atoms));
      return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(ops)) : Expr::product(std::move(ops));
    }
  }
  return e;
}

class Converter {
 public:
  explicit Converter(const std::set<Expr>& atoms) : atoms_(atoms.begin(), atoms.end()) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);
  }

  RationalFunction to_rf(const Expr& e) const {
    const std::size_t n = atoms_.size();
    switch (e.kind()) {
      case Expr::Kind::Number:
        return RationalFunction(Poly::constant(n, e.number()));
      case Expr::Kind::Symbol:
      case Expr::Kind::Function:
      case Expr::Kind::Known:
        return RationalFunction(Poly::variable(n, index_.at(e)));
      case Expr::Kind::Power: {
        const Expr& b = e.base();
        if (is_atom(b)) {
          Exponents ex(n, 0);
          const long k = e.exponent();
          ex[index_.at(b)] = static_cast<int>(k < 0 ? -k : k);
          Poly m = Poly::monomial(ex, Rational(1));
          if (k > 0) return RationalFunction(std::move(m));
          return RationalFunction(Poly::constant(n, Rational(1)), std::move(m));
        }
        return to_rf(b).pow(e.exponent());
      }
      case Expr::Kind::Product: {
        // Split into a Laurent monomial and the remaining composite factors.
        Rational coef(1);
        Exponents up(n, 0), down(n, 0);
        bool has_rest = false;
        RationalFunction rest(Poly::constant(n, Rational(1)));
        for (const auto& f : e.operands()) {
          if (f.is_number()) {
            coef *= f.number();
          } else if (is_atom(f)) {
            up[index_.at(f)] += 1;
          } else if (f.kind() == Expr::Kind::Power && is_atom(f.base())) {
            const long k = f.exponent();
            if (k > 0) {
              up[index_.at(f.base())] += static_cast<int>(k);
            } else {
              down[index_.at(f.base())] += static_cast<int>(-k);
            }
          } else {
            rest = has_rest ? rest * to_rf(f) : to_rf(f);
            has_rest = true;
          }
        }
        RationalFunction mono(Poly::monomial(up, coef), Poly::monomial(down, Rational(1)));
        return has_rest ? mono * rest : mono;
      }
      case Expr::Kind::Sum: {
        RationalFunction acc{Poly(n)};
        for (const auto& t : e.operands()) acc = acc + to_rf(t);
        return acc;
      }
    }
    return RationalFunction(Poly(n));
  }

  Expr monomial_expr(const Exponents& ex, const Rational& c, const Exponents& shift) const {
    std::vector<Expr> factors{Expr(c)};
    for (std::size_t i = 0; i < ex.size(); ++i) {
      const int k = ex[i] - shift[i];
      if (k != 0) factors.push_back(pow(atoms_[i], k));
    }
    return Expr::product(std::move(factors));
  }

  Expr poly_expr(const Poly& p, const Exponents& shift) const {
    std::vector<Expr> terms;
    terms.reserve(p.terms().size());
    for (const auto& [ex, c] : p.terms()) terms.push_back(monomial_expr(ex, c, shift));
    return Expr::sum(std::move(terms));
  }

  Expr to_expr(const RationalFunction& rf) const {
    const std::size_t n = atoms_.size();
    if (rf.is_zero()) return Expr();
    const Poly& den = rf.den();
    // den = x^a * P with P free of monomial content; lc(P) = lc(den) = 1.
    const Exponents a = den.min_exponents();
    if (den.is_monomial()) return poly_expr(rf.num(), a);
    Exponents neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -a[i];
    const Poly p = den.shifted(neg);
    return Expr::product({poly_expr(rf.num(), a), pow(poly_expr(p, Exponents(n, 0)), -1)});
  }

 private:
  std::vector<Expr> atoms_;
  std::map<Expr, std::size_t> index_;
};

}  // namespace

Expr simplify(const Expr& e) {
  if (e.is_number() || e.kind() == Expr::Kind::Symbol) return e;
  std::set<Expr> atoms;
  const Expr prepared = canonical_atoms(e, atoms);
  const Converter conv(atoms);
  return conv.to_expr(conv.to_rf(prepared));
}

}  // namespace liftgeo
