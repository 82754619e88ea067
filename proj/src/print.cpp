#include <string>

#include "liftgeo/expr.hpp"

namespace liftgeo {

namespace {

std::string print(const Expr& e);

bool is_negative_term(const Expr& e) {
  if (e.is_number()) return e.number() < 0;
  return e.kind() == Expr::Kind::Product && e.operands().front().is_number() &&
         e.operands().front().number() < 0;
}

// Operand of a product or power base: sums need parentheses.
std::string print_factor(const Expr& e) {
  if (e.kind() == Expr::Kind::Sum) return "(" + print(e) + ")";
  if (e.is_number() && e.number() < 0) return "(" + print(e) + ")";
  return print(e);
}

std::string print_power_part(const Expr& base, long exponent) {
  std::string s = print_factor(base);
  if (base.kind() == Expr::Kind::Product || base.kind() == Expr::Kind::Power) s = "(" + s + ")";
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

// Product (or power) without its sign.
std::string print_magnitude(const Expr& e) {
  Rational coef(1);
  std::vector<std::string> num, den;
  auto add_factor = [&](const Expr& f) {
    if (f.is_number()) {
      coef *= f.number();
    } else if (f.kind() == Expr::Kind::Power && f.exponent() < 0) {
      den.push_back(print_power_part(f.base(), -f.exponent()));
    } else if (f.kind() == Expr::Kind::Power) {
      num.push_back(print_power_part(f.base(), f.exponent()));
    } else {
      num.push_back(print_factor(f));
    }
  };
  if (e.kind() == Expr::Kind::Product) {
    for (const auto& f : e.operands()) add_factor(f);
  } else {
    add_factor(e);
  }
  coef = abs(coef);
  std::string s;
  if (num.empty()) {
    s = coef.get_str();
  } else {
    if (coef != 1) s = coef.get_str() + "*";
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (i > 0) s += "*";
      s += num[i];
    }
  }
  for (const auto& d : den) s += "/" + d;
  return s;
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e.number().get_str();
    case Expr::Kind::Symbol:
      return e.name();
    case Expr::Kind::Function:
      return e.name() + std::string(e.order(), '\'') + "(" + print(e.argument()) + ")";
    case Expr::Kind::Known:
      return std::string(known_fn_name(e.known_fn())) + "(" + print(e.argument()) + ")";
    case Expr::Kind::Power:
    case Expr::Kind::Product:
      return (is_negative_term(e) ? "-" : "") + print_magnitude(e);
    case Expr::Kind::Sum: {
      std::string s;
      bool first = true;
      for (const auto& t : e.operands()) {
        const bool neg = is_negative_term(t);
        if (first) {
          s += neg ? "-" : "";
        } else {
          s += neg ? " - " : " + ";
        }
        s += t.is_number() ? Rational(abs(t.number())).get_str() : print_magnitude(t);
        first = false;
      }
      return s;
    }
  }
  return {};
}

}  // namespace

std::string Expr::str() const { return print(*this); }

}  // namespace liftgeo
