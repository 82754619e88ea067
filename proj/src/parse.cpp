#include "liftgeo/parse.hpp"

#include <algorithm>
#include <cctype>
#include <climits>

#include "liftgeo/error.hpp"

namespace liftgeo {

Expr FuncSymbol::apply() const {
  if (definition) return *definition;
  return Expr::function(name, 0, Expr::symbol(argument));
}

bool Declarations::is_coordinate(std::string_view name) const {
  return std::find(coordinates.begin(), coordinates.end(), name) != coordinates.end();
}

bool Declarations::is_constant(std::string_view name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Declarations* decls) : text_(text), decls_(decls) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool digit_at(std::size_t p) const {
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    while (true) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        factors.push_back(pow(d, -1));
      } else {
        break;
      }
    }
    return Expr::product(std::move(factors));
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr a = atom();
    if (accept('^')) {
      const std::size_t at = pos_;
      const long e = exponent();
      if (a.is_zero() && e < 0) throw ParseError(at, "division by zero");
      a = pow(a, e);
    }
    return a;
  }

  long exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    if (!digit_at(pos_)) fail("expected integer exponent");
    long v = 0;
    while (digit_at(pos_)) {
      const int d = text_[pos_] - '0';
      if (v > (LONG_MAX - d) / 10) fail("exponent too large");
      v = v * 10 + d;
      ++pos_;
    }
    if (paren) expect(')');
    return neg ? -v : v;
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      // A '/' directly followed by digits belongs to the rational literal.
      std::size_t look = pos_;
      while (look < text_.size() && std::isspace(static_cast<unsigned char>(text_[look]))) ++look;
      if (look < text_.size() && text_[look] == '/') {
        std::size_t after = look + 1;
        while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) {
          ++after;
        }
        if (digit_at(after)) {
          pos_ = after;
          const std::size_t at = pos_;
          mpz_class den = integer();
          if (den == 0) throw ParseError(at, "zero denominator");
          Rational q(num, den);
          q.canonicalize();
          return Expr(q);
        }
      }
      return Expr(Rational(num));
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return named();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr named() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    unsigned primes = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    const auto known = known_fn_from_name(name);
    if (!peek('(')) {
      if (known) throw ParseError(start, "function '" + name + "' needs an argument");
      if (primes > 0) throw ParseError(start, "derivative of '" + name + "' needs an argument");
      if (decls_ && decls_->functions.count(name)) {
        throw ParseError(start, "function '" + name + "' needs an argument");
      }
      return Expr::symbol(name);
    }
    ++pos_;
    Expr arg = expr();
    expect(')');
    if (known) {
      if (primes > 0) throw ParseError(start, "primes are not allowed on '" + name + "'");
      return Expr::known(*known, arg);
    }
    if (!decls_) return Expr::function(name, primes, arg);
    auto it = decls_->functions.find(name);
    if (it == decls_->functions.end()) {
      throw ParseError(start, "unknown function '" + name + "' was never declared");
    }
    const FuncSymbol& f = it->second;
    if (f.is_abstract()) return Expr::function(name, primes, arg);
    Expr body = *f.definition;
    for (unsigned i = 0; i < primes; ++i) body = differentiate(body, f.argument);
    Bindings at;
    at.symbols.emplace(f.argument, arg);
    return substitute(body, at);
  }

  std::string_view text_;
  const Declarations* decls_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return simplify(Parser(text, nullptr).run()); }

Expr parse(std::string_view text, const Declarations& decls) {
  return simplify(Parser(text, &decls).run());
}

}  // namespace liftgeo
