#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liftgeo {

using Rational = mpq_class;

enum class KnownFn : std::uint8_t { Sin, Cos, Sinh, Cosh, Tan, Exp, Log, Sqrt };

std::string_view known_fn_name(KnownFn fn);
std::optional<KnownFn> known_fn_from_name(std::string_view name);

namespace detail {
struct Node;
}

// Immutable symbolic expression.
//
// Values are shared, so copies are cheap. The factory functions keep a light
// normal form: sums and products are flat, numeric factors are folded into one
// leading rational, like terms and like bases are merged, and integer powers
// distribute over products. `simplify` builds the canonical rational-function
// form on top of that.
//
// A Symbol is either a chart coordinate or a constant parameter (c1, e2, ...);
// the difference only matters to chart validation. A Function node is an
// abstract function of one argument carrying its formal derivative order:
// X(t), X'(t), X''(t), ...
class Expr {
 public:
  enum class Kind : std::uint8_t { Number, Symbol, Function, Known, Power, Product, Sum };

  Expr();  // zero
  Expr(long value);              // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);   // NOLINT(google-explicit-constructor)

  static Expr symbol(std::string name);
  static Expr function(std::string name, unsigned order, Expr argument);
  static Expr known(KnownFn fn, Expr argument);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, long exponent);

  Kind kind() const;
  bool is_number() const { return kind() == Kind::Number; }
  bool is_zero() const;
  bool is_one() const;

  const Rational& number() const;
  const std::string& name() const;
  unsigned order() const;
  KnownFn known_fn() const;
  const Expr& argument() const;
  const Expr& base() const;
  long exponent() const;
  const std::vector<Expr>& operands() const;

  std::size_t hash() const;
  // Same node, not just equal structure.
  bool same_node(const Expr& other) const { return node_ == other.node_; }

  // Text in the expression grammar; parse(e.str()) reproduces e when e is in
  // canonical form.
  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend struct detail::Node;
  std::shared_ptr<const detail::Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, long exponent);

inline Expr sym(std::string name) { return Expr::symbol(std::move(name)); }

// Canonical rational normal form. Abstract function applications (each
// derivative order separately), known-function applications and symbols are
// opaque indeterminates; the result is N/D with gcd(N, D) = 1 and D normalized,
// so equal rational functions give structurally identical results.
Expr simplify(const Expr& e);

// d e / d var, simplified.
Expr differentiate(const Expr& e, std::string_view var);
// Same derivative without the final simplify (light normal form only).
Expr differentiate_raw(const Expr& e, std::string_view var);

// Replacement for every derivative order of an abstract function: X^(n)(a) is
// rewritten to d^n(body)/d(parameter)^n evaluated at parameter = a.
struct FuncBinding {
  std::string parameter;
  Expr body;
};

struct Bindings {
  std::map<std::string, Expr> symbols;
  std::map<std::string, FuncBinding> functions;
  // When non-empty, a function body may reference no coordinate from this list
  // other than its own parameter.
  std::vector<std::string> coordinates;
};

// Simultaneous substitution followed by simplify.
Expr substitute(const Expr& e, const Bindings& bindings);

// Function binding that renames an abstract function, keeping derivative orders.
FuncBinding rename_function(const std::string& new_name, const std::string& parameter);

std::set<std::string> free_symbols(const Expr& e);
// (name, derivative order) of every abstract function application.
std::set<std::pair<std::string, unsigned>> function_jets(const Expr& e);
bool depends_on(const Expr& e, std::string_view var);

}  // namespace liftgeo

template <>
struct std::hash<liftgeo::Expr> {
  std::size_t operator()(const liftgeo::Expr& e) const noexcept { return e.hash(); }
};
