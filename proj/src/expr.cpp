#include "liftgeo/expr.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "liftgeo/error.hpp"

namespace liftgeo {

namespace detail {

struct Node {
  Expr::Kind kind = Expr::Kind::Number;
  std::size_t hash = 0;
  Rational value;
  std::string name;
  unsigned order = 0;
  KnownFn fn = KnownFn::Sin;
  long exponent = 0;
  std::vector<Expr> ops;

  static Expr make(Node n);
};

namespace {

std::size_t mix_hash(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t rational_hash(const Rational& q) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()) + 1);
  if (mpz_size(q.get_num_mpz_t()) > 0) h = mix_hash(h, mpz_getlimbn(q.get_num_mpz_t(), 0));
  h = mix_hash(h, mpz_getlimbn(q.get_den_mpz_t(), 0));
  return h;
}

}  // namespace

Expr Node::make(Node n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
  switch (n.kind) {
    case Expr::Kind::Number:
      h = mix_hash(h, rational_hash(n.value));
      break;
    case Expr::Kind::Symbol:
      h = mix_hash(h, std::hash<std::string>{}(n.name));
      break;
    case Expr::Kind::Function:
      h = mix_hash(h, std::hash<std::string>{}(n.name));
      h = mix_hash(h, n.order);
      break;
    case Expr::Kind::Known:
      h = mix_hash(h, static_cast<std::size_t>(n.fn));
      break;
    case Expr::Kind::Power:
      h = mix_hash(h, static_cast<std::size_t>(n.exponent));
      break;
    default:
      break;
  }
  for (const auto& op : n.ops) h = mix_hash(h, op.hash());
  n.hash = h;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

}  // namespace detail

using detail::Node;

namespace {

const std::array<std::string_view, 8> kKnownNames = {"sin", "cos", "sinh", "cosh",
                                                      "tan", "exp", "log",  "sqrt"};

Expr number_node(const Rational& q) {
  Node n;
  n.kind = Expr::Kind::Number;
  n.value = q;
  n.value.canonicalize();
  return Node::make(std::move(n));
}

const Expr& zero_expr() {
  static const Expr z = number_node(Rational(0));
  return z;
}

int kind_rank(Expr::Kind k) { return static_cast<int>(k); }

int compare_expr(const Expr& a, const Expr& b);

int compare_ops(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_expr(a[i], b[i]); c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare_expr(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::Number: {
      int c = cmp(a.number(), b.number());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Expr::Kind::Symbol: {
      int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Expr::Kind::Function: {
      if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
      if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
      return compare_expr(a.argument(), b.argument());
    }
    case Expr::Kind::Known:
      if (a.known_fn() != b.known_fn()) return a.known_fn() < b.known_fn() ? -1 : 1;
      return compare_expr(a.argument(), b.argument());
    case Expr::Kind::Power:
      if (int c = compare_expr(a.base(), b.base()); c != 0) return c;
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      return 0;
    case Expr::Kind::Product:
    case Expr::Kind::Sum:
      return compare_ops(a.operands(), b.operands());
  }
  return 0;
}

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare_expr(a, b) < 0; }
};

Expr raw_power(const Expr& base, long e) {
  Node n;
  n.kind = Expr::Kind::Power;
  n.exponent = e;
  n.ops = {base};
  return Node::make(std::move(n));
}

Expr raw_composite(Expr::Kind kind, std::vector<Expr> ops) {
  Node n;
  n.kind = kind;
  n.ops = std::move(ops);
  return Node::make(std::move(n));
}

Rational rational_pow(const Rational& q, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Expr make_product(std::vector<Expr> factors);

// Split a term into (coefficient, rest) with rest free of a numeric factor.
std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.kind() == Expr::Kind::Product && term.operands().front().is_number()) {
    const auto& ops = term.operands();
    if (ops.size() == 2) return {ops.front().number(), ops[1]};
    return {ops.front().number(),
            raw_composite(Expr::Kind::Product, std::vector<Expr>(ops.begin() + 1, ops.end()))};
  }
  return {Rational(1), term};
}

Expr with_coefficient(const Rational& c, const Expr& rest) {
  if (c == 1) return rest;
  std::vector<Expr> ops{number_node(c)};
  if (rest.kind() == Expr::Kind::Product) {
    ops.insert(ops.end(), rest.operands().begin(), rest.operands().end());
  } else {
    ops.push_back(rest);
  }
  return raw_composite(Expr::Kind::Product, std::move(ops));
}

Expr make_sum(std::vector<Expr> terms) {
  Rational constant(0);
  std::map<Expr, Rational, ExprLess> acc;
  std::function<void(const Expr&)> add = [&](const Expr& t) {
    switch (t.kind()) {
      case Expr::Kind::Sum:
        for (const auto& op : t.operands()) add(op);
        break;
      case Expr::Kind::Number:
        constant += t.number();
        break;
      default: {
        auto [c, rest] = split_coefficient(t);
        acc[rest] += c;
      }
    }
  };
  for (const auto& t : terms) add(t);
  std::vector<Expr> out;
  if (constant != 0) out.push_back(number_node(constant));
  for (const auto& [rest, c] : acc) {
    if (c != 0) out.push_back(with_coefficient(c, rest));
  }
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), ExprLess{});
  return raw_composite(Expr::Kind::Sum, std::move(out));
}

Expr make_power(const Expr& base, long e);

Expr make_product(std::vector<Expr> factors) {
  Rational coef(1);
  std::map<Expr, long, ExprLess> bases;
  bool zero = false;
  std::function<void(const Expr&)> add = [&](const Expr& f) {
    switch (f.kind()) {
      case Expr::Kind::Product:
        for (const auto& op : f.operands()) add(op);
        break;
      case Expr::Kind::Number:
        if (f.is_zero()) zero = true;
        coef *= f.number();
        break;
      case Expr::Kind::Power:
        bases[f.base()] += f.exponent();
        break;
      default:
        bases[f] += 1;
    }
  };
  for (const auto& f : factors) add(f);
  if (zero) return zero_expr();
  std::vector<Expr> out;
  for (const auto& [b, e] : bases) {
    if (e == 0) continue;
    out.push_back(e == 1 ? b : raw_power(b, e));
  }
  std::sort(out.begin(), out.end(), ExprLess{});
  if (out.empty()) return number_node(coef);
  if (coef == 1 && out.size() == 1) return out.front();
  if (coef != 1) out.insert(out.begin(), number_node(coef));
  return raw_composite(Expr::Kind::Product, std::move(out));
}

Expr make_power(const Expr& base, long e) {
  if (e == 0) return number_node(Rational(1));
  if (e == 1) return base;
  switch (base.kind()) {
    case Expr::Kind::Number: {
      const Rational& q = base.number();
      if (q == 0) {
        if (e < 0) throw DivisionByZero();
        return base;
      }
      const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
      Rational r = rational_pow(q, mag);
      if (e < 0) r = 1 / r;
      return number_node(r);
    }
    case Expr::Kind::Power:
      return make_power(base.base(), base.exponent() * e);
    case Expr::Kind::Product: {
      std::vector<Expr> parts;
      parts.reserve(base.operands().size());
      for (const auto& op : base.operands()) parts.push_back(make_power(op, e));
      return make_product(std::move(parts));
    }
    default:
      return raw_power(base, e);
  }
}

std::optional<Expr> known_special_value(KnownFn fn, const Rational& q) {
  if (q == 0) {
    switch (fn) {
      case KnownFn::Sin:
      case KnownFn::Sinh:
      case KnownFn::Tan:
      case KnownFn::Sqrt:
        return zero_expr();
      case KnownFn::Cos:
      case KnownFn::Cosh:
      case KnownFn::Exp:
        return number_node(Rational(1));
      case KnownFn::Log:
        throw EvalError(EvalError::Kind::Domain, "log(0) is undefined");
    }
  }
  if (q == 1) {
    if (fn == KnownFn::Log) return zero_expr();
    if (fn == KnownFn::Sqrt) return number_node(Rational(1));
  }
  return std::nullopt;
}

}  // namespace

std::string_view known_fn_name(KnownFn fn) { return kKnownNames[static_cast<std::size_t>(fn)]; }

std::optional<KnownFn> known_fn_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKnownNames.size(); ++i) {
    if (kKnownNames[i] == name) return static_cast<KnownFn>(i);
  }
  return std::nullopt;
}

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(long value) : Expr(number_node(Rational(value))) {}
Expr::Expr(const Rational& value) : Expr(number_node(value)) {}

Expr Expr::symbol(std::string name) {
  Node n;
  n.kind = Kind::Symbol;
  n.name = std::move(name);
  return Node::make(std::move(n));
}

Expr Expr::function(std::string name, unsigned order, Expr argument) {
  Node n;
  n.kind = Kind::Function;
  n.name = std::move(name);
  n.order = order;
  n.ops = {std::move(argument)};
  return Node::make(std::move(n));
}

Expr Expr::known(KnownFn fn, Expr argument) {
  if (argument.is_number()) {
    if (auto v = known_special_value(fn, argument.number())) return *v;
  }
  Node n;
  n.kind = Kind::Known;
  n.fn = fn;
  n.ops = {std::move(argument)};
  return Node::make(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) { return make_sum(std::move(terms)); }
Expr Expr::product(std::vector<Expr> factors) { return make_product(std::move(factors)); }
Expr Expr::power(Expr base, long exponent) { return make_power(base, exponent); }

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::Number && node_->value == 0; }
bool Expr::is_one() const { return node_->kind == Kind::Number && node_->value == 1; }
const Rational& Expr::number() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
unsigned Expr::order() const { return node_->order; }
KnownFn Expr::known_fn() const { return node_->fn; }
const Expr& Expr::argument() const { return node_->ops.front(); }
const Expr& Expr::base() const { return node_->ops.front(); }
long Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::operands() const { return node_->ops; }
std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare_expr(a, b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  const int c = compare_expr(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Expr operator+(const Expr& a, const Expr& b) { return make_sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return make_sum({a, make_product({Expr(-1L), b})});
}
Expr operator-(const Expr& a) { return make_product({Expr(-1L), a}); }
Expr operator*(const Expr& a, const Expr& b) { return make_product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return make_product({a, make_power(b, -1)}); }
Expr pow(const Expr& base, long exponent) { return make_power(base, exponent); }

// ---------------------------------------------------------------------------
// Calculus

namespace {

Expr known_outer_derivative(KnownFn fn, const Expr& a) {
  switch (fn) {
    case KnownFn::Sin:
      return Expr::known(KnownFn::Cos, a);
    case KnownFn::Cos:
      return -Expr::known(KnownFn::Sin, a);
    case KnownFn::Sinh:
      return Expr::known(KnownFn::Cosh, a);
    case KnownFn::Cosh:
      return Expr::known(KnownFn::Sinh, a);
    case KnownFn::Tan:
      return Expr(1L) + pow(Expr::known(KnownFn::Tan, a), 2);
    case KnownFn::Exp:
      return Expr::known(KnownFn::Exp, a);
    case KnownFn::Log:
      return pow(a, -1);
    case KnownFn::Sqrt:
      return Expr(Rational(1, 2)) * pow(Expr::known(KnownFn::Sqrt, a), -1);
  }
  return Expr();
}

}  // namespace

Expr differentiate_raw(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return Expr();
    case Expr::Kind::Symbol:
      return e.name() == var ? Expr(1L) : Expr();
    case Expr::Kind::Function: {
      Expr da = differentiate_raw(e.argument(), var);
      if (da.is_zero()) return Expr();
      return Expr::function(e.name(), e.order() + 1, e.argument()) * da;
    }
    case Expr::Kind::Known: {
      Expr da = differentiate_raw(e.argument(), var);
      if (da.is_zero()) return Expr();
      return known_outer_derivative(e.known_fn(), e.argument()) * da;
    }
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.operands()) terms.push_back(differentiate_raw(t, var));
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      const auto& ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expr d = differentiate_raw(ops[i], var);
        if (d.is_zero()) continue;
        std::vector<Expr> factors{d};
        for (std::size_t j = 0; j < ops.size(); ++j) {
          if (j != i) factors.push_back(ops[j]);
        }
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      Expr db = differentiate_raw(e.base(), var);
      if (db.is_zero()) return Expr();
      return Expr::product({Expr(e.exponent()), pow(e.base(), e.exponent() - 1), db});
    }
  }
  return Expr();
}

Expr differentiate(const Expr& e, std::string_view var) {
  return simplify(differentiate_raw(e, var));
}

namespace {

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return;
    case Expr::Kind::Symbol:
      out.insert(e.name());
      return;
    default:
      for (const auto& op : e.operands()) collect_symbols(op, out);
  }
}

void collect_jets(const Expr& e, std::set<std::pair<std::string, unsigned>>& out) {
  if (e.kind() == Expr::Kind::Function) out.emplace(e.name(), e.order());
  if (e.kind() == Expr::Kind::Number || e.kind() == Expr::Kind::Symbol) return;
  for (const auto& op : e.operands()) collect_jets(op, out);
}

class Substituter {
 public:
  explicit Substituter(const Bindings& b) : b_(b) {}

  Expr run(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Number:
        return e;
      case Expr::Kind::Symbol: {
        auto it = b_.symbols.find(e.name());
        return it == b_.symbols.end() ? e : it->second;
      }
      case Expr::Kind::Function: {
        Expr arg = run(e.argument());
        auto it = b_.functions.find(e.name());
        if (it == b_.functions.end()) return Expr::function(e.name(), e.order(), arg);
        const Expr& body = derivative_body(it->first, it->second, e.order());
        Bindings at;
        at.symbols.emplace(it->second.parameter, arg);
        return Substituter(at).run(body);
      }
      case Expr::Kind::Known:
        return Expr::known(e.known_fn(), run(e.argument()));
      case Expr::Kind::Power:
        return pow(run(e.base()), e.exponent());
      case Expr::Kind::Sum:
      case Expr::Kind::Product: {
        std::vector<Expr> ops;
        ops.reserve(e.operands().size());
        for (const auto& op : e.operands()) ops.push_back(run(op));
        return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(ops))
                                           : Expr::product(std::move(ops));
      }
    }
    return e;
  }

 private:
  const Expr& derivative_body(const std::string& name, const FuncBinding& fb, unsigned order) {
    auto& chain = cache_[name];
    if (chain.empty()) chain.push_back(fb.body);
    while (chain.size() <= order) chain.push_back(differentiate(chain.back(), fb.parameter));
    return chain[order];
  }

  const Bindings& b_;
  std::map<std::string, std::vector<Expr>> cache_;
};

}  // namespace

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

std::set<std::pair<std::string, unsigned>> function_jets(const Expr& e) {
  std::set<std::pair<std::string, unsigned>> out;
  collect_jets(e, out);
  return out;
}

bool depends_on(const Expr& e, std::string_view var) {
  return free_symbols(e).count(std::string(var)) > 0;
}

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (!bindings.coordinates.empty()) {
    for (const auto& [name, fb] : bindings.functions) {
      for (const auto& s : free_symbols(fb.body)) {
        const bool is_coord = std::find(bindings.coordinates.begin(), bindings.coordinates.end(),
                                        s) != bindings.coordinates.end();
        if (is_coord && s != fb.parameter) {
          throw InvalidArgument("binding for function '" + name + "' of '" + fb.parameter +
                                "' depends on coordinate '" + s + "'");
        }
      }
    }
  }
  return simplify(Substituter(bindings).run(e));
}

FuncBinding rename_function(const std::string& new_name, const std::string& parameter) {
  return FuncBinding{parameter, Expr::function(new_name, 0, Expr::symbol(parameter))};
}

}  // namespace liftgeo
