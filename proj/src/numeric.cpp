#include "liftgeo/numeric.hpp"

#include <cmath>
#include <regex>

#include "liftgeo/error.hpp"

namespace liftgeo {

Interval ProbeConfig::interval_for(const std::string& symbol) const {
  if (auto it = domain.find(symbol); it != domain.end()) return it->second;
  if (symbol == "t" || symbol == "r") return {0.5, 2.0};
  if (symbol == "theta") return {0.3, 1.2};
  if (symbol == "phi") return {0.1, 3.0};
  static const std::regex fiber("u[0-9]+");
  if (std::regex_match(symbol, fiber)) return {-1.0, 1.0};
  return {0.5, 2.0};
}

void ProbeConfig::validate() const {
  if (probes < 1) throw InvalidArgument("probes must be at least 1");
  if (!(zero_tol > 0) || !(fd_step > 0) || !(fd_rel_tol > 0) || !(denominator_eps > 0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (max_redraws < 0) throw InvalidArgument("max_redraws must be non-negative");
  auto check = [](const std::string& what, Interval iv) {
    if (!(iv.lo < iv.hi)) throw InvalidArgument("degenerate probe interval for " + what);
  };
  for (const auto& [name, iv] : domain) check(name, iv);
  check("jet values", jet_value);
  check("jet derivatives", jet_derivative);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double apply_known(KnownFn fn, double a) {
  switch (fn) {
    case KnownFn::Sin:
      return std::sin(a);
    case KnownFn::Cos:
      return std::cos(a);
    case KnownFn::Sinh:
      return std::sinh(a);
    case KnownFn::Cosh:
      return std::cosh(a);
    case KnownFn::Tan:
      if (std::abs(std::cos(a)) < 1e-10) {
        throw EvalError(EvalError::Kind::SingularDenominator, "tan evaluated at a pole");
      }
      return std::tan(a);
    case KnownFn::Exp:
      return std::exp(a);
    case KnownFn::Log:
      if (a <= 0) throw EvalError(EvalError::Kind::Domain, "log of a non-positive value");
      return std::log(a);
    case KnownFn::Sqrt:
      if (a < 0) throw EvalError(EvalError::Kind::Domain, "sqrt of a negative value");
      return std::sqrt(a);
  }
  return 0.0;
}

double eval_rec(const Expr& e, const NumericPoint& p, double eps) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e.number().get_d();
    case Expr::Kind::Symbol: {
      auto it = p.symbols.find(e.name());
      if (it == p.symbols.end()) {
        throw EvalError(EvalError::Kind::MissingBinding, "no value for symbol '" + e.name() + "'");
      }
      return it->second;
    }
    case Expr::Kind::Function: {
      const double arg = eval_rec(e.argument(), p, eps);
      if (p.functions) return p.functions(e.name(), e.order(), arg);
      auto it = p.jets.find({e.name(), e.order()});
      if (it == p.jets.end()) {
        throw EvalError(EvalError::Kind::MissingBinding,
                        "no value for " + e.name() + std::string(e.order(), '\''));
      }
      return it->second;
    }
    case Expr::Kind::Known:
      return apply_known(e.known_fn(), eval_rec(e.argument(), p, eps));
    case Expr::Kind::Power: {
      const double b = eval_rec(e.base(), p, eps);
      const long k = e.exponent();
      if (k < 0 && std::abs(b) <= eps) {
        throw EvalError(EvalError::Kind::SingularDenominator, "denominator below epsilon");
      }
      return std::pow(b, static_cast<double>(k));
    }
    case Expr::Kind::Product: {
      double v = 1.0;
      for (const auto& f : e.operands()) v *= eval_rec(f, p, eps);
      return v;
    }
    case Expr::Kind::Sum: {
      double v = 0.0;
      for (const auto& t : e.operands()) v += eval_rec(t, p, eps);
      return v;
    }
  }
  return 0.0;
}

}  // namespace

double eval_numeric(const Expr& e, const NumericPoint& point, double eps) {
  return eval_rec(e, point, eps);
}

double ProbeSampler::uniform(int probe, int attempt, const std::string& key, Interval range) const {
  std::uint64_t h = mix64(cfg_.seed);
  h = mix64(h ^ static_cast<std::uint64_t>(probe));
  h = mix64(h ^ (static_cast<std::uint64_t>(attempt) << 32U));
  h = mix64(h ^ fnv1a(key));
  const double unit = static_cast<double>(h >> 11U) * 0x1.0p-53;
  return range.lo + (range.hi - range.lo) * unit;
}

NumericPoint ProbeSampler::point_for(const Expr& e, int probe, int attempt) const {
  NumericPoint p;
  for (const auto& s : free_symbols(e)) {
    p.symbols[s] = uniform(probe, attempt, "sym:" + s, cfg_.interval_for(s));
  }
  for (const auto& [name, order] : function_jets(e)) {
    const Interval range = order == 0 ? cfg_.jet_value : cfg_.jet_derivative;
    p.jets[{name, order}] =
        uniform(probe, attempt, "jet:" + name + ":" + std::to_string(order), range);
  }
  return p;
}

std::string_view to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero:
      return "Zero";
    case ZeroVerdict::NonZero:
      return "NonZero";
    case ZeroVerdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

ZeroTest is_identically_zero(const Expr& e, const ProbeConfig& cfg) {
  cfg.validate();
  ZeroTest out;
  out.simplified = simplify(e);
  if (out.simplified.is_zero()) {
    out.verdict = ZeroVerdict::Zero;
    return out;
  }
  const ProbeSampler sampler(cfg);
  for (int probe = 0; probe < cfg.probes; ++probe) {
    for (int attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      NumericPoint p = sampler.point_for(out.simplified, probe, attempt);
      double v = 0.0;
      try {
        v = eval_numeric(out.simplified, p, cfg.denominator_eps);
      } catch (const EvalError& err) {
        if (err.kind() == EvalError::Kind::MissingBinding) throw;
        continue;
      }
      if (!std::isfinite(v)) continue;
      ++out.probes_used;
      if (std::abs(v) > cfg.zero_tol) {
        out.verdict = ZeroVerdict::NonZero;
        out.witness = Witness{std::move(p.symbols), std::move(p.jets), v};
        return out;
      }
      break;
    }
  }
  out.verdict = ZeroVerdict::Unknown;
  return out;
}

}  // namespace liftgeo
