#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "liftgeo/expr.hpp"

namespace liftgeo {

struct Interval {
  double lo = 0.5;
  double hi = 2.0;
};

// Knobs for every probe-based decision. Defaults keep f(theta) = sin, sinh or
// theta away from zero and all GK-S denominators bounded.
struct ProbeConfig {
  std::uint64_t seed = 0;
  int probes = 20;
  double zero_tol = 1e-9;
  double fd_step = 1e-5;
  double fd_rel_tol = 1e-6;
  // Largest |value| at which a finite-difference probe is still compared.
  double fd_max_magnitude = 1e3;
  double denominator_eps = 1e-10;
  int max_redraws = 32;

  // Per-coordinate overrides; see interval_for for the built-in table.
  std::map<std::string, Interval> domain;
  Interval jet_value{0.5, 2.0};
  Interval jet_derivative{-2.0, 2.0};

  Interval interval_for(const std::string& symbol) const;
  // Throws InvalidArgument on a nonsensical configuration.
  void validate() const;
};

using JetKey = std::pair<std::string, unsigned>;

// Values for every free symbol and every abstract function jet of an
// expression. When `functions` is set it replaces the jet table: it receives
// (name, derivative order, argument value).
struct NumericPoint {
  std::map<std::string, double> symbols;
  std::map<JetKey, double> jets;
  std::function<double(const std::string&, unsigned, double)> functions;
};

// IEEE double evaluation. Throws EvalError on a missing binding, on a
// denominator with |value| <= eps, or outside a known function's domain.
double eval_numeric(const Expr& e, const NumericPoint& point, double eps = 1e-10);

// Deterministic stream of uniform doubles keyed by (seed, probe, attempt, key).
class ProbeSampler {
 public:
  explicit ProbeSampler(const ProbeConfig& cfg) : cfg_(cfg) {}
  double uniform(int probe, int attempt, const std::string& key, Interval range) const;
  // Draws every symbol and jet that e needs.
  NumericPoint point_for(const Expr& e, int probe, int attempt) const;

 private:
  const ProbeConfig& cfg_;
};

enum class ZeroVerdict { Zero, NonZero, Unknown };

std::string_view to_string(ZeroVerdict v);

struct Witness {
  std::map<std::string, double> symbols;
  std::map<JetKey, double> jets;
  double value = 0.0;
};

struct ZeroTest {
  ZeroVerdict verdict = ZeroVerdict::Unknown;
  Expr simplified;
  std::optional<Witness> witness;
  int probes_used = 0;
};

// Zero only when simplify gives the literal 0; a probe above zero_tol gives
// NonZero with that point; anything else is Unknown.
ZeroTest is_identically_zero(const Expr& e, const ProbeConfig& cfg);

// Stable 64-bit mixing, exposed for tests of reproducibility.
std::uint64_t mix64(std::uint64_t x);

}  // namespace liftgeo
