#include "liftgeo/oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <set>

#include "liftgeo/error.hpp"

namespace liftgeo {

namespace {

struct PolynomialStandIns {
  // coefficients a_0..a_4 per function name
  std::map<std::string, std::array<double, 5>> coeffs;

  double operator()(const std::string& name, unsigned order, double x) const {
    const auto& a = coeffs.at(name);
    double v = 0.0;
    for (unsigned k = order; k < a.size(); ++k) {
      double falling = 1.0;
      for (unsigned q = 0; q < order; ++q) falling *= static_cast<double>(k - q);
      v += a[k] * falling * std::pow(x, static_cast<double>(k - order));
    }
    return v;
  }
};

}  // namespace

FdResult finite_difference_check(const Expr& e, const std::string& v, const ProbeConfig& cfg) {
  cfg.validate();
  const Expr f = simplify(e);
  const Expr df = differentiate(f, v);
  const ProbeSampler sampler(cfg);
  std::set<std::string> symbols = free_symbols(f);
  symbols.insert(v);
  std::set<std::string> names;
  for (const auto& [name, order] : function_jets(f)) names.insert(name);

  FdResult out;
  const double h = cfg.fd_step;
  for (int probe = 0; probe < cfg.probes; ++probe) {
    for (int attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      PolynomialStandIns stand_ins;
      for (const auto& name : names) {
        std::array<double, 5> a{};
        a[0] = sampler.uniform(probe, attempt, "poly:" + name + ":0", {1.0, 2.0});
        double factorial = 1.0;
        for (unsigned k = 1; k < a.size(); ++k) {
          factorial *= static_cast<double>(k);
          const double scale = 0.5 / (factorial * std::pow(2.0, k));
          a[k] = sampler.uniform(probe, attempt, "poly:" + name + ":" + std::to_string(k), {-scale, scale});
        }
        stand_ins.coeffs.emplace(name, a);
      }
      NumericPoint p;
      for (const auto& s : symbols) p.symbols[s] = sampler.uniform(probe, attempt, "sym:" + s, cfg.interval_for(s));
      p.functions = stand_ins;
      double value = 0.0, exact = 0.0, plus = 0.0, minus = 0.0;
      try {
        value = eval_numeric(f, p, cfg.denominator_eps);
        exact = eval_numeric(df, p, cfg.denominator_eps);
        const double x0 = p.symbols[v];
        p.symbols[v] = x0 + h;
        plus = eval_numeric(f, p, cfg.denominator_eps);
        p.symbols[v] = x0 - h;
        minus = eval_numeric(f, p, cfg.denominator_eps);
      } catch (const EvalError& err) {
        if (err.kind() == EvalError::Kind::MissingBinding) throw;
        continue;
      }
      if (!std::isfinite(value) || !std::isfinite(exact) || !std::isfinite(plus) || !std::isfinite(minus)) continue;
      if (std::abs(value) > cfg.fd_max_magnitude || std::abs(exact) > cfg.fd_max_magnitude) break;
      const double fd = (plus - minus) / (2.0 * h);
      const double rel = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
      out.worst_rel_error = std::max(out.worst_rel_error, rel);
      ++out.compared;
      break;
    }
  }
  out.inconclusive = out.compared == 0;
  out.passed = !out.inconclusive && out.worst_rel_error <= cfg.fd_rel_tol;
  return out;
}

KeyedExprs keyed(const Connection& c) {
  KeyedExprs out;
  for (const auto& [k, i, j] : c.nonzero()) out.emplace_back(c.key(k, i, j), c(k, i, j));
  return out;
}

KeyedExprs keyed(const FiberCurvature& r) {
  KeyedExprs out;
  for (const auto& [hij, value] : r) {
    if (value.is_zero()) continue;
    const auto& [h, i, j] = hij;
    out.emplace_back(fiber_key(h, i, j), value);
  }
  return out;
}

KeyedExprs keyed_upper(const Matrix& m, const Chart& chart) {
  KeyedExprs out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i; j < m.size(); ++j) out.emplace_back(inverse_key(chart, i, j), m[i][j]);
  }
  return out;
}

std::string_view to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Match:
      return "Match";
    case EntryStatus::Mismatch:
      return "Mismatch";
    case EntryStatus::Undecided:
      return "Undecided";
    case EntryStatus::Unlisted:
      return "Unlisted";
  }
  return "Undecided";
}

Reconciliation reconcile(const KeyedExprs& computed, const ReferenceTable& expected, const ProbeConfig& cfg) {
  Reconciliation out;
  out.table = expected.name;
  std::map<std::string, Expr> by_key(computed.begin(), computed.end());
  std::set<std::string> listed;
  for (const auto& ref : expected.entries) {
    listed.insert(ref.key);
    ReconEntry entry;
    entry.key = ref.key;
    if (auto it = by_key.find(ref.key); it != by_key.end()) entry.computed = it->second;
    entry.expected = parse(ref.expected);
    entry.difference = simplify(entry.computed - *entry.expected);
    const ZeroTest zt = is_identically_zero(entry.difference, cfg);
    switch (zt.verdict) {
      case ZeroVerdict::Zero:
        entry.status = EntryStatus::Match;
        ++out.matches;
        if (!ref.known_discrepancy.empty()) entry.note = "expected misprint did not reproduce";
        break;
      case ZeroVerdict::NonZero:
        entry.status = EntryStatus::Mismatch;
        entry.witness = zt.witness;
        ++out.mismatches;
        if (!ref.known_discrepancy.empty()) {
          entry.documented = true;
          entry.note = ref.known_discrepancy;
          ++out.documented;
        }
        break;
      case ZeroVerdict::Unknown:
        entry.status = EntryStatus::Undecided;
        ++out.undecided;
        break;
    }
    out.entries.push_back(std::move(entry));
  }
  for (const auto& [key, value] : computed) {
    if (listed.count(key) || value.is_zero()) continue;
    ReconEntry entry;
    entry.key = key;
    entry.status = EntryStatus::Unlisted;
    entry.computed = value;
    entry.difference = value;
    entry.note = "nonzero in the computation but absent from the table";
    ++out.unlisted;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace liftgeo
