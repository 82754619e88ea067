#include "liftgeo/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "liftgeo/error.hpp"
#include "liftgeo/gks.hpp"
#include "liftgeo/oracle.hpp"

#ifndef LIFTGEO_VERSION
#define LIFTGEO_VERSION "0.0.0"
#endif

namespace liftgeo {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Ok:
      return "ok";
    case Outcome::Fail:
      return "fail";
    case Outcome::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Ok:
      return 0;
    case Outcome::Fail:
      return 1;
    case Outcome::Inconclusive:
      return 3;
  }
  return 3;
}

const char* library_version() { return LIFTGEO_VERSION; }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

Outcome worst(Outcome a, Outcome b) {
  if (a == Outcome::Fail || b == Outcome::Fail) return Outcome::Fail;
  if (a == Outcome::Inconclusive || b == Outcome::Inconclusive) return Outcome::Inconclusive;
  return Outcome::Ok;
}

Outcome from_zero_verdict(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero:
      return Outcome::Ok;
    case ZeroVerdict::NonZero:
      return Outcome::Fail;
    case ZeroVerdict::Unknown:
      return Outcome::Inconclusive;
  }
  return Outcome::Inconclusive;
}

std::string jet_name(const JetKey& key) { return key.first + std::string(key.second, '\''); }

Json witness_json(const Witness& w) {
  Json j;
  j["symbols"] = Json::object();
  for (const auto& [name, value] : w.symbols) j["symbols"][name] = value;
  j["jets"] = Json::object();
  for (const auto& [key, value] : w.jets) j["jets"][jet_name(key)] = value;
  j["value"] = w.value;
  return j;
}

void merge(Json& into, Json from) {
  for (auto& [key, value] : from.items()) into[key] = std::move(value);
}

Json zero_test_json(const ZeroTest& zt) {
  Json j;
  j["zero_test"] = std::string(to_string(zt.verdict));
  if (zt.witness) j["witness"] = witness_json(*zt.witness);
  return j;
}

Json labels_json(const Chart& chart) {
  Json j = Json::array();
  for (std::size_t i = 0; i < chart.dim(); ++i) j.push_back(chart[i]);
  return j;
}

Json keyed_json(const KeyedExprs& entries) {
  Json j = Json::array();
  for (const auto& [key, value] : entries) {
    if (value.is_zero()) continue;
    j.push_back(Json{{"key", key}, {"value", value.str()}});
  }
  return j;
}

std::string plural(std::size_t n, const std::string& one, const std::string& many) {
  return std::to_string(n) + " " + (n == 1 ? one : many);
}

std::string plural(std::size_t n, const std::string& noun) { return plural(n, noun, noun + "s"); }

// Common envelope; results and diagnostics are filled by the caller.
Json envelope(const std::string& command, const std::vector<const InputFile*>& inputs) {
  Json j;
  j["command"] = command;
  j["inputs"] = Json::array();
  for (const InputFile* in : inputs) j["inputs"].push_back(Json{{"path", in->path}, {"sha256", sha256_hex(in->text)}});
  j["results"] = Json::object();
  j["diagnostics"] = Json::array();
  j["version"] = LIFTGEO_VERSION;
  return j;
}

Json results_head(Outcome o, const std::string& summary) {
  Json r;
  r["status"] = std::string(to_string(o));
  r["summary"] = summary;
  return r;
}

Report finish(Json env, Outcome o, const std::string& summary, Json body, const std::vector<std::string>& diagnostics) {
  Json results = results_head(o, summary);
  merge(results, std::move(body));
  env["results"] = std::move(results);
  for (const auto& d : diagnostics) env["diagnostics"].push_back(d);
  return Report{std::move(env), o};
}

Metric load_metric(const InputFile& in, const ProbeConfig& cfg) {
  Metric g;
  try {
    g = parse_metric_file(in.text);
  } catch (const MetricFileError& e) {
    throw e.in_file(in.path);
  }
  for (const auto& v : validate(g, cfg)) {
    if (v.kind == "degenerate") throw DegenerateMetric(in.path + ": " + v.message);
    if (v.kind == "undecided") throw Undecided(in.path + ": " + v.message);
    throw InvalidArgument(in.path + ": " + v.message);
  }
  return g;
}

KeyedExprs lifted_metric_entries(const Metric& g) {
  KeyedExprs out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i; j < g.dim(); ++j) {
      out.emplace_back("g_{" + g.chart.index_label(i) + " " + g.chart.index_label(j) + "}", g(i, j));
    }
  }
  return out;
}

std::string rho_key(const Chart& chart, std::size_t k) { return "rho^{" + chart.index_label(k) + "}"; }

Json harmonicity_json(const HarmonicityReport& rep) {
  Json j;
  j["chart"] = labels_json(rep.chart);
  j["verdict"] = std::string(to_string(rep.verdict));
  j["residuals"] = Json::array();
  for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
    Json entry{{"key", rho_key(rep.chart, k)}, {"value", rep.residuals[k].str()}};
    merge(entry, zero_test_json(rep.tests[k]));
    j["residuals"].push_back(std::move(entry));
  }
  j["failing_index"] = rep.failing_index ? Json(rho_key(rep.chart, *rep.failing_index)) : Json(nullptr);
  j["undecided"] = Json::array();
  for (std::size_t k : rep.undecided) j["undecided"].push_back(rho_key(rep.chart, k));
  if (!rep.curvature_traces.empty()) {
    j["curvature_traces"] = Json::array();
    for (std::size_t k = 0; k < rep.curvature_traces.size(); ++k) {
      j["curvature_traces"].push_back(Json{{"key", "tr^{" + std::to_string(k + 1) + "}"},
                                           {"value", rep.curvature_traces[k].str()}});
    }
  }
  return j;
}

Outcome harmonicity_outcome(const HarmonicityReport& rep) {
  return rep.verdict == Verdict::Undecided ? Outcome::Inconclusive : Outcome::Ok;
}

std::string harmonicity_summary(const HarmonicityReport& rep) {
  std::string s = "verdict " + std::string(to_string(rep.verdict));
  if (rep.failing_index) s += " (" + rho_key(rep.chart, *rep.failing_index) + " nonzero)";
  if (!rep.undecided.empty()) s += " (" + plural(rep.undecided.size(), "undecided residual") + ")";
  return s;
}

}  // namespace

Report christoffel_report(const InputFile& metric, const ProbeConfig& cfg) {
  Json env = envelope("christoffel", {&metric});
  const Metric g = load_metric(metric, cfg);
  const Connection c = christoffel(g, cfg);
  Json body;
  body["chart"] = labels_json(g.chart);
  body["coefficients"] = keyed_json(keyed(c));
  const std::size_t n = body["coefficients"].size();
  const std::string summary = n == 0 ? "no nonzero coefficients" : plural(n, "nonzero coefficient");
  return finish(std::move(env), Outcome::Ok, summary, std::move(body), {});
}

Report curvature_report(const InputFile& metric, bool fiber_contract_flag, const ProbeConfig& cfg) {
  Json env = envelope("curvature", {&metric});
  const Metric g = load_metric(metric, cfg);
  const Riemann r = riemann(christoffel(g, cfg));
  KeyedExprs components;
  const std::size_t n = g.dim();
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) components.emplace_back(r.key(h, i, j, k), r(h, i, j, k));
      }
    }
  }
  Json body;
  body["chart"] = labels_json(g.chart);
  body["riemann"] = keyed_json(components);
  const std::size_t count = body["riemann"].size();
  std::string summary = count == 0 ? "no nonzero components" : plural(count, "nonzero component");
  std::vector<std::string> diagnostics;
  if (fiber_contract_flag) {
    body["fiber_contracted"] = keyed_json(keyed(fiber_contract(r)));
    summary += ", " + plural(body["fiber_contracted"].size(), "nonzero fiber-contracted component");
    diagnostics.push_back("fiber-contracted components use fiber coordinates u1..u" + std::to_string(n));
  }
  return finish(std::move(env), Outcome::Ok, summary, std::move(body), diagnostics);
}

Report lift_report(const InputFile& metric, const std::string& kind_name, bool with_connection,
                   const ProbeConfig& cfg) {
  const auto kind = lift_kind_from_name(kind_name);
  if (!kind) throw InvalidArgument("unknown lift kind '" + kind_name + "' (expected sasaki, horizontal or complete)");
  Json env = envelope("lift", {&metric});
  const Metric g = load_metric(metric, cfg);
  const LiftedMetric lifted = lift_metric(g, *kind);
  Json body;
  body["kind"] = std::string(to_string(*kind));
  body["chart"] = labels_json(lifted.metric.chart);
  body["frame"] = std::string(to_string(lifted.metric.frame));
  body["metric"] = keyed_json(lifted_metric_entries(lifted.metric));
  std::string summary = std::to_string(lifted.metric.dim()) + "x" + std::to_string(lifted.metric.dim()) +
                        " lifted metric, " +
                        plural(body["metric"].size(), "nonzero entry", "nonzero entries");
  if (with_connection) {
    body["connection"] = keyed_json(keyed(lift_connection(g, *kind, cfg)));
    summary += ", " + plural(body["connection"].size(), "nonzero connection coefficient");
  }
  return finish(std::move(env), Outcome::Ok, summary, std::move(body), {});
}

Report harmonic_report(const InputFile& g_file, const InputFile& d_file, const std::optional<std::string>& lift,
                       const ProbeConfig& cfg) {
  std::optional<LiftKind> kind;
  if (lift) {
    kind = lift_kind_from_name(*lift);
    if (!kind) throw InvalidArgument("unknown lift kind '" + *lift + "' (expected sasaki, horizontal or complete)");
  }
  Json env = envelope("harmonic", {&g_file, &d_file});
  const Metric g = load_metric(g_file, cfg);
  const Metric d = load_metric(d_file, cfg);
  if (!(g.chart == d.chart)) throw InvalidArgument("metrics are given on different charts");
  const HarmonicityReport rep = kind ? lifted_harmonicity(g, d, *kind, cfg) : harmonicity_residuals(g, d, cfg);
  Json body;
  body["lift"] = kind ? Json(std::string(to_string(*kind))) : Json(nullptr);
  merge(body, harmonicity_json(rep));
  return finish(std::move(env), harmonicity_outcome(rep), harmonicity_summary(rep), std::move(body), rep.notes);
}

Report verify_report(const InputFile& metric, const ProbeConfig& cfg) {
  Json env = envelope("verify", {&metric});
  const Metric g = load_metric(metric, cfg);
  const Connection c = christoffel(g, cfg);
  const Riemann r = riemann(c);
  const std::size_t n = g.dim();
  Json checks = Json::array();
  Outcome overall = Outcome::Ok;
  std::vector<std::string> diagnostics;

  auto add = [&](const std::string& name, Outcome o, const std::string& detail) {
    checks.push_back(Json{{"name", name}, {"status", std::string(to_string(o))}, {"detail", detail}});
    overall = worst(overall, o);
  };
  // Runs the zero test over every expression and records the first failure.
  auto zero_family = [&](const std::string& name, const std::vector<std::pair<std::string, Expr>>& exprs) {
    Outcome o = Outcome::Ok;
    std::size_t nonzero = 0, unknown = 0;
    for (const auto& [key, e] : exprs) {
      const ZeroTest zt = is_identically_zero(e, cfg);
      if (zt.verdict == ZeroVerdict::NonZero) {
        if (nonzero++ == 0) diagnostics.push_back(name + ": " + key + " is nonzero: " + zt.simplified.str());
      } else if (zt.verdict == ZeroVerdict::Unknown) {
        if (unknown++ == 0) diagnostics.push_back(name + ": " + key + " could not be decided");
      }
      o = worst(o, from_zero_verdict(zt.verdict));
    }
    add(name, o,
        plural(exprs.size(), "expression") + " tested, " + std::to_string(nonzero) + " nonzero, " +
            std::to_string(unknown) + " undecided");
  };

  std::vector<std::pair<std::string, Expr>> symmetry;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) symmetry.emplace_back(c.key(k, i, j), c(k, i, j) - c(k, j, i));
    }
  }
  zero_family("christoffel-lower-symmetry", symmetry);

  std::vector<std::pair<std::string, Expr>> compat;
  const auto res = metric_compatibility_residual(g, c);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        compat.emplace_back("nabla_" + std::to_string(k + 1) + " g_{" + std::to_string(i + 1) + " " +
                                std::to_string(j + 1) + "}",
                            res[k][i][j]);
      }
    }
  }
  zero_family("metric-compatibility", compat);

  std::vector<std::pair<std::string, Expr>> antisym, bianchi;
  const auto bres = bianchi_residual(r);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (i < j) antisym.emplace_back(r.key(h, i, j, k), r(h, i, j, k) + r(h, j, i, k));
          if (i < j && j < k) bianchi.emplace_back(r.key(h, i, j, k) + " cyclic", bres[h][i][j][k]);
        }
      }
    }
  }
  zero_family("riemann-antisymmetry", antisym);
  zero_family("first-bianchi", bianchi);

  // Finite differences over every nonzero coefficient and curvature component.
  std::vector<std::pair<std::string, Expr>> targets;
  for (const auto& [key, value] : keyed(c)) targets.emplace_back(key, value);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (!r(h, i, j, k).is_zero()) targets.emplace_back(r.key(h, i, j, k), r(h, i, j, k));
        }
      }
    }
  }
  double worst_error = 0.0;
  std::size_t compared = 0, failed = 0, inconclusive = 0;
  Outcome fd = Outcome::Ok;
  for (const auto& [key, e] : targets) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!depends_on(e, g.chart[v])) continue;
      const FdResult res_fd = finite_difference_check(e, g.chart[v], cfg);
      ++compared;
      worst_error = std::max(worst_error, res_fd.worst_rel_error);
      if (res_fd.inconclusive) {
        ++inconclusive;
        fd = worst(fd, Outcome::Inconclusive);
      } else if (!res_fd.passed) {
        if (failed++ == 0) {
          diagnostics.push_back("finite-difference: d/d" + g.chart[v] + " of " + key + " off by " +
                                std::to_string(res_fd.worst_rel_error));
        }
        fd = Outcome::Fail;
      }
    }
  }
  std::ostringstream detail;
  detail << compared << " derivative checks, " << failed << " failed, " << inconclusive
         << " inconclusive, worst relative error " << worst_error;
  add("finite-difference", fd, detail.str());

  std::size_t passed = 0;
  for (const auto& check : checks) passed += check["status"] == "ok";
  Json body;
  body["chart"] = labels_json(g.chart);
  body["checks"] = std::move(checks);
  const std::string summary = std::to_string(passed) + " of " + std::to_string(body["checks"].size()) +
                              " invariant checks passed";
  return finish(std::move(env), overall, summary, std::move(body), diagnostics);
}

// ---------------------------------------------------------------------------
// paper-check scenarios

namespace {

struct ScenarioResult {
  Json json;
  Outcome outcome = Outcome::Ok;
  std::vector<std::string> diagnostics;
};

// Computed once per paper-check run and shared by the scenarios.
class Context {
 public:
  explicit Context(const ProbeConfig& cfg) : cfg(cfg) {}

  const ProbeConfig& cfg;

  const Metric& g() {
    if (!g_) g_ = build_gks(abstract_gks());
    return *g_;
  }
  const Metric& ghat() {
    if (!ghat_) ghat_ = build_gks(abstract_gks("h"));
    return *ghat_;
  }
  const Connection& gamma() {
    if (!gamma_) gamma_ = christoffel(g(), cfg);
    return *gamma_;
  }
  const HarmonicityReport& base() {
    if (!base_) base_ = harmonicity_residuals(g(), ghat(), cfg);
    return *base_;
  }
  const std::pair<Expr, Expr>& conditions() {
    if (!conditions_) conditions_ = harmonicity_conditions(abstract_gks(), abstract_gks("h"));
    return *conditions_;
  }
  const std::vector<std::pair<std::string, EquivalenceReport>>& corpus() {
    if (!corpus_) {
      corpus_.emplace();
      for (const auto& [a, b] : gks_corpus(cfg.seed, 24)) {
        corpus_->emplace_back(a.describe() + " ; " + b.describe(), theorem_equivalence_check(a, b, cfg));
      }
    }
    return *corpus_;
  }

 private:
  std::optional<Metric> g_, ghat_;
  std::optional<Connection> gamma_;
  std::optional<HarmonicityReport> base_;
  std::optional<std::pair<Expr, Expr>> conditions_;
  std::optional<std::vector<std::pair<std::string, EquivalenceReport>>> corpus_;
};

GksSpec example_g() { return gks_from_bodies("e1", "e2", "theta"); }
GksSpec example_ghat() { return gks_from_bodies("c1", "c2", "sinh(theta)", "h"); }

Json recon_json(const Reconciliation& rec) {
  Json j;
  j["table"] = rec.table;
  j["matches"] = rec.matches;
  j["mismatches"] = rec.mismatches;
  j["documented"] = rec.documented;
  j["undecided"] = rec.undecided;
  j["unlisted"] = rec.unlisted;
  j["entries"] = Json::array();
  for (const auto& e : rec.entries) {
    Json entry{{"key", e.key}, {"status", std::string(to_string(e.status))}, {"computed", e.computed.str()}};
    if (e.expected) entry["expected"] = e.expected->str();
    if (e.status != EntryStatus::Match) entry["difference"] = e.difference.str();
    if (e.documented) entry["documented"] = true;
    if (!e.note.empty()) entry["note"] = e.note;
    if (e.witness) entry["witness"] = witness_json(*e.witness);
    j["entries"].push_back(std::move(entry));
  }
  return j;
}

std::string recon_summary(const Reconciliation& rec) {
  const std::size_t listed = rec.entries.size() - static_cast<std::size_t>(rec.unlisted);
  std::string s = rec.table + ": " + std::to_string(rec.matches) + "/" + std::to_string(listed) + " match";
  if (rec.documented) s += ", " + plural(rec.documented, "documented discrepancy", "documented discrepancies");
  if (rec.undocumented_mismatches()) {
    s += ", " + plural(rec.undocumented_mismatches(), "new mismatch", "new mismatches");
  }
  if (rec.undecided) s += ", " + std::to_string(rec.undecided) + " undecided";
  if (rec.unlisted) s += ", " + std::to_string(rec.unlisted) + " unlisted";
  return s;
}

// Unlisted entries fail tables that claim to list every nonzero value.
Outcome recon_outcome(const Reconciliation& rec, bool unlisted_fails, std::vector<std::string>& diagnostics) {
  Outcome o = Outcome::Ok;
  for (const auto& e : rec.entries) {
    switch (e.status) {
      case EntryStatus::Match:
        break;
      case EntryStatus::Mismatch:
        if (e.documented) {
          diagnostics.push_back(rec.table + ": documented discrepancy at " + e.key + ": computed " + e.computed.str() +
                                ", printed " + e.expected->str());
        } else {
          diagnostics.push_back(rec.table + ": mismatch at " + e.key + ": computed " + e.computed.str() +
                                ", printed " + e.expected->str());
          o = Outcome::Fail;
        }
        break;
      case EntryStatus::Undecided:
        diagnostics.push_back(rec.table + ": could not decide " + e.key);
        o = worst(o, Outcome::Inconclusive);
        break;
      case EntryStatus::Unlisted:
        diagnostics.push_back(rec.table + ": " + e.key + " = " + e.computed.str() + " is absent from the table");
        if (unlisted_fails) o = Outcome::Fail;
        break;
    }
  }
  return o;
}

ScenarioResult reconciliation_scenario(const std::string& name, const std::vector<Reconciliation>& recs,
                                       bool unlisted_fails) {
  ScenarioResult out;
  Json tables = Json::array();
  std::string summary;
  for (const auto& rec : recs) {
    out.outcome = worst(out.outcome, recon_outcome(rec, unlisted_fails, out.diagnostics));
    if (!summary.empty()) summary += "; ";
    summary += recon_summary(rec);
    tables.push_back(recon_json(rec));
  }
  out.json = results_head(out.outcome, summary);
  out.json["scenario"] = name;
  out.json["reconciliations"] = std::move(tables);
  return out;
}

// Zero-tests "actual - expected" for each keyed pair; Zero must be symbolic.
struct IdentityCheck {
  Json entries = Json::array();
  Outcome outcome = Outcome::Ok;
  std::size_t count = 0, held = 0;

  void add(const std::string& key, const Expr& actual, const Expr& expected, const ProbeConfig& cfg,
           std::vector<std::string>& diagnostics, const std::string& context) {
    const ZeroTest zt = is_identically_zero(actual - expected, cfg);
    Json entry{{"key", key}, {"actual", actual.str()}, {"expected", expected.str()}};
    merge(entry, zero_test_json(zt));
    entries.push_back(std::move(entry));
    ++count;
    if (zt.verdict == ZeroVerdict::Zero) {
      ++held;
    } else {
      diagnostics.push_back(context + ": " + key + " differs from " + expected.str() + " (" +
                            std::string(to_string(zt.verdict)) + ")");
    }
    outcome = worst(outcome, from_zero_verdict(zt.verdict));
  }
};

struct CorpusTally {
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  Outcome outcome() const {
    if (fail) return Outcome::Fail;
    if (inconclusive) return Outcome::Inconclusive;
    return Outcome::Ok;
  }
  std::string str() const {
    return std::to_string(pass) + " agree, " + std::to_string(fail) + " disagree, " + std::to_string(inconclusive) +
           " inconclusive";
  }
};

CorpusTally tally_check(Context& ctx, const std::string& check_name, std::vector<std::string>& diagnostics) {
  CorpusTally t;
  for (const auto& [label, rep] : ctx.corpus()) {
    for (const auto& check : rep.checks) {
      if (check.name != check_name) continue;
      switch (check.outcome) {
        case CheckOutcome::Pass:
          ++t.pass;
          break;
        case CheckOutcome::Fail:
          ++t.fail;
          diagnostics.push_back(check_name + ": counterexample " + label);
          break;
        case CheckOutcome::Inconclusive:
          ++t.inconclusive;
          diagnostics.push_back(check_name + ": inconclusive on " + label);
          break;
      }
    }
  }
  return t;
}

ScenarioResult gamma_matrices(Context& ctx) {
  return reconciliation_scenario(
      "gamma-matrices", {reconcile(keyed(ctx.gamma()), reference_christoffel(), ctx.cfg)}, true);
}

ScenarioResult inverse_scenario(Context& ctx) {
  const Metric& g = ctx.g();
  const Metric complete = lift_metric(g, LiftKind::Complete).metric;
  return reconciliation_scenario(
      "inverse",
      {reconcile(keyed_upper(inverse(g, ctx.cfg), g.chart), reference_inverse(), ctx.cfg),
       reconcile(keyed_upper(inverse(complete, ctx.cfg), complete.chart), reference_complete_inverse(), ctx.cfg)},
      true);
}

ScenarioResult traces_scenario(Context& ctx) {
  const HarmonicityReport& base = ctx.base();
  KeyedExprs rho;
  for (std::size_t k = 0; k < base.residuals.size(); ++k) rho.emplace_back(rho_key(base.chart, k), base.residuals[k]);
  ScenarioResult out = reconciliation_scenario("traces", {reconcile(rho, reference_traces(), ctx.cfg)}, true);
  out.json["verdict"] = std::string(to_string(base.verdict));
  return out;
}

ScenarioResult example1(Context& ctx) {
  ScenarioResult out;
  const EquivalenceReport rep = theorem_equivalence_check(example_g(), example_ghat(), ctx.cfg);
  IdentityCheck conditions;
  conditions.add("condition 1", rep.conditions.first, parse("0"), ctx.cfg, out.diagnostics, "example1");
  conditions.add("condition 2", rep.conditions.second, parse("theta - sinh(theta)*cosh(theta)"), ctx.cfg,
                 out.diagnostics, "example1");
  out.outcome = conditions.outcome;

  const HarmonicityReport& base = rep.base;
  const bool witnessed = base.verdict == Verdict::NotHarmonic && base.failing_index &&
                         base.tests[*base.failing_index].witness.has_value();
  if (base.verdict == Verdict::Undecided) {
    out.outcome = worst(out.outcome, Outcome::Inconclusive);
  } else if (!witnessed) {
    out.outcome = Outcome::Fail;
    out.diagnostics.push_back("example1: expected NotHarmonic with a numeric witness, got " +
                              std::string(to_string(base.verdict)));
  }
  out.json = results_head(out.outcome, "g1 -> ghat1 verdict " + std::string(to_string(base.verdict)) +
                                           (base.failing_index ? " (" + rho_key(base.chart, *base.failing_index) +
                                                                     " nonzero)"
                                                               : ""));
  out.json["scenario"] = "example1";
  out.json["g"] = example_g().describe();
  out.json["ghat"] = example_ghat().describe();
  out.json["conditions"] = std::move(conditions.entries);
  out.json["harmonicity"] = harmonicity_json(base);
  return out;
}

ScenarioResult curvature_table(Context& ctx) {
  return reconciliation_scenario(
      "curvature-table",
      {reconcile(keyed(fiber_contract(riemann(ctx.gamma()))), reference_curvature(), ctx.cfg)}, true);
}

// Sasaki and horizontal: unbarred residuals equal the base ones, barred vanish.
ScenarioResult adapted_lift(Context& ctx, LiftKind kind) {
  const std::string name(to_string(kind));
  ScenarioResult out;
  const HarmonicityReport rep = lifted_harmonicity(ctx.g(), ctx.ghat(), kind, ctx.cfg);
  const HarmonicityReport& base = ctx.base();
  const std::size_t m = base.residuals.size();
  IdentityCheck residuals;
  for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
    const Expr expected = k < m ? base.residuals[k] : Expr(0);
    residuals.add(rho_key(rep.chart, k), rep.residuals[k], expected, ctx.cfg, out.diagnostics, name);
  }
  IdentityCheck traces;
  for (std::size_t k = 0; k < rep.curvature_traces.size(); ++k) {
    traces.add("tr^{" + std::to_string(k + 1) + "}", rep.curvature_traces[k], Expr(0), ctx.cfg, out.diagnostics,
               name);
  }
  const CorpusTally corpus = tally_check(ctx, name + "-vs-base", out.diagnostics);
  out.outcome = worst(worst(residuals.outcome, traces.outcome), corpus.outcome());
  for (const auto& note : rep.notes) out.diagnostics.push_back(name + ": " + note);

  out.json = results_head(out.outcome, std::to_string(residuals.held) + "/" + std::to_string(residuals.count) +
                                           " residual identities hold; corpus " + corpus.str());
  out.json["scenario"] = name;
  out.json["residuals"] = std::move(residuals.entries);
  if (traces.count) out.json["curvature_traces"] = std::move(traces.entries);
  out.json["corpus"] = Json{{"pairs", ctx.corpus().size()},
                            {"agree", corpus.pass},
                            {"disagree", corpus.fail},
                            {"inconclusive", corpus.inconclusive}};
  return out;
}

ScenarioResult complete_table(Context& ctx) {
  const Connection computed = lift_connection(ctx.g(), ctx.gamma(), LiftKind::Complete, ctx.cfg);
  ScenarioResult out = reconciliation_scenario(
      "complete-table", {reconcile(keyed(computed), reference_complete_connection(), ctx.cfg)}, false);

  // The generic connection against the lifted-from-base pattern.
  const Connection pattern = complete_lift_pattern(ctx.gamma());
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> slots;
  for (const auto& s : computed.nonzero()) slots.insert(s);
  for (const auto& s : pattern.nonzero()) slots.insert(s);
  IdentityCheck identities;
  for (const auto& [k, i, j] : slots) {
    identities.add(computed.key(k, i, j), computed(k, i, j), pattern(k, i, j), ctx.cfg, out.diagnostics,
                   "complete-pattern");
  }
  out.outcome = worst(out.outcome, identities.outcome);
  out.json["status"] = std::string(to_string(out.outcome));
  out.json["summary"] = out.json["summary"].get<std::string>() + "; pattern " + std::to_string(identities.held) +
                        "/" + std::to_string(identities.count) + " slots agree";
  out.json["pattern"] = std::move(identities.entries);
  return out;
}

Json equivalence_json(const std::string& label, const EquivalenceReport& rep) {
  Json j;
  j["pair"] = label;
  j["conditions"] = std::string(to_string(rep.condition_verdict));
  j["base"] = std::string(to_string(rep.base.verdict));
  j["sasaki"] = std::string(to_string(rep.sasaki.verdict));
  j["horizontal"] = std::string(to_string(rep.horizontal.verdict));
  j["complete"] = std::string(to_string(rep.complete.verdict));
  j["outcome"] = std::string(to_string(rep.outcome));
  return j;
}

ScenarioResult theorem_equivalence(Context& ctx) {
  ScenarioResult out;
  Json pairs = Json::array();
  CorpusTally tally;
  std::size_t harmonic = 0;
  auto count = [&](const std::string& label, const EquivalenceReport& rep) {
    pairs.push_back(equivalence_json(label, rep));
    harmonic += rep.base.verdict == Verdict::Harmonic;
    switch (rep.outcome) {
      case CheckOutcome::Pass:
        ++tally.pass;
        break;
      case CheckOutcome::Fail:
        ++tally.fail;
        out.diagnostics.push_back("theorem-equivalence: counterexample " + label);
        break;
      case CheckOutcome::Inconclusive:
        ++tally.inconclusive;
        out.diagnostics.push_back("theorem-equivalence: inconclusive on " + label);
        break;
    }
  };
  for (const auto& [label, rep] : ctx.corpus()) count(label, rep);
  count(example_g().describe() + " ; " + example_ghat().describe(),
        theorem_equivalence_check(example_g(), example_ghat(), ctx.cfg));
  count("abstract pair", theorem_equivalence_check(abstract_gks(), abstract_gks("h"), ctx.cfg));

  // Residuals of the abstract pair as multiples of the two condition expressions.
  const auto& [c1, c2] = ctx.conditions();
  const Expr weight = parse("1/(Y(t)^2*f(theta)^2)");
  const Expr rho1 = -c1;
  const Expr rho3 = -c2 * weight;
  IdentityCheck multiples;
  const HarmonicityReport& base = ctx.base();
  for (std::size_t k = 0; k < 4; ++k) {
    const Expr expected = k == 0 ? rho1 : k == 2 ? rho3 : Expr(0);
    multiples.add("base " + rho_key(base.chart, k), base.residuals[k], expected, ctx.cfg, out.diagnostics,
                  "condition-multiples");
  }
  for (LiftKind kind : {LiftKind::Sasaki, LiftKind::Horizontal, LiftKind::Complete}) {
    const HarmonicityReport rep = lifted_harmonicity(ctx.g(), ctx.ghat(), kind, ctx.cfg);
    // Complete lift: the traces move to the fiber slots and double.
    const std::size_t shift = kind == LiftKind::Complete ? 4 : 0;
    const Expr scale = kind == LiftKind::Complete ? Expr(2) : Expr(1);
    for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
      Expr expected = 0;
      if (k == shift) expected = scale * rho1;
      if (k == shift + 2) expected = scale * rho3;
      multiples.add(std::string(to_string(kind)) + " " + rho_key(rep.chart, k), rep.residuals[k], expected, ctx.cfg,
                    out.diagnostics, "condition-multiples");
    }
  }

  out.outcome = worst(tally.outcome(), multiples.outcome);
  out.json = results_head(out.outcome, plural(pairs.size(), "pair") + ": " + tally.str() + ", " +
                                           std::to_string(harmonic) + " harmonic; condition multiples " +
                                           std::to_string(multiples.held) + "/" + std::to_string(multiples.count));
  out.json["scenario"] = "theorem-equivalence";
  out.json["seed"] = ctx.cfg.seed;
  out.json["pairs"] = std::move(pairs);
  out.json["condition_multiples"] = std::move(multiples.entries);
  return out;
}

ScenarioResult run_scenario(Context& ctx, const std::string& name) {
  if (name == "gamma-matrices") return gamma_matrices(ctx);
  if (name == "inverse") return inverse_scenario(ctx);
  if (name == "traces") return traces_scenario(ctx);
  if (name == "example1") return example1(ctx);
  if (name == "curvature-table") return curvature_table(ctx);
  if (name == "sasaki") return adapted_lift(ctx, LiftKind::Sasaki);
  if (name == "horizontal") return adapted_lift(ctx, LiftKind::Horizontal);
  if (name == "complete-table") return complete_table(ctx);
  if (name == "theorem-equivalence") return theorem_equivalence(ctx);
  throw InvalidArgument("unknown scenario '" + name + "'");
}

}  // namespace

const std::vector<std::string>& paper_scenarios() {
  static const std::vector<std::string> names{"gamma-matrices", "inverse",    "traces",
                                              "example1",       "curvature-table", "sasaki",
                                              "horizontal",     "complete-table",  "theorem-equivalence"};
  return names;
}

Report paper_check_report(const std::string& scenario, const ProbeConfig& cfg) {
  cfg.validate();
  std::vector<std::string> names;
  if (scenario == "all") {
    names = paper_scenarios();
  } else if (std::find(paper_scenarios().begin(), paper_scenarios().end(), scenario) != paper_scenarios().end()) {
    names.push_back(scenario);
  } else {
    throw InvalidArgument("unknown scenario '" + scenario + "'");
  }
  Json env = envelope("paper-check", {});
  Context ctx(cfg);
  Json scenarios = Json::array();
  Outcome overall = Outcome::Ok;
  std::vector<std::string> diagnostics;
  std::size_t ok = 0;
  for (const auto& name : names) {
    ScenarioResult r = run_scenario(ctx, name);
    overall = worst(overall, r.outcome);
    ok += r.outcome == Outcome::Ok;
    diagnostics.insert(diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    scenarios.push_back(std::move(r.json));
  }
  std::string summary;
  if (names.size() == 1) {
    summary = scenarios[0]["summary"].get<std::string>();
  } else {
    summary = std::to_string(ok) + " of " + plural(names.size(), "scenario") + " ok";
  }
  Json body;
  body["scenarios"] = std::move(scenarios);
  return finish(std::move(env), overall, summary, std::move(body), diagnostics);
}

// ---------------------------------------------------------------------------
// text rendering

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool all_scalars(const Json& arr) {
  return std::all_of(arr.begin(), arr.end(), [](const Json& e) { return !e.is_structured(); });
}

void render(std::ostream& os, const std::string& key, const Json& v, std::size_t indent);

void render_members(std::ostream& os, const Json& obj, std::size_t indent) {
  for (const auto& [k, child] : obj.items()) render(os, k, child, indent);
}

void render(std::ostream& os, const std::string& key, const Json& v, std::size_t indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << pad << key << ": {}\n";
      return;
    }
    os << pad << key << ":\n";
    render_members(os, v, indent + 2);
    return;
  }
  if (!v.is_array()) {
    os << pad << key << ": " << scalar_text(v) << "\n";
    return;
  }
  if (v.empty()) {
    os << pad << key << ": []\n";
    return;
  }
  if (all_scalars(v)) {
    os << pad << key << ":";
    if (v.size() <= 8 && std::all_of(v.begin(), v.end(), [](const Json& e) { return scalar_text(e).size() < 16; })) {
      os << " [";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
      os << "]\n";
    } else {
      os << "\n";
      for (const auto& e : v) os << pad << "  - " << scalar_text(e) << "\n";
    }
    return;
  }
  os << pad << key << ":\n";
  for (const auto& e : v) {
    if (e.is_object() && e.size() == 2 && e.contains("key") && e.contains("value") && !e["value"].is_structured()) {
      os << pad << "  " << scalar_text(e["key"]) << " = " << scalar_text(e["value"]) << "\n";
      continue;
    }
    std::ostringstream item;
    if (e.is_object()) {
      render_members(item, e, indent + 4);
    } else {
      render(item, "item", e, indent + 4);
    }
    std::string text = item.str();
    if (text.size() >= indent + 4) text.replace(indent + 2, 2, "- ");
    os << text;
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render_members(os, report, 0);
  return os.str();
}

}  // namespace liftgeo
