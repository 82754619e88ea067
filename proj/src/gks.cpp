#include "liftgeo/gks.hpp"

#include <algorithm>
#include <array>

#include "liftgeo/error.hpp"

namespace liftgeo {

std::string_view to_string(GksVariant v) {
  switch (v) {
    case GksVariant::Custom:
      return "custom";
    case GksVariant::KantowskiSachs:
      return "kantowski-sachs";
    case GksVariant::BianchiIII:
      return "bianchi-iii";
    case GksVariant::BianchiI:
      return "bianchi-i";
  }
  return "custom";
}

std::string_view to_string(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::Pass:
      return "pass";
    case CheckOutcome::Fail:
      return "fail";
    case CheckOutcome::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

const std::vector<std::string>& gks_coordinates() {
  static const std::vector<std::string> coords{"t", "r", "theta", "phi"};
  return coords;
}

namespace {

std::optional<Expr> variant_body(GksVariant v) {
  switch (v) {
    case GksVariant::KantowskiSachs:
      return Expr::known(KnownFn::Sin, sym("theta"));
    case GksVariant::BianchiIII:
      return Expr::known(KnownFn::Sinh, sym("theta"));
    case GksVariant::BianchiI:
      return sym("theta");
    case GksVariant::Custom:
      break;
  }
  return std::nullopt;
}

GksVariant detect_variant(const FuncSymbol& f) {
  if (!f.definition) return GksVariant::Custom;
  for (GksVariant v : {GksVariant::KantowskiSachs, GksVariant::BianchiIII, GksVariant::BianchiI}) {
    if (simplify(*f.definition - *variant_body(v)).is_zero()) return v;
  }
  return GksVariant::Custom;
}

FuncSymbol abstract_fn(std::string name, std::string argument) {
  return FuncSymbol{std::move(name), std::move(argument), std::nullopt};
}

std::string body_text(const FuncSymbol& f) {
  return f.definition ? f.definition->str() : f.name + "(" + f.argument + ")";
}

}  // namespace

void GksSpec::check() const {
  const std::array<std::pair<const FuncSymbol*, const char*>, 3> slots{
      {{&X, "t"}, {&Y, "t"}, {&f, "theta"}}};
  for (const auto& [fn, arg] : slots) {
    if (!is_identifier(fn->name)) throw InvalidArgument("invalid function name '" + fn->name + "'");
    if (fn->argument != arg) {
      throw InvalidArgument(fn->name + " must be a function of " + std::string(arg));
    }
    if (!fn->definition) continue;
    for (const auto& s : free_symbols(*fn->definition)) {
      if (s == fn->argument) continue;
      if (std::find(constants.begin(), constants.end(), s) != constants.end()) continue;
      throw InvalidArgument("body of " + fn->name + " references '" + s + "'");
    }
  }
  if (variant != GksVariant::Custom && detect_variant(f) != variant) {
    throw InvalidArgument("f does not match the " + std::string(to_string(variant)) + " variant");
  }
}

std::string GksSpec::describe() const {
  return "X=" + body_text(X) + ", Y=" + body_text(Y) + ", f=" + body_text(f);
}

GksSpec abstract_gks(const std::string& suffix) {
  GksSpec s;
  s.X = abstract_fn("X" + suffix, "t");
  s.Y = abstract_fn("Y" + suffix, "t");
  s.f = abstract_fn("f" + suffix, "theta");
  return s;
}

GksSpec variant_gks(GksVariant v, const std::string& suffix) {
  GksSpec s = abstract_gks(suffix);
  s.f.definition = variant_body(v);
  s.variant = v;
  return s;
}

GksSpec gks_from_bodies(const std::optional<std::string>& x, const std::optional<std::string>& y,
                        const std::optional<std::string>& f, const std::string& suffix,
                        const std::vector<std::string>& constants) {
  GksSpec s = abstract_gks(suffix);
  s.constants = constants;
  auto assign = [&](FuncSymbol& fn, const std::optional<std::string>& text) {
    if (!text) return;
    Expr body = parse(*text);
    for (const auto& sname : free_symbols(body)) {
      if (sname == fn.argument) continue;
      const auto& coords = gks_coordinates();
      if (std::find(coords.begin(), coords.end(), sname) != coords.end()) continue;
      if (std::find(s.constants.begin(), s.constants.end(), sname) == s.constants.end()) {
        s.constants.push_back(sname);
      }
    }
    fn.definition = std::move(body);
  };
  assign(s.X, x);
  assign(s.Y, y);
  assign(s.f, f);
  std::sort(s.constants.begin(), s.constants.end());
  s.variant = detect_variant(s.f);
  s.check();
  return s;
}

Metric build_gks(const GksSpec& spec) {
  spec.check();
  const Expr X = spec.X.apply();
  const Expr Y = spec.Y.apply();
  const Expr f = spec.f.apply();
  Metric g = diagonal_metric(Chart::base(gks_coordinates()),
                             {Expr(1), -pow(X, 2), -pow(Y, 2), -(pow(Y, 2) * pow(f, 2))});
  g.constants = spec.constants;
  for (const FuncSymbol* fn : {&spec.X, &spec.Y, &spec.f}) g.functions.emplace(fn->name, *fn);
  return g;
}

std::pair<Expr, Expr> harmonicity_conditions(const GksSpec& g, const GksSpec& ghat) {
  const Expr X = g.X.apply(), Y = g.Y.apply(), f = g.f.apply();
  const Expr Xh = ghat.X.apply(), Yh = ghat.Y.apply(), fh = ghat.f.apply();
  const Expr dX = differentiate(X, "t"), dY = differentiate(Y, "t"), df = differentiate(f, "theta");
  const Expr dXh = differentiate(Xh, "t"), dYh = differentiate(Yh, "t"), dfh = differentiate(fh, "theta");
  const Expr first = (dXh * Xh - dX * X) / pow(X, 2) + (dYh * Yh - dY * Y) / pow(Y, 2) +
                     (dYh * Yh * pow(fh, 2) - dY * Y * pow(f, 2)) / (pow(Y, 2) * pow(f, 2));
  const Expr second = -(fh * dfh) + f * df;
  return {simplify(first), simplify(second)};
}

namespace {

Verdict joint_verdict(const ZeroTest& a, const ZeroTest& b) {
  if (a.verdict == ZeroVerdict::NonZero || b.verdict == ZeroVerdict::NonZero) return Verdict::NotHarmonic;
  if (a.verdict == ZeroVerdict::Zero && b.verdict == ZeroVerdict::Zero) return Verdict::Harmonic;
  return Verdict::Undecided;
}

TheoremCheck compare(std::string name, Verdict expected, Verdict actual) {
  TheoremCheck c{std::move(name), expected, actual, CheckOutcome::Pass};
  if (expected == Verdict::Undecided || actual == Verdict::Undecided) {
    c.outcome = CheckOutcome::Inconclusive;
  } else if (expected != actual) {
    c.outcome = CheckOutcome::Fail;
  }
  return c;
}

}  // namespace

EquivalenceReport theorem_equivalence_check(const GksSpec& g, const GksSpec& ghat, const ProbeConfig& cfg) {
  EquivalenceReport rep;
  const Metric mg = build_gks(g);
  const Metric md = build_gks(ghat);
  rep.conditions = harmonicity_conditions(g, ghat);
  rep.condition_tests = {is_identically_zero(rep.conditions.first, cfg),
                         is_identically_zero(rep.conditions.second, cfg)};
  rep.condition_verdict = joint_verdict(rep.condition_tests.first, rep.condition_tests.second);
  rep.base = harmonicity_residuals(mg, md, cfg);
  rep.sasaki = lifted_harmonicity(mg, md, LiftKind::Sasaki, cfg);
  rep.horizontal = lifted_harmonicity(mg, md, LiftKind::Horizontal, cfg);
  rep.complete = lifted_harmonicity(mg, md, LiftKind::Complete, cfg);
  rep.checks.push_back(compare("base-vs-conditions", rep.condition_verdict, rep.base.verdict));
  rep.checks.push_back(compare("sasaki-vs-base", rep.base.verdict, rep.sasaki.verdict));
  rep.checks.push_back(compare("horizontal-vs-base", rep.base.verdict, rep.horizontal.verdict));
  rep.checks.push_back(compare("complete-vs-base", rep.base.verdict, rep.complete.verdict));
  rep.outcome = CheckOutcome::Pass;
  for (const auto& c : rep.checks) {
    if (c.outcome == CheckOutcome::Fail) {
      rep.outcome = CheckOutcome::Fail;
      break;
    }
    if (c.outcome == CheckOutcome::Inconclusive) rep.outcome = CheckOutcome::Inconclusive;
  }
  return rep;
}

std::vector<std::pair<GksSpec, GksSpec>> gks_corpus(std::uint64_t seed, std::size_t count) {
  static const std::array<const char*, 6> scale{"1", "2", "3/2", "t", "t^2", "1 + t^2"};
  static const std::array<const char*, 3> constants{"1", "2", "3/2"};
  static const std::array<const char*, 3> shape{"sin(theta)", "sinh(theta)", "theta"};
  std::vector<std::pair<GksSpec, GksSpec>> out;
  for (std::size_t n = 0; n < count; ++n) {
    std::uint64_t state = mix64(seed ^ mix64(0x6b73ULL + n));
    auto draw = [&state](std::size_t size) {
      state = mix64(state);
      return static_cast<std::size_t>(state % size);
    };
    const std::size_t gx = draw(scale.size()), gy = draw(scale.size()), gf = draw(shape.size());
    std::size_t hx = 0, hy = 0, hf = 0;
    // Harmonic partner: same shape function, and constant scale factors may
    // change to another constant.
    if (draw(3) == 0) {
      hx = gx < constants.size() ? draw(constants.size()) : gx;
      hy = gy < constants.size() ? draw(constants.size()) : gy;
      hf = gf;
    } else {
      hx = draw(scale.size());
      hy = draw(scale.size());
      hf = draw(shape.size());
    }
    out.emplace_back(gks_from_bodies(scale[gx], scale[gy], shape[gf]),
                     gks_from_bodies(scale[hx], scale[hy], shape[hf], "h"));
  }
  return out;
}

std::vector<std::pair<std::string, Metric>> property_corpus() {
  std::vector<std::pair<std::string, Metric>> out;
  out.emplace_back("flat", diagonal_metric(Chart::base({"x", "y", "z", "w"}), {1, 1, 1, 1}));
  out.emplace_back("sphere", diagonal_metric(Chart::base({"theta", "phi"}),
                                             {1, pow(Expr::known(KnownFn::Sin, sym("theta")), 2)}));
  out.emplace_back("gks", build_gks(abstract_gks()));
  out.emplace_back("kantowski-sachs", build_gks(variant_gks(GksVariant::KantowskiSachs)));
  out.emplace_back("bianchi-iii", build_gks(variant_gks(GksVariant::BianchiIII)));
  out.emplace_back("bianchi-i", build_gks(variant_gks(GksVariant::BianchiI)));
  out.emplace_back("constant-bianchi-iii", build_gks(gks_from_bodies("c1", "c2", "sinh(theta)", "", {})));
  return out;
}

std::string inverse_key(const Chart& chart, std::size_t i, std::size_t j) {
  return "g^{" + chart.index_label(i) + " " + chart.index_label(j) + "}";
}

ReferenceTable reference_christoffel() {
  return {"christoffel",
          {{"Gamma^{1}_{2 2}", "X'(t)*X(t)", ""},
           {"Gamma^{1}_{3 3}", "Y'(t)*Y(t)", ""},
           {"Gamma^{1}_{4 4}", "f(theta)^2*Y'(t)*Y(t)", ""},
           {"Gamma^{2}_{1 2}", "X'(t)/X(t)", ""},
           {"Gamma^{3}_{1 3}", "Y'(t)/Y(t)", ""},
           {"Gamma^{3}_{4 4}", "-f'(theta)*f(theta)", ""},
           {"Gamma^{4}_{1 4}", "Y'(t)/Y(t)", ""},
           {"Gamma^{4}_{3 4}", "f'(theta)/f(theta)", ""}}};
}

namespace {

// Every upper-triangle entry, "0" where the listed table has nothing.
ReferenceTable full_matrix_table(std::string name, const Chart& chart,
                                 const std::vector<std::tuple<std::size_t, std::size_t, std::string>>& nonzero) {
  ReferenceTable table{std::move(name), {}};
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    for (std::size_t j = i; j < chart.dim(); ++j) {
      std::string value = "0";
      for (const auto& [a, b, text] : nonzero) {
        if (a == i && b == j) value = text;
      }
      table.entries.push_back({inverse_key(chart, i, j), value, ""});
    }
  }
  return table;
}

}  // namespace

ReferenceTable reference_inverse() {
  return full_matrix_table("inverse", Chart::base(gks_coordinates()),
                           {{0, 0, "1"},
                            {1, 1, "1/(-X(t)^2)"},
                            {2, 2, "1/(-Y(t)^2)"},
                            {3, 3, "1/(-Y(t)^2*f(theta)^2)"}});
}

ReferenceTable reference_complete_inverse() {
  return full_matrix_table(
      "complete-inverse", Chart::tangent(Chart::base(gks_coordinates())),
      {{0, 4, "1"},
       {1, 5, "-1/X(t)^2"},
       {2, 6, "-1/Y(t)^2"},
       {3, 7, "-1/(Y(t)^2*f(theta)^2)"},
       {5, 5, "2*u1*X'(t)/X(t)^3"},
       {6, 6, "2*u1*Y'(t)/Y(t)^3"},
       {7, 7, "2*(u1*f(theta)*Y'(t) + u3*f'(theta)*Y(t))/(Y(t)^3*f(theta)^3)"}});
}

ReferenceTable reference_traces() {
  return {"traces",
          {{"rho^{1}",
            "-(1/X(t)^2*(Xh'(t)*Xh(t) - X'(t)*X(t)) + 1/Y(t)^2*(Yh'(t)*Yh(t) - Y'(t)*Y(t))"
            " + 1/(Y(t)^2*f(theta)^2)*(Yh'(t)*Yh(t)*fh(theta)^2 - Y'(t)*Y(t)*f(theta)^2))",
            ""},
           {"rho^{2}", "0", ""},
           {"rho^{3}", "-1/(Y(t)^2*f(theta)^2)*(-fh(theta)*fh'(theta) + f(theta)*f'(theta))", ""},
           {"rho^{4}", "0", ""}}};
}

ReferenceTable reference_curvature() {
  return {"curvature",
          {{"R^{1}_{1 2 0}", "u2*X(t)*X''(t)", ""},
           {"R^{2}_{1 2 0}", "u1*X''(t)/X(t)", ""},
           {"R^{1}_{1 3 0}", "u3*Y(t)*Y''(t)", ""},
           {"R^{3}_{1 3 0}", "u1*Y''(t)/Y(t)", ""},
           {"R^{1}_{1 4 0}", "u4*f(theta)^2*Y(t)*Y''(t)", ""},
           {"R^{4}_{1 4 0}", "u1*Y''(t)/Y(t)", ""},
           {"R^{2}_{2 3 0}", "-u3*X'(t)*Y(t)*Y'(t)/X(t)",
            "printed with the wrong sign: the theta and phi components must agree, and R^{2}_{2 4 0} "
            "carries +u4*f^2*X'*Y*Y'/X"},
           {"R^{3}_{2 3 0}", "-u2*X(t)*X'(t)*Y'(t)/Y(t)", ""},
           {"R^{2}_{2 4 0}", "u4*f(theta)^2*X'(t)*Y(t)*Y'(t)/X(t)", ""},
           {"R^{4}_{2 4 0}", "-u2*X(t)*X'(t)*Y'(t)/Y(t)", ""},
           {"R^{3}_{3 4 0}", "u4*f(theta)*(f(theta)*Y'(t)^2 - f''(theta))", ""},
           {"R^{4}_{3 4 0}", "-u3*(f(theta)*Y'(t)^2 - f''(theta))/f(theta)", ""}}};
}

ReferenceTable reference_complete_connection() {
  return {"complete-connection",
          {{"Gamma^{1}_{2 2}", "X(t)*X'(t)", ""},
           {"Gamma^{1}_{3 3}", "Y'(t)*Y(t)", ""},
           {"Gamma^{1}_{4 4}", "Y(t)*Y'(t)*f(theta)^2", ""},
           {"Gamma^{2}_{1 2}", "X'(t)/X(t)", ""},
           {"Gamma^{3}_{1 3}", "Y'(t)/Y(t)", ""},
           {"Gamma^{3}_{4 4}", "-f(theta)*f'(theta)", ""},
           {"Gamma^{4}_{1 4}", "Y'(t)/Y(t)", ""},
           {"Gamma^{4}_{3 4}", "f'(theta)/f(theta)", ""},
           {"Gamma^{1bar}_{2 2}", "u1*(X(t)*X''(t) + X'(t)^2)", ""},
           {"Gamma^{1bar}_{3 3}", "u1*(Y(t)*Y''(t) + Y'(t)^2)", ""},
           {"Gamma^{1bar}_{4 4}",
            "f(theta)*(u1*f(theta)*Y'(t)^2 + 2*u3*Y(t)*Y'(t)*f'(theta) + u1*Y(t)*f(theta)*Y''(t))", ""},
           {"Gamma^{2bar}_{1 2}", "u1*(X(t)*X''(t) + X'(t)^2)/X(t)^2",
            "printed with + where u^l d_l Gamma^2_12 = u1*(X*X'' - X'^2)/X^2 gives -"},
           {"Gamma^{2bar}_{2 1bar}", "X'(t)/X(t)", ""},
           {"Gamma^{2bar}_{1 2bar}", "X'(t)/X(t)", ""},
           {"Gamma^{3bar}_{1 3}", "u1*(Y(t)*Y''(t) - Y'(t)^2)/Y(t)^2", ""},
           {"Gamma^{3bar}_{3 1bar}", "Y'(t)/Y(t)", ""},
           {"Gamma^{3bar}_{1 3bar}", "Y'(t)/Y(t)", ""},
           {"Gamma^{3bar}_{4 4}", "-u3*(f'(theta)^2 + f(theta)*f''(theta))", ""},
           {"Gamma^{3bar}_{4 4bar}", "f(theta)*f'(theta)",
            "printed as +f*f' where the mixed slot must equal Gamma^3_44 = -f*f'"},
           {"Gamma^{4bar}_{1 4}", "u1*(Y(t)*Y''(t) - Y'(t)^2)/Y(t)^2", ""},
           {"Gamma^{4bar}_{3 4}", "u3*(f(theta)*f''(theta) - f'(theta)^2)/f(theta)^2", ""},
           {"Gamma^{4bar}_{4 1bar}", "Y'(t)/Y(t)", ""},
           {"Gamma^{4bar}_{4 3bar}", "f'(theta)/f(theta)", ""}}};
}

}  // namespace liftgeo
