#include "liftgeo/harmonicity.hpp"

#include "liftgeo/error.hpp"

namespace liftgeo {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Harmonic:
      return "Harmonic";
    case Verdict::NotHarmonic:
      return "NotHarmonic";
    case Verdict::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

std::vector<Matrix> second_fundamental_form(const std::vector<Expr>& map, const Metric& source,
                                            const Metric& target, const ProbeConfig& cfg) {
  const std::size_t n = source.dim();
  const std::size_t p = target.dim();
  if (map.size() != p) throw InvalidArgument("map has " + std::to_string(map.size()) +
                                             " components but the target has dimension " + std::to_string(p));
  const Connection mc = christoffel(source, cfg);
  const Connection nc = christoffel(target, cfg);

  Bindings along;
  for (std::size_t a = 0; a < p; ++a) along.symbols.emplace(target.chart[a], map[a]);

  std::vector<std::vector<Expr>> df(p, std::vector<Expr>(n));
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t i = 0; i < n; ++i) df[c][i] = differentiate(map[c], source.chart[i]);
  }

  std::vector<Matrix> beta(p, zero_matrix(n));
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<std::vector<Expr>> pulled(p, std::vector<Expr>(p));
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a; b < p; ++b) {
        if (!nc(c, a, b).is_zero()) pulled[a][b] = pulled[b][a] = substitute(nc(c, a, b), along);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        std::vector<Expr> terms{differentiate_raw(df[c][j], source.chart[i])};
        for (std::size_t k = 0; k < n; ++k) {
          if (!mc(k, i, j).is_zero() && !df[c][k].is_zero()) terms.push_back(-(mc(k, i, j) * df[c][k]));
        }
        for (std::size_t a = 0; a < p; ++a) {
          if (df[a][i].is_zero()) continue;
          for (std::size_t b = 0; b < p; ++b) {
            if (pulled[a][b].is_zero() || df[b][j].is_zero()) continue;
            terms.push_back(pulled[a][b] * df[a][i] * df[b][j]);
          }
        }
        beta[c][i][j] = beta[c][j][i] = simplify(Expr::sum(std::move(terms)));
      }
    }
  }
  return beta;
}

std::vector<Expr> tension_field(const std::vector<Expr>& map, const Metric& source, const Metric& target,
                                const ProbeConfig& cfg) {
  const Matrix ginv = inverse(source, cfg);
  const std::vector<Matrix> beta = second_fundamental_form(map, source, target, cfg);
  std::vector<Expr> tau;
  for (const auto& b : beta) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < ginv.size(); ++i) {
      for (std::size_t j = 0; j < ginv.size(); ++j) {
        if (!ginv[i][j].is_zero() && !b[i][j].is_zero()) terms.push_back(ginv[i][j] * b[i][j]);
      }
    }
    tau.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return tau;
}

std::vector<Expr> trace_residuals(const Matrix& ginv, const Connection& dc, const Connection& gc) {
  const std::size_t n = ginv.size();
  if (dc.dim() != n || gc.dim() != n) throw InvalidArgument("connection dimensions differ from the metric");
  std::vector<Expr> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (ginv[i][j].is_zero()) continue;
        const Expr& a = dc(k, i, j);
        const Expr& b = gc(k, i, j);
        if (a.is_zero() && b.is_zero()) continue;
        terms.push_back(ginv[i][j] * (a - b));
      }
    }
    out.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return out;
}

HarmonicityReport judge(const Chart& chart, std::vector<Expr> residuals, const ProbeConfig& cfg) {
  HarmonicityReport rep;
  rep.chart = chart;
  rep.residuals = std::move(residuals);
  for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
    rep.tests.push_back(is_identically_zero(rep.residuals[k], cfg));
    const ZeroVerdict v = rep.tests.back().verdict;
    if (v == ZeroVerdict::NonZero && !rep.failing_index) rep.failing_index = k;
    if (v == ZeroVerdict::Unknown) rep.undecided.push_back(k);
  }
  if (rep.failing_index) {
    rep.verdict = Verdict::NotHarmonic;
  } else if (!rep.undecided.empty()) {
    rep.verdict = Verdict::Undecided;
  } else {
    rep.verdict = Verdict::Harmonic;
  }
  return rep;
}

namespace {

void require_pair(const Metric& g, const Metric& d) {
  if (!(g.chart == d.chart)) throw InvalidArgument("metrics live on different charts");
  if (g.frame != d.frame) throw InvalidArgument("metrics use different frames");
  if (g.frame != Frame::Natural) throw InvalidArgument("base harmonicity needs natural-frame metrics");
}

}  // namespace

HarmonicityReport harmonicity_residuals(const Metric& g, const Metric& d, const ProbeConfig& cfg) {
  require_pair(g, d);
  const Matrix ginv = inverse(g, cfg);
  const Connection gc = christoffel(g, ginv);
  const Connection dc = christoffel(d, cfg);
  return judge(g.chart, trace_residuals(ginv, dc, gc), cfg);
}

std::vector<Expr> curvature_trace_difference(const Metric& g, const Metric& d, const ProbeConfig& cfg) {
  require_pair(g, d);
  const Matrix ginv = inverse(g, cfg);
  const FiberCurvature rg = fiber_contract(riemann(christoffel(g, ginv)));
  const FiberCurvature rd = fiber_contract(riemann(christoffel(d, cfg)));
  const std::size_t m = g.dim();
  std::vector<Expr> out;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j || ginv[i][j].is_zero()) continue;
        const auto key = std::make_tuple(k, std::min(i, j), std::max(i, j));
        Expr diff = rd.at(key) - rg.at(key);
        terms.push_back(ginv[i][j] * (i < j ? diff : -diff));
      }
    }
    out.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return out;
}

HarmonicityReport lifted_harmonicity(const Metric& g, const Metric& d, LiftKind kind, const ProbeConfig& cfg) {
  require_pair(g, d);
  const LiftedMetric lg = lift_metric(g, kind);
  const Matrix lginv = inverse(lg.metric, cfg);
  const Connection gc = lift_connection(g, kind, cfg);
  const Connection dc = lift_connection(d, kind, cfg);
  HarmonicityReport rep = judge(lg.metric.chart, trace_residuals(lginv, dc, gc), cfg);
  if (kind == LiftKind::Sasaki) {
    rep.curvature_traces = curvature_trace_difference(g, d, cfg);
    bool all_zero = true;
    for (const auto& e : rep.curvature_traces) all_zero = all_zero && e.is_zero();
    rep.notes.push_back(all_zero ? "curvature trace difference tr(g^ij (dR^k_ij0 - R^k_ij0)) vanishes identically"
                                 : "curvature trace difference tr(g^ij (dR^k_ij0 - R^k_ij0)) does not cancel");
    rep.notes.push_back(
        "barred residuals are read as tr(g^-1 (dGamma^kbar - Gamma^kbar)); a printed variant mixing "
        "dGamma^k with Gamma^kbar is treated as a typo");
  } else if (kind == LiftKind::Horizontal) {
    rep.notes.push_back(
        "connection follows the tabulated adapted-frame form (k; i jbar) = Gamma^k_ij; the Levi-Civita "
        "connection of the lifted metric carries that block at upper index kbar together with "
        "(kbar; i j) = u^h R^k_hij, which moves the base trace from rho^k to rho^kbar and leaves the verdict unchanged");
  }
  return rep;
}

}  // namespace liftgeo
