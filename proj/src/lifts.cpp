#include "liftgeo/lifts.hpp"

#include "liftgeo/error.hpp"

namespace liftgeo {

std::string_view to_string(LiftKind k) {
  switch (k) {
    case LiftKind::Sasaki:
      return "sasaki";
    case LiftKind::Horizontal:
      return "horizontal";
    case LiftKind::Complete:
      return "complete";
  }
  return "sasaki";
}

std::optional<LiftKind> lift_kind_from_name(std::string_view name) {
  if (name == "sasaki") return LiftKind::Sasaki;
  if (name == "horizontal") return LiftKind::Horizontal;
  if (name == "complete") return LiftKind::Complete;
  return std::nullopt;
}

namespace {

void require_base(const Metric& g) {
  if (g.chart.kind() != ChartKind::Base || g.frame != Frame::Natural) {
    throw InvalidArgument("lifts start from a natural-frame metric on a base chart");
  }
}

// u^l d_l e
Expr fiber_derivative(const Expr& e, const Chart& base) {
  const std::vector<std::string> u = base.fiber();
  std::vector<Expr> terms;
  for (std::size_t l = 0; l < base.dim(); ++l) {
    Expr d = differentiate(e, base[l]);
    if (!d.is_zero()) terms.push_back(sym(u[l]) * d);
  }
  return simplify(Expr::sum(std::move(terms)));
}

}  // namespace

std::vector<Expr> vertical_lift(const std::vector<Expr>& field) {
  std::vector<Expr> out(field.size());
  out.insert(out.end(), field.begin(), field.end());
  return out;
}

std::vector<Expr> horizontal_lift_vector(const std::vector<Expr>& field, const Connection& c) {
  const std::size_t m = field.size();
  if (c.dim() != m) throw InvalidArgument("vector field and connection dimensions differ");
  const std::vector<std::string> u = c.chart().fiber();
  std::vector<Expr> out(field);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Expr> terms;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t k = 0; k < m; ++k) {
        if (c(i, a, k).is_zero() || field[k].is_zero()) continue;
        terms.push_back(-(sym(u[a]) * c(i, a, k) * field[k]));
      }
    }
    out.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return out;
}

LiftedMetric lift_metric(const Metric& g, LiftKind kind) {
  require_base(g);
  const std::size_t m = g.dim();
  LiftedMetric out;
  out.kind = kind;
  Metric& lifted = out.metric;
  lifted.chart = Chart::tangent(g.chart);
  lifted.constants = g.constants;
  lifted.functions = g.functions;
  lifted.components = zero_matrix(2 * m);
  lifted.frame = kind == LiftKind::Complete ? Frame::Natural : Frame::Adapted;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Expr& gij = g(i, j);
      switch (kind) {
        case LiftKind::Sasaki:
          lifted.components[i][j] = gij;
          lifted.components[i + m][j + m] = gij;
          break;
        case LiftKind::Horizontal:
          lifted.components[i][j + m] = gij;
          lifted.components[i + m][j] = gij;
          break;
        case LiftKind::Complete:
          lifted.components[i][j] = fiber_derivative(gij, g.chart);
          lifted.components[i][j + m] = gij;
          lifted.components[i + m][j] = gij;
          break;
      }
    }
  }
  return out;
}

Connection lift_connection(const Metric& g, LiftKind kind, const ProbeConfig& cfg) {
  require_base(g);
  return lift_connection(g, christoffel(g, cfg), kind, cfg);
}

Connection lift_connection(const Metric& g, const Connection& base, LiftKind kind, const ProbeConfig& cfg) {
  require_base(g);
  const std::size_t m = g.dim();
  const Chart tangent = Chart::tangent(g.chart);
  if (kind == LiftKind::Complete) return christoffel(lift_metric(g, kind).metric, cfg);

  Connection out(tangent, Frame::Adapted);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        out.set(k, i, j, base(k, i, j));
        if (kind == LiftKind::Sasaki) {
          out.set(k + m, i, j + m, base(k, i, j));
        } else {
          out.set(k, i, j + m, base(k, i, j));
        }
      }
    }
  }
  if (kind == LiftKind::Horizontal) return out;

  const Riemann r = riemann(base);
  const std::vector<std::string> u = tangent.fiber();
  const Expr half(Rational(1, 2));
  // sum_h R^k_{a b c} u^h with h in the slot chosen by `at`
  auto contracted = [&](auto at) {
    std::vector<Expr> terms;
    for (std::size_t h = 0; h < m; ++h) {
      Expr comp = at(h);
      if (!comp.is_zero()) terms.push_back(comp * sym(u[h]));
    }
    return Expr::sum(std::move(terms));
  };
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        Expr a = contracted([&](std::size_t h) { return r(k, h, j, i); });
        if (!a.is_zero()) out.set(k, i, j + m, simplify(half * a));
        Expr b = contracted([&](std::size_t h) { return r(k, h, i, j); });
        if (!b.is_zero()) out.set(k, i + m, j, simplify(half * b));
        Expr c = contracted([&](std::size_t h) { return r(k, i, j, h); });
        if (!c.is_zero()) out.set(k + m, i, j, simplify(-half * c));
      }
    }
  }
  return out;
}

Connection complete_lift_pattern(const Connection& base) {
  const Chart& chart = base.chart();
  if (chart.kind() != ChartKind::Base || base.frame() != Frame::Natural) {
    throw InvalidArgument("complete lift pattern needs a natural-frame base connection");
  }
  const std::size_t m = base.dim();
  Connection out(Chart::tangent(chart), Frame::Natural);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        const Expr& gamma = base(k, i, j);
        out.set(k, i, j, gamma);
        out.set(k + m, i, j, fiber_derivative(gamma, chart));
      }
      for (std::size_t j = 0; j < m; ++j) out.set(k + m, i, j + m, base(k, i, j));
    }
  }
  return out;
}

}  // namespace liftgeo
