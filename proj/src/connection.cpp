#include "liftgeo/connection.hpp"

#include "liftgeo/error.hpp"

namespace liftgeo {

Connection::Connection(Chart chart, Frame frame)
    : chart_(std::move(chart)), frame_(frame), n_(chart_.dim()), data_(n_ * n_ * n_) {}

std::size_t Connection::slot(std::size_t k, std::size_t i, std::size_t j) const {
  if (k >= n_ || i >= n_ || j >= n_) throw InvalidArgument("connection index out of range");
  if (lower_symmetric() && i > j) std::swap(i, j);
  return (k * n_ + i) * n_ + j;
}

void Connection::set(std::size_t k, std::size_t i, std::size_t j, Expr value) {
  data_[slot(k, i, j)] = std::move(value);
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> Connection::nonzero() const {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = lower_symmetric() ? i : 0; j < n_; ++j) {
        if (!(*this)(k, i, j).is_zero()) out.emplace_back(k, i, j);
      }
    }
  }
  return out;
}

std::string Connection::key(std::size_t k, std::size_t i, std::size_t j) const {
  if (lower_symmetric() && i > j) std::swap(i, j);
  return "Gamma^{" + chart_.index_label(k) + "}_{" + chart_.index_label(i) + " " +
         chart_.index_label(j) + "}";
}

Riemann::Riemann(Chart chart) : chart_(std::move(chart)), n_(chart_.dim()), data_(n_ * n_ * n_ * n_) {}

std::size_t Riemann::slot(std::size_t h, std::size_t i, std::size_t j, std::size_t k) const {
  if (h >= n_ || i >= n_ || j >= n_ || k >= n_) throw InvalidArgument("curvature index out of range");
  return ((h * n_ + i) * n_ + j) * n_ + k;
}

Expr Riemann::operator()(std::size_t h, std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) {
    slot(h, i, j, k);
    return Expr();
  }
  if (i > j) return -data_[slot(h, j, i, k)];
  return data_[slot(h, i, j, k)];
}

void Riemann::set(std::size_t h, std::size_t i, std::size_t j, std::size_t k, Expr value) {
  if (i >= j) throw InvalidArgument("curvature components are stored for i < j only");
  data_[slot(h, i, j, k)] = std::move(value);
}

std::string Riemann::key(std::size_t h, std::size_t i, std::size_t j, std::size_t k) const {
  return "R^{" + chart_.index_label(h) + "}_{" + chart_.index_label(i) + " " + chart_.index_label(j) +
         " " + chart_.index_label(k) + "}";
}

Connection christoffel(const Metric& g, const ProbeConfig& cfg) {
  return christoffel(g, inverse(g, cfg));
}

Connection christoffel(const Metric& g, const Matrix& ginv) {
  if (g.frame != Frame::Natural) {
    throw InvalidArgument("the coordinate Christoffel formula needs a natural-frame metric");
  }
  const std::size_t n = g.dim();
  // dg[l][i][j] = d_l g_ij
  std::vector<Matrix> dg(n, zero_matrix(n));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        dg[l][i][j] = dg[l][j][i] = differentiate(g(i, j), g.chart[l]);
      }
    }
  }
  Connection c(g.chart, Frame::Natural);
  const Expr half = Expr(Rational(1, 2));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        std::vector<Expr> terms;
        for (std::size_t l = 0; l < n; ++l) {
          if (ginv[k][l].is_zero()) continue;
          const Expr bracket = dg[i][j][l] + dg[j][i][l] - dg[l][i][j];
          if (bracket.is_zero()) continue;
          terms.push_back(ginv[k][l] * bracket);
        }
        if (!terms.empty()) c.set(k, i, j, simplify(half * Expr::sum(std::move(terms))));
      }
    }
  }
  return c;
}

Riemann riemann(const Connection& c) {
  if (c.frame() != Frame::Natural) throw InvalidArgument("curvature needs a natural-frame connection");
  const std::size_t n = c.dim();
  const Chart& chart = c.chart();
  Riemann r(chart);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          std::vector<Expr> terms;
          if (!c(h, j, k).is_zero()) terms.push_back(differentiate_raw(c(h, j, k), chart[i]));
          if (!c(h, i, k).is_zero()) terms.push_back(-differentiate_raw(c(h, i, k), chart[j]));
          for (std::size_t l = 0; l < n; ++l) {
            if (!c(h, i, l).is_zero() && !c(l, j, k).is_zero()) terms.push_back(c(h, i, l) * c(l, j, k));
            if (!c(h, j, l).is_zero() && !c(l, i, k).is_zero()) terms.push_back(-(c(h, j, l) * c(l, i, k)));
          }
          if (!terms.empty()) r.set(h, i, j, k, simplify(Expr::sum(std::move(terms))));
        }
      }
    }
  }
  return r;
}

FiberCurvature fiber_contract(const Riemann& r) {
  const std::size_t n = r.dim();
  const std::vector<std::string> u = r.chart().fiber();
  FiberCurvature out;
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<Expr> terms;
        for (std::size_t k = 0; k < n; ++k) {
          Expr comp = r(h, i, j, k);
          if (!comp.is_zero()) terms.push_back(comp * sym(u[k]));
        }
        out[{h, i, j}] = simplify(Expr::sum(std::move(terms)));
      }
    }
  }
  return out;
}

std::string fiber_key(std::size_t h, std::size_t i, std::size_t j) {
  return "R^{" + std::to_string(h + 1) + "}_{" + std::to_string(i + 1) + " " + std::to_string(j + 1) +
         " 0}";
}

std::vector<Matrix> metric_compatibility_residual(const Metric& g, const Connection& c) {
  const std::size_t n = g.dim();
  if (c.dim() != n) throw InvalidArgument("connection and metric dimensions differ");
  std::vector<Matrix> out(n, zero_matrix(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Expr> terms{differentiate_raw(g(i, j), g.chart[k])};
        for (std::size_t l = 0; l < n; ++l) {
          if (!c(l, k, i).is_zero() && !g(l, j).is_zero()) terms.push_back(-(c(l, k, i) * g(l, j)));
          if (!c(l, k, j).is_zero() && !g(i, l).is_zero()) terms.push_back(-(c(l, k, j) * g(i, l)));
        }
        out[k][i][j] = simplify(Expr::sum(std::move(terms)));
      }
    }
  }
  return out;
}

std::vector<std::vector<Matrix>> bianchi_residual(const Riemann& r) {
  const std::size_t n = r.dim();
  std::vector<std::vector<Matrix>> out(n, std::vector<Matrix>(n, zero_matrix(n)));
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          out[h][i][j][k] = simplify(r(h, i, j, k) + r(h, j, k, i) + r(h, k, i, j));
        }
      }
    }
  }
  return out;
}

}  // namespace liftgeo
