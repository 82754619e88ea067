#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "liftgeo/geometry.hpp"

namespace liftgeo {

// Coefficients G^k_ij. Natural-frame connections keep one slot per unordered
// lower pair, so lower symmetry holds by construction; adapted-frame tables
// keep ordered pairs.
class Connection {
 public:
  Connection() = default;
  Connection(Chart chart, Frame frame);

  const Chart& chart() const { return chart_; }
  Frame frame() const { return frame_; }
  bool lower_symmetric() const { return frame_ == Frame::Natural; }
  std::size_t dim() const { return n_; }

  const Expr& operator()(std::size_t k, std::size_t i, std::size_t j) const { return data_[slot(k, i, j)]; }
  void set(std::size_t k, std::size_t i, std::size_t j, Expr value);

  // Stored slots with a nonzero value: (k, i, j) with i <= j when symmetric.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> nonzero() const;

  // "Gamma^{k}_{i j}" with barred labels on tangent charts; symmetric
  // connections name the stored slot, so (k, j, i) gives the same key.
  std::string key(std::size_t k, std::size_t i, std::size_t j) const;

 private:
  std::size_t slot(std::size_t k, std::size_t i, std::size_t j) const;
  Chart chart_;
  Frame frame_ = Frame::Natural;
  std::size_t n_ = 0;
  std::vector<Expr> data_;
};

// R^h_ijk stored for i < j; (j, i) reads the negated slot and i == j reads 0.
class Riemann {
 public:
  Riemann() = default;
  explicit Riemann(Chart chart);

  const Chart& chart() const { return chart_; }
  std::size_t dim() const { return n_; }
  Expr operator()(std::size_t h, std::size_t i, std::size_t j, std::size_t k) const;
  void set(std::size_t h, std::size_t i, std::size_t j, std::size_t k, Expr value);

  std::string key(std::size_t h, std::size_t i, std::size_t j, std::size_t k) const;

 private:
  std::size_t slot(std::size_t h, std::size_t i, std::size_t j, std::size_t k) const;
  Chart chart_;
  std::size_t n_ = 0;
  std::vector<Expr> data_;
};

// Levi-Civita coefficients 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).
Connection christoffel(const Metric& g, const ProbeConfig& cfg = {});
// Same, with a precomputed inverse.
Connection christoffel(const Metric& g, const Matrix& inverse_metric);

// R^h_ijk = d_i G^h_jk - d_j G^h_ik + G^h_il G^l_jk - G^h_jl G^l_ik.
Riemann riemann(const Connection& c);

// R^h_ij0 = R^h_ijk u^k, keyed (h, i, j) with i < j.
using FiberCurvature = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Expr>;
FiberCurvature fiber_contract(const Riemann& r);
std::string fiber_key(std::size_t h, std::size_t i, std::size_t j);

// d_k g_ij - G^l_ki g_lj - G^l_kj g_il, indexed [k][i][j].
std::vector<Matrix> metric_compatibility_residual(const Metric& g, const Connection& c);

// R^h_ijk + R^h_jki + R^h_kij, indexed [h][i][j][k].
std::vector<std::vector<Matrix>> bianchi_residual(const Riemann& r);

}  // namespace liftgeo
