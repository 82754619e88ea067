#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftgeo/lifts.hpp"

namespace liftgeo {

enum class Verdict { Harmonic, NotHarmonic, Undecided };

std::string_view to_string(Verdict v);

struct HarmonicityReport {
  Chart chart;
  // rho^k = sum_ij g^ij (dG^k_ij - G^k_ij), one per upper index.
  std::vector<Expr> residuals;
  std::vector<ZeroTest> tests;
  Verdict verdict = Verdict::Undecided;
  // NotHarmonic: the first index with a nonzero witness.
  std::optional<std::size_t> failing_index;
  // Undecided: every index whose zero test came back Unknown.
  std::vector<std::size_t> undecided;
  std::vector<std::string> notes;
  // Sasaki lifts only: tr(g^ij (dR^k_ij0 - R^k_ij0)) per base index k.
  std::vector<Expr> curvature_traces;

  std::string label(std::size_t k) const { return chart.index_label(k); }
};

// beta^c_ij = d_i d_j f^c - MG^k_ij d_k f^c + NG^c_ab d_i f^a d_j f^b with the
// target connection evaluated along the map. Indexed [c][i][j].
std::vector<Matrix> second_fundamental_form(const std::vector<Expr>& map, const Metric& source,
                                            const Metric& target, const ProbeConfig& cfg = {});

// tau^c = g^ij beta^c_ij.
std::vector<Expr> tension_field(const std::vector<Expr>& map, const Metric& source, const Metric& target,
                                const ProbeConfig& cfg = {});

// The trace residual for two connections over the same chart, given g^-1.
std::vector<Expr> trace_residuals(const Matrix& ginv, const Connection& d_connection,
                                  const Connection& g_connection);

// Applies the zero test to every residual and derives the verdict.
HarmonicityReport judge(const Chart& chart, std::vector<Expr> residuals, const ProbeConfig& cfg);

// Identity map (M, g) -> (M, d) for natural-frame metrics on one chart.
HarmonicityReport harmonicity_residuals(const Metric& g, const Metric& d, const ProbeConfig& cfg = {});

// Same question for the lifts of g and d to the tangent bundle.
HarmonicityReport lifted_harmonicity(const Metric& g, const Metric& d, LiftKind kind,
                                     const ProbeConfig& cfg = {});

// tr(g^ij (dR^k_ij0 - R^k_ij0)) per base index k; vanishes identically because
// the fiber-contracted curvature is antisymmetric in (i, j).
std::vector<Expr> curvature_trace_difference(const Metric& g, const Metric& d, const ProbeConfig& cfg = {});

}  // namespace liftgeo
