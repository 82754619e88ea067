#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "liftgeo/connection.hpp"

namespace liftgeo {

enum class LiftKind { Sasaki, Horizontal, Complete };

std::string_view to_string(LiftKind k);
std::optional<LiftKind> lift_kind_from_name(std::string_view name);

// Index i+m stands for the barred (fiber) index of i throughout.
struct LiftedMetric {
  LiftKind kind = LiftKind::Sasaki;
  Metric metric;
};

// (0, ..., 0, X^1, ..., X^m).
std::vector<Expr> vertical_lift(const std::vector<Expr>& field);

// (X^i ; -u^a G^i_ak X^k), simplified.
std::vector<Expr> horizontal_lift_vector(const std::vector<Expr>& field, const Connection& c);

// Sasaki: diag(g, g) in the adapted frame. Horizontal: (0, g; g, 0) in the
// adapted frame. Complete: (u^k d_k g, g; g, 0) in natural coordinates.
LiftedMetric lift_metric(const Metric& g, LiftKind kind);

// Sasaki and horizontal connections come from the closed adapted-frame tables
// in terms of the base connection and curvature; the complete lift is the
// coordinate Christoffel connection of the complete lift metric.
Connection lift_connection(const Metric& g, LiftKind kind, const ProbeConfig& cfg = {});

// Same, reusing an already computed base connection.
Connection lift_connection(const Metric& g, const Connection& base, LiftKind kind,
                           const ProbeConfig& cfg = {});

// The pattern the complete-lift connection should have: G on unbarred slots and
// the mixed barred slots, u^l d_l G^k_ij on (kbar; i, j), zero elsewhere.
Connection complete_lift_pattern(const Connection& base);

}  // namespace liftgeo
