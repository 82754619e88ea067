#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftgeo/harmonicity.hpp"

namespace liftgeo {

// f(theta) = sin, sinh or theta name the Kantowski-Sachs, Bianchi III and
// Bianchi I members of the family.
enum class GksVariant { Custom, KantowskiSachs, BianchiIII, BianchiI };

std::string_view to_string(GksVariant v);

// g = dt^2 - X(t)^2 dr^2 - Y(t)^2 (dtheta^2 + f(theta)^2 dphi^2)
struct GksSpec {
  FuncSymbol X;
  FuncSymbol Y;
  FuncSymbol f;
  GksVariant variant = GksVariant::Custom;
  std::vector<std::string> constants;

  // Throws InvalidArgument when a function has the wrong argument or the
  // variant disagrees with the body of f.
  void check() const;
  // Short human-readable form, e.g. "X=t^2, Y=1, f=sin(theta)".
  std::string describe() const;
};

const std::vector<std::string>& gks_coordinates();  // t r theta phi

// X, Y, f all abstract. A non-empty suffix renames them (Xh, Yh, fh).
GksSpec abstract_gks(const std::string& suffix = "");
GksSpec variant_gks(GksVariant v, const std::string& suffix = "");
// Bodies given as expression text; nullopt keeps the function abstract.
GksSpec gks_from_bodies(const std::optional<std::string>& x, const std::optional<std::string>& y,
                        const std::optional<std::string>& f, const std::string& suffix = "",
                        const std::vector<std::string>& constants = {});

Metric build_gks(const GksSpec& spec);

// Left-hand sides of the two conditions under which ghat is harmonic with
// respect to g:
//   (Xh'Xh - X'X)/X^2 + (Yh'Yh - Y'Y)/Y^2 + (Yh'Yh fh^2 - Y'Y f^2)/(Y^2 f^2)
//   -fh fh' + f f'
std::pair<Expr, Expr> harmonicity_conditions(const GksSpec& g, const GksSpec& ghat);

enum class CheckOutcome { Pass, Fail, Inconclusive };
std::string_view to_string(CheckOutcome o);

struct TheoremCheck {
  std::string name;
  Verdict expected = Verdict::Undecided;
  Verdict actual = Verdict::Undecided;
  CheckOutcome outcome = CheckOutcome::Inconclusive;
};

struct EquivalenceReport {
  std::pair<Expr, Expr> conditions;
  std::pair<ZeroTest, ZeroTest> condition_tests;
  Verdict condition_verdict = Verdict::Undecided;
  HarmonicityReport base;
  HarmonicityReport sasaki;
  HarmonicityReport horizontal;
  HarmonicityReport complete;
  std::vector<TheoremCheck> checks;
  CheckOutcome outcome = CheckOutcome::Inconclusive;
};

// Base verdict against the two conditions, then each lifted verdict against
// the base verdict. Undecided zero tests make a check inconclusive.
EquivalenceReport theorem_equivalence_check(const GksSpec& g, const GksSpec& ghat, const ProbeConfig& cfg = {});

// Seeded (g, ghat) pairs with X, Y from {1, 2, 3/2, t, t^2, 1 + t^2} and f from
// {sin, sinh, theta}; roughly a third are built as harmonic partners.
std::vector<std::pair<GksSpec, GksSpec>> gks_corpus(std::uint64_t seed, std::size_t count);

// Metrics every invariant check runs over: flat, round sphere, abstract GK-S,
// its three named variants and one constant-coefficient member.
std::vector<std::pair<std::string, Metric>> property_corpus();

// One published value with the key used by the computed side.
struct ReferenceEntry {
  std::string key;
  std::string expected;
  // Non-empty when the printed value is a known misprint.
  std::string known_discrepancy;
};

struct ReferenceTable {
  std::string name;
  std::vector<ReferenceEntry> entries;
};

ReferenceTable reference_christoffel();          // the four base matrices
ReferenceTable reference_inverse();              // base inverse metric
ReferenceTable reference_complete_inverse();     // 8x8 complete-lift inverse
ReferenceTable reference_traces();               // rho^k for the abstract pair
ReferenceTable reference_curvature();            // the twelve R^h_ij0
ReferenceTable reference_complete_connection();  // complete-lift coefficients

// Matrix entry keys: "g^{i j}" with tangent-chart labels.
std::string inverse_key(const Chart& chart, std::size_t i, std::size_t j);

}  // namespace liftgeo
