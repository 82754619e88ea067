#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftgeo/connection.hpp"
#include "liftgeo/gks.hpp"

namespace liftgeo {

struct FdResult {
  bool passed = false;
  // No probe could be compared (all singular or above the magnitude cap).
  bool inconclusive = false;
  double worst_rel_error = 0.0;
  int compared = 0;
};

// Central difference of e against differentiate(e, v). Abstract functions are
// replaced by seeded degree-4 polynomials so value and derivative agree.
FdResult finite_difference_check(const Expr& e, const std::string& v, const ProbeConfig& cfg);

using KeyedExprs = std::vector<std::pair<std::string, Expr>>;

KeyedExprs keyed(const Connection& c);                      // nonzero stored slots
KeyedExprs keyed(const FiberCurvature& r);                  // nonzero R^h_ij0
KeyedExprs keyed_upper(const Matrix& m, const Chart& chart); // all i <= j entries

enum class EntryStatus { Match, Mismatch, Undecided, Unlisted };
std::string_view to_string(EntryStatus s);

struct ReconEntry {
  std::string key;
  EntryStatus status = EntryStatus::Match;
  Expr computed;
  std::optional<Expr> expected;  // absent for Unlisted
  Expr difference;               // computed - expected
  std::optional<Witness> witness;
  // Mismatch on an entry whose printed value is a known misprint.
  bool documented = false;
  std::string note;
};

struct Reconciliation {
  std::string table;
  std::vector<ReconEntry> entries;
  int matches = 0;
  int mismatches = 0;  // documented and undocumented
  int documented = 0;
  int undecided = 0;
  int unlisted = 0;

  int undocumented_mismatches() const { return mismatches - documented; }
};

// Compares over the reference keys (missing computed keys count as 0), then
// lists computed nonzero keys the table omits as Unlisted.
Reconciliation reconcile(const KeyedExprs& computed, const ReferenceTable& expected, const ProbeConfig& cfg);

}  // namespace liftgeo
