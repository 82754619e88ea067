#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "liftgeo/expr.hpp"
#include "liftgeo/numeric.hpp"
#include "liftgeo/parse.hpp"

namespace liftgeo {

enum class ChartKind { Base, Tangent };
enum class Frame { Natural, Adapted };

std::string_view to_string(Frame f);

// Ordered coordinate names. A tangent chart over an m-dimensional base has the
// base coordinates followed by the fiber coordinates u1..um.
class Chart {
 public:
  Chart() = default;
  static Chart base(std::vector<std::string> coords);
  static Chart tangent(const Chart& base);

  ChartKind kind() const { return kind_; }
  std::size_t dim() const { return coords_.size(); }
  // m for both kinds: the base dimension.
  std::size_t base_dim() const { return kind_ == ChartKind::Tangent ? dim() / 2 : dim(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::string& operator[](std::size_t i) const { return coords_.at(i); }
  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  // u1..um, independent of kind.
  std::vector<std::string> fiber() const;
  Chart base_chart() const;

  // "3" for a base slot, "3bar" for the fiber slot 3+m of a tangent chart.
  std::string index_label(std::size_t i) const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> coords_;
  ChartKind kind_ = ChartKind::Base;
};

using Matrix = std::vector<std::vector<Expr>>;

Matrix zero_matrix(std::size_t n);
Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);

struct Metric {
  Chart chart;
  Matrix components;
  Frame frame = Frame::Natural;
  // Constant parameters (c1, e2, ...) the entries may reference.
  std::vector<std::string> constants;
  // Declared functions, kept so the metric can be printed back as a file.
  std::map<std::string, FuncSymbol> functions;

  std::size_t dim() const { return chart.dim(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return components[i][j]; }
  Declarations declarations() const;
};

// Diagonal metric over a base chart.
Metric diagonal_metric(const Chart& chart, const std::vector<Expr>& diag);

// Laplace expansion over column subsets with every minor simplified.
Expr determinant(const Matrix& m);
Expr determinant(const Metric& g);

// Adjugate over determinant, simplified. Throws DegenerateMetric when the
// determinant is identically zero and Undecided when the zero test cannot tell.
Matrix inverse(const Matrix& m, const ProbeConfig& cfg = {});
Matrix inverse(const Metric& g, const ProbeConfig& cfg = {});

struct Violation {
  std::string kind;  // "symmetry", "degenerate", "undecided", "chart", "frame", "shape"
  std::string message;
};

std::vector<Violation> validate(const Metric& g, const ProbeConfig& cfg = {});

// Reads the line-oriented metric definition language:
//
//   chart t r theta phi
//   const c1 c2
//   func X(t) abstract
//   func f(theta) = sin(theta)
//   g 2 2 = -X(t)^2
//
// Errors are MetricFileError carrying the 1-based line.
Metric parse_metric_file(std::string_view text);

// Inverse of parse_metric_file for natural-frame base metrics.
std::string format_metric_file(const Metric& g);

}  // namespace liftgeo
