#include "liftgeo/geometry.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "liftgeo/error.hpp"

namespace liftgeo {

std::string_view to_string(Frame f) { return f == Frame::Natural ? "natural" : "adapted"; }

Chart Chart::base(std::vector<std::string> coords) {
  std::set<std::string> seen;
  for (const auto& c : coords) {
    if (!is_identifier(c)) throw InvalidArgument("invalid coordinate name '" + c + "'");
    if (known_fn_from_name(c)) throw InvalidArgument("coordinate name '" + c + "' is reserved");
    if (!seen.insert(c).second) throw InvalidArgument("duplicate coordinate '" + c + "'");
  }
  Chart ch;
  ch.coords_ = std::move(coords);
  return ch;
}

Chart Chart::tangent(const Chart& base) {
  if (base.kind_ != ChartKind::Base) throw InvalidArgument("tangent chart of a tangent chart");
  Chart ch;
  ch.coords_ = base.coords_;
  for (const auto& u : base.fiber()) {
    if (base.contains(u)) throw InvalidArgument("base coordinate '" + u + "' clashes with a fiber coordinate");
    ch.coords_.push_back(u);
  }
  ch.kind_ = ChartKind::Tangent;
  return ch;
}

bool Chart::contains(std::string_view name) const {
  return std::find(coords_.begin(), coords_.end(), name) != coords_.end();
}

std::size_t Chart::index_of(std::string_view name) const {
  auto it = std::find(coords_.begin(), coords_.end(), name);
  if (it == coords_.end()) throw InvalidArgument("'" + std::string(name) + "' is not a chart coordinate");
  return static_cast<std::size_t>(it - coords_.begin());
}

std::vector<std::string> Chart::fiber() const {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= base_dim(); ++i) out.push_back("u" + std::to_string(i));
  return out;
}

Chart Chart::base_chart() const {
  if (kind_ == ChartKind::Base) return *this;
  return base(std::vector<std::string>(coords_.begin(), coords_.begin() + base_dim()));
}

std::string Chart::index_label(std::size_t i) const {
  const std::size_t m = base_dim();
  if (kind_ == ChartKind::Tangent && i >= m) return std::to_string(i - m + 1) + "bar";
  return std::to_string(i + 1);
}

Matrix zero_matrix(std::size_t n) { return Matrix(n, std::vector<Expr>(n)); }

Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Expr(1);
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
        terms.push_back(a[i][k] * b[k][j]);
      }
      out[i][j] = simplify(Expr::sum(std::move(terms)));
    }
  }
  return out;
}

Declarations Metric::declarations() const {
  Declarations d;
  d.coordinates = chart.coords();
  d.constants = constants;
  d.functions = functions;
  return d;
}

Metric diagonal_metric(const Chart& chart, const std::vector<Expr>& diag) {
  if (diag.size() != chart.dim()) throw InvalidArgument("diagonal length does not match the chart");
  Metric g;
  g.chart = chart;
  g.components = zero_matrix(chart.dim());
  for (std::size_t i = 0; i < diag.size(); ++i) g.components[i][i] = simplify(diag[i]);
  return g;
}

namespace {

class MinorTable {
 public:
  explicit MinorTable(const Matrix& m) : m_(m), n_(m.size()) {}

  // Determinant of rows [n - popcount(cols), n) restricted to the column set.
  const Expr& minor(std::uint32_t cols) {
    if (auto it = memo_.find(cols); it != memo_.end()) return it->second;
    const int size = __builtin_popcount(cols);
    if (size == 0) return memo_.emplace(cols, Expr(1)).first->second;
    const std::size_t row = n_ - static_cast<std::size_t>(size);
    std::vector<Expr> terms;
    int position = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      if (!(cols & (1U << c))) continue;
      const Expr& entry = m_[row][c];
      if (!entry.is_zero()) {
        const Expr& sub = minor(cols & ~(1U << c));
        if (!sub.is_zero()) terms.push_back((position % 2 == 0 ? entry : -entry) * sub);
      }
      ++position;
    }
    return memo_.emplace(cols, simplify(Expr::sum(std::move(terms)))).first->second;
  }

 private:
  const Matrix& m_;
  std::size_t n_;
  std::unordered_map<std::uint32_t, Expr> memo_;
};

void require_square(const Matrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw InvalidArgument("matrix is not square");
  }
  if (m.size() > 24) throw InvalidArgument("matrix too large for cofactor expansion");
}

Matrix without(const Matrix& m, std::size_t row, std::size_t col) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Expr> r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) r.push_back(m[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Expr determinant(const Matrix& m) {
  require_square(m);
  if (m.empty()) return Expr(1);
  MinorTable table(m);
  return table.minor((m.size() == 32 ? 0U : (1U << m.size())) - 1U);
}

Expr determinant(const Metric& g) { return determinant(g.components); }

Matrix inverse(const Matrix& m, const ProbeConfig& cfg) {
  require_square(m);
  const std::size_t n = m.size();
  const Expr det = determinant(m);
  const ZeroTest zt = is_identically_zero(det, cfg);
  if (zt.verdict == ZeroVerdict::Zero) throw DegenerateMetric("determinant is identically zero");
  if (zt.verdict == ZeroVerdict::Unknown) {
    throw Undecided("cannot decide whether the determinant " + det.str() + " vanishes");
  }
  const Expr inv_det = pow(det, -1);
  Matrix out = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Expr cof = determinant(without(m, i, j));
      if (cof.is_zero()) continue;
      out[j][i] = simplify(((i + j) % 2 == 0 ? cof : -cof) * inv_det);
    }
  }
  return out;
}

Matrix inverse(const Metric& g, const ProbeConfig& cfg) { return inverse(g.components, cfg); }

std::vector<Violation> validate(const Metric& g, const ProbeConfig& cfg) {
  std::vector<Violation> out;
  const std::size_t n = g.dim();
  if (g.components.size() != n ||
      std::any_of(g.components.begin(), g.components.end(),
                  [n](const auto& row) { return row.size() != n; })) {
    out.push_back({"shape", "component matrix is not " + std::to_string(n) + "x" + std::to_string(n)});
    return out;
  }
  if (g.frame == Frame::Adapted && g.chart.kind() != ChartKind::Tangent) {
    out.push_back({"frame", "adapted frame requires a tangent chart"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(simplify(g.components[i][j] - g.components[j][i])).is_zero()) {
        out.push_back({"symmetry", "g(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       ") differs from g(" + std::to_string(j + 1) + "," +
                                       std::to_string(i + 1) + ")"});
      }
    }
  }
  std::set<std::string> reported;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& s : free_symbols(g.components[i][j])) {
        if (g.chart.contains(s)) continue;
        if (std::find(g.constants.begin(), g.constants.end(), s) != g.constants.end()) continue;
        if (reported.insert(s).second) {
          out.push_back({"chart", "'" + s + "' is neither a chart coordinate nor a declared constant"});
        }
      }
    }
  }
  if (!out.empty()) return out;
  const ZeroTest zt = is_identically_zero(determinant(g), cfg);
  if (zt.verdict == ZeroVerdict::Zero) {
    out.push_back({"degenerate", "determinant is identically zero"});
  } else if (zt.verdict == ZeroVerdict::Unknown) {
    out.push_back({"undecided", "could not decide whether the determinant vanishes"});
  }
  return out;
}

namespace {

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class MetricFileReader {
 public:
  Metric read(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      handle(line_no, line);
      start = end + 1;
    }
    if (!have_chart_) throw MetricFileError(line_no, "missing 'chart' line");
    Metric g;
    g.chart = chart_;
    g.constants = decls_.constants;
    g.functions = decls_.functions;
    g.components = zero_matrix(chart_.dim());
    for (const auto& [ij, value] : entries_) {
      g.components[ij.first][ij.second] = value.first;
      g.components[ij.second][ij.first] = value.first;
    }
    return g;
  }

 private:
  void handle(std::size_t line_no, std::string_view raw) {
    const std::string line = strip(raw);
    if (line.empty()) return;
    const std::size_t sp = line.find_first_of(" \t");
    const std::string keyword = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? std::string() : strip(line.substr(sp));
    // Offset of `rest` inside the raw line, for column numbers in errors.
    const std::size_t rest_col = rest.empty() ? 0 : raw.find(rest);
    if (keyword == "chart") {
      chart_line(line_no, rest);
    } else if (keyword == "const") {
      require_chart(line_no);
      const_line(line_no, rest);
    } else if (keyword == "func") {
      require_chart(line_no);
      func_line(line_no, rest, rest_col);
    } else if (keyword == "g") {
      require_chart(line_no);
      g_line(line_no, rest, rest_col);
    } else {
      throw MetricFileError(line_no, "unknown directive '" + keyword + "'");
    }
  }

  void require_chart(std::size_t line_no) const {
    if (!have_chart_) throw MetricFileError(line_no, "'chart' must come first");
  }

  void check_new_name(std::size_t line_no, const std::string& name) const {
    if (!is_identifier(name)) throw MetricFileError(line_no, "invalid name '" + name + "'");
    if (known_fn_from_name(name)) throw MetricFileError(line_no, "'" + name + "' is a reserved function name");
    if (decls_.is_coordinate(name) || decls_.is_constant(name) || decls_.functions.count(name)) {
      throw MetricFileError(line_no, "'" + name + "' is already declared");
    }
  }

  void chart_line(std::size_t line_no, const std::string& rest) {
    if (have_chart_) throw MetricFileError(line_no, "duplicate 'chart' line");
    std::istringstream in(rest);
    std::vector<std::string> coords;
    for (std::string c; in >> c;) {
      check_new_name(line_no, c);
      coords.push_back(c);
      decls_.coordinates.push_back(c);
    }
    if (coords.empty()) throw MetricFileError(line_no, "chart needs at least one coordinate");
    try {
      chart_ = Chart::base(coords);
    } catch (const InvalidArgument& e) {
      throw MetricFileError(line_no, e.what());
    }
    have_chart_ = true;
  }

  void const_line(std::size_t line_no, const std::string& rest) {
    std::istringstream in(rest);
    bool any = false;
    for (std::string c; in >> c;) {
      check_new_name(line_no, c);
      decls_.constants.push_back(c);
      any = true;
    }
    if (!any) throw MetricFileError(line_no, "'const' needs at least one name");
  }

  Expr parse_at(std::size_t line_no, const std::string& text, std::size_t col) const {
    try {
      return parse(text, decls_);
    } catch (const ParseError& e) {
      throw MetricFileError(line_no, "column " + std::to_string(col + e.offset() + 1) + ": " + e.what());
    }
  }

  void func_line(std::size_t line_no, const std::string& rest, std::size_t rest_col) {
    static const std::regex head(R"(^([A-Za-z][A-Za-z0-9_]*)\s*\(\s*([A-Za-z][A-Za-z0-9_]*)\s*\)\s*(.*)$)");
    std::smatch m;
    if (!std::regex_match(rest, m, head)) {
      throw MetricFileError(line_no, "expected 'func NAME(COORD) abstract' or 'func NAME(COORD) = EXPR'");
    }
    FuncSymbol f;
    f.name = m[1];
    f.argument = m[2];
    check_new_name(line_no, f.name);
    if (!decls_.is_coordinate(f.argument)) {
      throw MetricFileError(line_no, "'" + f.argument + "' is not a chart coordinate");
    }
    const std::string tail = m[3];
    if (tail == "abstract") {
      decls_.functions.emplace(f.name, std::move(f));
      return;
    }
    if (tail.empty() || tail.front() != '=') {
      throw MetricFileError(line_no, "expected 'abstract' or '= EXPR' after the function head");
    }
    const std::string body = tail.substr(1);
    const std::size_t col = rest_col + static_cast<std::size_t>(m.position(3)) + 1;
    Expr value = parse_at(line_no, body, col);
    for (const auto& s : free_symbols(value)) {
      if (s == f.argument || decls_.is_constant(s)) continue;
      throw MetricFileError(line_no, "body of '" + f.name + "' depends on '" + s +
                                         "', which is not its argument or a declared constant");
    }
    f.definition = std::move(value);
    decls_.functions.emplace(f.name, std::move(f));
  }

  void g_line(std::size_t line_no, const std::string& rest, std::size_t rest_col) {
    static const std::regex entry(R"(^(\d+)\s+(\d+)\s*=(.*)$)");
    std::smatch m;
    if (!std::regex_match(rest, m, entry)) throw MetricFileError(line_no, "expected 'g I J = EXPR'");
    const std::size_t n = chart_.dim();
    const unsigned long i = std::stoul(m[1]);
    const unsigned long j = std::stoul(m[2]);
    if (i < 1 || j < 1 || i > n || j > n) {
      throw MetricFileError(line_no, "index out of range 1.." + std::to_string(n));
    }
    const std::size_t col = rest_col + static_cast<std::size_t>(m.position(3));
    Expr value = parse_at(line_no, m[3], col);
    for (const auto& s : free_symbols(value)) {
      if (decls_.is_coordinate(s) || decls_.is_constant(s)) continue;
      throw MetricFileError(line_no, "undeclared name '" + s + "' (declare it with 'const')");
    }
    const std::pair<std::size_t, std::size_t> key{std::min(i, j) - 1, std::max(i, j) - 1};
    auto [it, inserted] = entries_.try_emplace(key, value, line_no);
    if (!inserted && !(simplify(it->second.first - value)).is_zero()) {
      throw MetricFileError(line_no, "conflicting assignment to g " + std::to_string(key.first + 1) + " " +
                                         std::to_string(key.second + 1) + " (first set on line " +
                                         std::to_string(it->second.second) + ")");
    }
  }

  bool have_chart_ = false;
  Chart chart_;
  Declarations decls_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<Expr, std::size_t>> entries_;
};

}  // namespace

Metric parse_metric_file(std::string_view text) { return MetricFileReader().read(text); }

std::string format_metric_file(const Metric& g) {
  if (g.chart.kind() != ChartKind::Base || g.frame != Frame::Natural) {
    throw InvalidArgument("only natural-frame base metrics have a file form");
  }
  std::ostringstream out;
  out << "chart";
  for (const auto& c : g.chart.coords()) out << ' ' << c;
  out << '\n';
  if (!g.constants.empty()) {
    out << "const";
    for (const auto& c : g.constants) out << ' ' << c;
    out << '\n';
  }
  for (const auto& [name, f] : g.functions) {
    out << "func " << name << '(' << f.argument << ')';
    if (f.definition) {
      out << " = " << f.definition->str() << '\n';
    } else {
      out << " abstract\n";
    }
  }
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i; j < g.dim(); ++j) {
      if (g(i, j).is_zero()) continue;
      out << "g " << i + 1 << ' ' << j + 1 << " = " << g(i, j).str() << '\n';
    }
  }
  return out.str();
}

}  // namespace liftgeo
