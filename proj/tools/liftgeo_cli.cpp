// liftgeo command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "liftgeo/liftgeo.h"

namespace {

constexpr int kExitUsage = 2;

struct SessionDeleter {
  void operator()(liftgeo_session* s) const { liftgeo_session_free(s); }
};
struct ReportDeleter {
  void operator()(liftgeo_report* r) const { liftgeo_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { liftgeo_string_free(s); }
};
using Session = std::unique_ptr<liftgeo_session, SessionDeleter>;
using ReportPtr = std::unique_ptr<liftgeo_report, ReportDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

int status_exit(liftgeo_status s) {
  switch (s) {
    case LIFTGEO_OK:
      return 0;
    case LIFTGEO_ERR_INVALID_ARGUMENT:
    case LIFTGEO_ERR_IO:
    case LIFTGEO_ERR_PARSE:
    case LIFTGEO_ERR_DEGENERATE_METRIC:
      return kExitUsage;
    case LIFTGEO_ERR_UNDECIDED:
      return 3;
    case LIFTGEO_ERR_EVALUATION:
    case LIFTGEO_ERR_INTERNAL:
      return 1;
  }
  return 1;
}

int report_error(liftgeo_status s) {
  std::cerr << "liftgeo: " << liftgeo_status_string(s) << ": " << liftgeo_last_error() << "\n";
  return status_exit(s);
}

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  int probes = 20;
  double tol = 1e-9;
};

int emit(liftgeo_status s, liftgeo_report* raw, const Options& opt) {
  if (s != LIFTGEO_OK) return report_error(s);
  ReportPtr report(raw);
  char* out = nullptr;
  s = opt.format == "json" ? liftgeo_report_json(report.get(), &out) : liftgeo_report_text(report.get(), &out);
  if (s != LIFTGEO_OK) return report_error(s);
  CString text(out);
  std::fputs(text.get(), stdout);
  std::fflush(stdout);
  return liftgeo_report_exit_code(report.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Christoffel symbols, curvature, tangent-bundle lifts and harmonicity of metric pairs"};
  app.set_version_flag("--version", std::string(liftgeo_version()));
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("LIFTGEO_FORMAT");
  app.add_option("--seed", opt.seed, "Seed for numeric probes")->envname("LIFTGEO_SEED");
  app.add_option("--probes", opt.probes, "Numeric probes per zero test")
      ->check(CLI::PositiveNumber)
      ->envname("LIFTGEO_PROBES");
  app.add_option("--tol", opt.tol, "Zero-test tolerance")->check(CLI::PositiveNumber)->envname("LIFTGEO_TOL");

  std::string metric, g_file, d_file, kind, scenario = "all";
  std::optional<std::string> harmonic_lift;
  bool fiber = false, connection = false;
  const std::vector<std::string> kinds{"sasaki", "horizontal", "complete"};

  auto* christoffel = app.add_subcommand("christoffel", "Nonzero Christoffel symbols of a metric file");
  christoffel->add_option("metric", metric, "Metric file")->required();

  auto* curvature = app.add_subcommand("curvature", "Riemann components of a metric file");
  curvature->add_option("metric", metric, "Metric file")->required();
  curvature->add_flag("--fiber-contract", fiber, "Also print R^h_ij0 = R^h_ijk u^k");

  auto* lift = app.add_subcommand("lift", "Tangent-bundle lift of a metric file");
  lift->add_option("metric", metric, "Metric file")->required();
  lift->add_option("--kind", kind, "Lift kind")->required()->check(CLI::IsMember(kinds));
  lift->add_flag("--connection", connection, "Also print the lifted connection");

  auto* harmonic = app.add_subcommand("harmonic", "Is d harmonic with respect to g?");
  harmonic->add_option("g", g_file, "Metric file for g")->required();
  harmonic->add_option("d", d_file, "Metric file for d")->required();
  harmonic->add_option("--lift", harmonic_lift, "Compare the lifted metrics instead")->check(CLI::IsMember(kinds));

  std::vector<std::string> scenarios{"gamma-matrices", "inverse",        "traces",         "example1",
                                     "curvature-table", "sasaki",        "horizontal",     "complete-table",
                                     "theorem-equivalence", "all"};
  auto* reconcile_cmd = app.add_subcommand("paper-check", "Reconcile computed values with the reference tables");
  reconcile_cmd->add_option("--scenario", scenario, "Scenario to run")->check(CLI::IsMember(scenarios));

  auto* verify = app.add_subcommand("verify", "Invariant suite for a metric file");
  verify->add_option("metric", metric, "Metric file")->required();

  for (auto* sub : {christoffel, curvature, lift, harmonic, reconcile_cmd, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  liftgeo_session* raw_session = nullptr;
  if (liftgeo_status s = liftgeo_session_new(&raw_session); s != LIFTGEO_OK) return report_error(s);
  Session session(raw_session);
  if (liftgeo_status s = liftgeo_session_configure(session.get(), opt.seed, opt.probes, opt.tol); s != LIFTGEO_OK) {
    return report_error(s);
  }

  liftgeo_report* report = nullptr;
  liftgeo_status s = LIFTGEO_OK;
  if (*christoffel) {
    s = liftgeo_christoffel(session.get(), metric.c_str(), &report);
  } else if (*curvature) {
    s = liftgeo_curvature(session.get(), metric.c_str(), fiber ? 1 : 0, &report);
  } else if (*lift) {
    s = liftgeo_lift(session.get(), metric.c_str(), kind.c_str(), connection ? 1 : 0, &report);
  } else if (*harmonic) {
    s = liftgeo_harmonic(session.get(), g_file.c_str(), d_file.c_str(),
                         harmonic_lift ? harmonic_lift->c_str() : nullptr, &report);
  } else if (*reconcile_cmd) {
    s = liftgeo_paper_check(session.get(), scenario.c_str(), &report);
  } else {
    s = liftgeo_verify(session.get(), metric.c_str(), &report);
  }
  return emit(s, report, opt);
}
