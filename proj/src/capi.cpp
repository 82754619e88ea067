#include "liftgeo/liftgeo.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "liftgeo/error.hpp"
#include "liftgeo/parse.hpp"
#include "liftgeo/report.hpp"

struct liftgeo_session {
  liftgeo::ProbeConfig cfg;
};

struct liftgeo_report {
  liftgeo::Report report;
};

namespace {

thread_local std::string last_error;

class IoError : public liftgeo::Error {
 public:
  using Error::Error;
};

liftgeo::InputFile read_input(const char* path) {
  if (path == nullptr) throw liftgeo::InvalidArgument("missing file path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string(path) + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError(std::string(path) + ": read failed");
  return liftgeo::InputFile{path, text.str()};
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, mapping exceptions onto status codes and the thread's last error.
template <class F>
liftgeo_status guarded(F&& f) {
  const auto fail = [&](liftgeo_status status, const char* what) {
    last_error = what;
    return status;
  };
  try {
    f();
    last_error.clear();
    return LIFTGEO_OK;
  } catch (const IoError& e) {
    return fail(LIFTGEO_ERR_IO, e.what());
  } catch (const liftgeo::ParseError& e) {
    return fail(LIFTGEO_ERR_PARSE, e.what());
  } catch (const liftgeo::MetricFileError& e) {
    return fail(LIFTGEO_ERR_PARSE, e.what());
  } catch (const liftgeo::DegenerateMetric& e) {
    return fail(LIFTGEO_ERR_DEGENERATE_METRIC, e.what());
  } catch (const liftgeo::Undecided& e) {
    return fail(LIFTGEO_ERR_UNDECIDED, e.what());
  } catch (const liftgeo::EvalError& e) {
    return fail(LIFTGEO_ERR_EVALUATION, e.what());
  } catch (const liftgeo::DivisionByZero& e) {
    return fail(LIFTGEO_ERR_EVALUATION, e.what());
  } catch (const liftgeo::InvalidArgument& e) {
    return fail(LIFTGEO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(LIFTGEO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LIFTGEO_ERR_INTERNAL, "unknown exception");
  }
}

liftgeo_status check_out(const void* out) {
  if (out == nullptr) {
    last_error = "output pointer is null";
    return LIFTGEO_ERR_INVALID_ARGUMENT;
  }
  return LIFTGEO_OK;
}

// Shared shape of the report-producing entry points.
template <class F>
liftgeo_status make_report(liftgeo_session* session, liftgeo_report** out, F&& build) {
  if (liftgeo_status s = check_out(out); s != LIFTGEO_OK) return s;
  *out = nullptr;
  if (session == nullptr) {
    last_error = "session is null";
    return LIFTGEO_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new liftgeo_report{build(session->cfg)}; });
}

}  // namespace

extern "C" {

const char* liftgeo_version(void) { return liftgeo::library_version(); }

const char* liftgeo_status_string(liftgeo_status status) {
  switch (status) {
    case LIFTGEO_OK:
      return "ok";
    case LIFTGEO_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case LIFTGEO_ERR_IO:
      return "i/o error";
    case LIFTGEO_ERR_PARSE:
      return "parse error";
    case LIFTGEO_ERR_DEGENERATE_METRIC:
      return "degenerate metric";
    case LIFTGEO_ERR_UNDECIDED:
      return "undecided";
    case LIFTGEO_ERR_EVALUATION:
      return "evaluation error";
    case LIFTGEO_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* liftgeo_last_error(void) { return last_error.c_str(); }

liftgeo_status liftgeo_session_new(liftgeo_session** out) {
  if (liftgeo_status s = check_out(out); s != LIFTGEO_OK) return s;
  return guarded([&] { *out = new liftgeo_session{}; });
}

void liftgeo_session_free(liftgeo_session* session) { delete session; }

liftgeo_status liftgeo_session_configure(liftgeo_session* session, uint64_t seed, int probes, double tolerance) {
  if (session == nullptr) {
    last_error = "session is null";
    return LIFTGEO_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    liftgeo::ProbeConfig cfg = session->cfg;
    cfg.seed = seed;
    cfg.probes = probes;
    cfg.zero_tol = tolerance;
    cfg.validate();
    session->cfg = cfg;
  });
}

liftgeo_status liftgeo_christoffel(liftgeo_session* session, const char* metric_path, liftgeo_report** out) {
  return make_report(session, out, [&](const liftgeo::ProbeConfig& cfg) {
    return liftgeo::christoffel_report(read_input(metric_path), cfg);
  });
}

liftgeo_status liftgeo_curvature(liftgeo_session* session, const char* metric_path, int fiber_contract,
                                 liftgeo_report** out) {
  return make_report(session, out, [&](const liftgeo::ProbeConfig& cfg) {
    return liftgeo::curvature_report(read_input(metric_path), fiber_contract != 0, cfg);
  });
}

liftgeo_status liftgeo_lift(liftgeo_session* session, const char* metric_path, const char* kind, int with_connection,
                            liftgeo_report** out) {
  return make_report(session, out, [&](const liftgeo::ProbeConfig& cfg) {
    if (kind == nullptr) throw liftgeo::InvalidArgument("missing lift kind");
    return liftgeo::lift_report(read_input(metric_path), kind, with_connection != 0, cfg);
  });
}

liftgeo_status liftgeo_harmonic(liftgeo_session* session, const char* g_path, const char* d_path, const char* lift,
                                liftgeo_report** out) {
  return make_report(session, out, [&](const liftgeo::ProbeConfig& cfg) {
    const liftgeo::InputFile g = read_input(g_path);
    const liftgeo::InputFile d = read_input(d_path);
    std::optional<std::string> kind;
    if (lift != nullptr) kind = lift;
    return liftgeo::harmonic_report(g, d, kind, cfg);
  });
}

liftgeo_status liftgeo_verify(liftgeo_session* session, const char* metric_path, liftgeo_report** out) {
  return make_report(session, out, [&](const liftgeo::ProbeConfig& cfg) {
    return liftgeo::verify_report(read_input(metric_path), cfg);
  });
}

liftgeo_status liftgeo_paper_check(liftgeo_session* session, const char* scenario, liftgeo_report** out) {
  return make_report(session, out, [&](const liftgeo::ProbeConfig& cfg) {
    return liftgeo::paper_check_report(scenario ? scenario : "all", cfg);
  });
}

void liftgeo_report_free(liftgeo_report* report) { delete report; }

int liftgeo_report_exit_code(const liftgeo_report* report) {
  return report ? liftgeo::exit_code(report->report.outcome) : 2;
}

liftgeo_status liftgeo_report_json(const liftgeo_report* report, char** out) {
  if (liftgeo_status s = check_out(out); s != LIFTGEO_OK) return s;
  *out = nullptr;
  return guarded([&] {
    if (report == nullptr) throw liftgeo::InvalidArgument("report is null");
    *out = duplicate(report->report.json.dump(2) + "\n");
  });
}

liftgeo_status liftgeo_report_text(const liftgeo_report* report, char** out) {
  if (liftgeo_status s = check_out(out); s != LIFTGEO_OK) return s;
  *out = nullptr;
  return guarded([&] {
    if (report == nullptr) throw liftgeo::InvalidArgument("report is null");
    *out = duplicate(liftgeo::render_text(report->report.json));
  });
}

liftgeo_status liftgeo_render_json(const char* json, char** out) {
  if (liftgeo_status s = check_out(out); s != LIFTGEO_OK) return s;
  *out = nullptr;
  return guarded([&] {
    if (json == nullptr) throw liftgeo::InvalidArgument("json is null");
    liftgeo::Json parsed;
    try {
      parsed = liftgeo::Json::parse(json);
    } catch (const liftgeo::Json::parse_error& e) {
      throw liftgeo::ParseError(e.byte, e.what());
    }
    *out = duplicate(liftgeo::render_text(parsed));
  });
}

liftgeo_status liftgeo_expr_simplify(const char* expr, char** out) {
  if (liftgeo_status s = check_out(out); s != LIFTGEO_OK) return s;
  *out = nullptr;
  return guarded([&] {
    if (expr == nullptr) throw liftgeo::InvalidArgument("expression is null");
    *out = duplicate(liftgeo::parse(expr).str());
  });
}

void liftgeo_string_free(char* s) { std::free(s); }

}  // extern "C"
