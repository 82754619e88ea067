#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liftgeo/numeric.hpp"

namespace liftgeo {

using Json = nlohmann::ordered_json;

// A metric file as read by the caller: path for the digest, text for parsing.
struct InputFile {
  std::string path;
  std::string text;
};

enum class Outcome { Ok, Fail, Inconclusive };

std::string_view to_string(Outcome o);
// 0, 1 and 3; usage and parse errors (2) never produce a report.
int exit_code(Outcome o);

struct Report {
  Json json;  // {command, inputs, results, diagnostics, version}
  Outcome outcome = Outcome::Ok;
};

const char* library_version();

std::string sha256_hex(std::string_view data);

Report christoffel_report(const InputFile& metric, const ProbeConfig& cfg);
Report curvature_report(const InputFile& metric, bool fiber_contract, const ProbeConfig& cfg);
Report lift_report(const InputFile& metric, const std::string& kind, bool with_connection, const ProbeConfig& cfg);
Report harmonic_report(const InputFile& g, const InputFile& d, const std::optional<std::string>& lift,
                       const ProbeConfig& cfg);
Report verify_report(const InputFile& metric, const ProbeConfig& cfg);

const std::vector<std::string>& paper_scenarios();  // without "all"
Report paper_check_report(const std::string& scenario, const ProbeConfig& cfg);

// Depends only on the JSON value, so re-rendering parsed JSON output gives
// the same text.
std::string render_text(const Json& report);

}  // namespace liftgeo
