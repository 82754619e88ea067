// Exercises the shared library through its C interface only.

#include <gtest/gtest.h>

#include <json.hpp>
#include <memory>
#include <string>

#include "liftgeo/liftgeo.h"

namespace {

const std::string kData = LIFTGEO_TEST_DATA_DIR;

struct Deleter {
  void operator()(liftgeo_session* s) const { liftgeo_session_free(s); }
  void operator()(liftgeo_report* r) const { liftgeo_report_free(r); }
  void operator()(char* s) const { liftgeo_string_free(s); }
};

using Session = std::unique_ptr<liftgeo_session, Deleter>;
using Report = std::unique_ptr<liftgeo_report, Deleter>;

Session new_session() {
  liftgeo_session* s = nullptr;
  EXPECT_EQ(liftgeo_session_new(&s), LIFTGEO_OK);
  return Session(s);
}

std::string take(char* s) {
  std::unique_ptr<char, Deleter> owned(s);
  return s ? std::string(s) : std::string();
}

std::string json_of(const liftgeo_report* r) {
  char* out = nullptr;
  EXPECT_EQ(liftgeo_report_json(r, &out), LIFTGEO_OK);
  return take(out);
}

std::string text_of(const liftgeo_report* r) {
  char* out = nullptr;
  EXPECT_EQ(liftgeo_report_text(r, &out), LIFTGEO_OK);
  return take(out);
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(liftgeo_version(), "0.1.0");
  EXPECT_STREQ(liftgeo_status_string(LIFTGEO_OK), "ok");
  EXPECT_STRNE(liftgeo_status_string(LIFTGEO_ERR_PARSE), liftgeo_status_string(LIFTGEO_ERR_IO));
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(liftgeo_session_new(nullptr), LIFTGEO_ERR_INVALID_ARGUMENT);
  liftgeo_report* r = nullptr;
  EXPECT_EQ(liftgeo_christoffel(nullptr, "x", &r), LIFTGEO_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(liftgeo_last_error()), "");
  Session s = new_session();
  EXPECT_EQ(liftgeo_christoffel(s.get(), nullptr, &r), LIFTGEO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(liftgeo_christoffel(s.get(), (kData + "/flat.metric").c_str(), nullptr), LIFTGEO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(liftgeo_report_json(nullptr, nullptr), LIFTGEO_ERR_INVALID_ARGUMENT);
  liftgeo_session_free(nullptr);
  liftgeo_report_free(nullptr);
  liftgeo_string_free(nullptr);
}

TEST(CApi, ConfigureValidates) {
  Session s = new_session();
  EXPECT_EQ(liftgeo_session_configure(s.get(), 5, 20, 1e-9), LIFTGEO_OK);
  EXPECT_EQ(liftgeo_session_configure(s.get(), 5, 0, 1e-9), LIFTGEO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(liftgeo_session_configure(s.get(), 5, 20, -1.0), LIFTGEO_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ErrorCodes) {
  Session s = new_session();
  liftgeo_report* r = nullptr;
  EXPECT_EQ(liftgeo_christoffel(s.get(), (kData + "/does-not-exist.metric").c_str(), &r), LIFTGEO_ERR_IO);
  EXPECT_EQ(r, nullptr);
  EXPECT_NE(std::string(liftgeo_last_error()).find("does-not-exist.metric"), std::string::npos);
  EXPECT_EQ(liftgeo_lift(s.get(), (kData + "/flat.metric").c_str(), "cheeger-gromoll", 0, &r),
            LIFTGEO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(liftgeo_paper_check(s.get(), "no-such-scenario", &r), LIFTGEO_ERR_INVALID_ARGUMENT);
  char* out = nullptr;
  EXPECT_EQ(liftgeo_expr_simplify("(x", &out), LIFTGEO_ERR_PARSE);
  EXPECT_EQ(liftgeo_render_json("{not json", &out), LIFTGEO_ERR_PARSE);
}

TEST(CApi, ChristoffelReport) {
  Session s = new_session();
  liftgeo_report* raw = nullptr;
  ASSERT_EQ(liftgeo_christoffel(s.get(), (kData + "/gks.metric").c_str(), &raw), LIFTGEO_OK);
  Report r(raw);
  EXPECT_EQ(liftgeo_report_exit_code(r.get()), 0);
  const auto j = nlohmann::ordered_json::parse(json_of(r.get()));
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "inputs", "results", "diagnostics", "version"}));
  EXPECT_EQ(j["command"], "christoffel");
  ASSERT_EQ(j["inputs"].size(), 1u);
  EXPECT_EQ(j["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(j["results"]["status"], "ok");
}

TEST(CApi, HarmonicExampleIsNotHarmonic) {
  Session s = new_session();
  liftgeo_report* raw = nullptr;
  ASSERT_EQ(liftgeo_harmonic(s.get(), (kData + "/g1.metric").c_str(), (kData + "/ghat1.metric").c_str(), nullptr,
                             &raw),
            LIFTGEO_OK);
  Report r(raw);
  EXPECT_NE(text_of(r.get()).find("NotHarmonic"), std::string::npos);
}

TEST(CApi, TextIsRenderedFromJson) {
  Session s = new_session();
  liftgeo_report* raw = nullptr;
  ASSERT_EQ(liftgeo_curvature(s.get(), (kData + "/gks.metric").c_str(), 1, &raw), LIFTGEO_OK);
  Report r(raw);
  char* rendered = nullptr;
  ASSERT_EQ(liftgeo_render_json(json_of(r.get()).c_str(), &rendered), LIFTGEO_OK);
  EXPECT_EQ(take(rendered), text_of(r.get()));
}

TEST(CApi, SameSeedSameBytes) {
  auto run = [](std::uint64_t seed) {
    Session s = new_session();
    EXPECT_EQ(liftgeo_session_configure(s.get(), seed, 20, 1e-9), LIFTGEO_OK);
    liftgeo_report* raw = nullptr;
    EXPECT_EQ(liftgeo_harmonic(s.get(), (kData + "/g1.metric").c_str(), (kData + "/ghat1.metric").c_str(),
                               "sasaki", &raw),
              LIFTGEO_OK);
    Report r(raw);
    return json_of(r.get());
  };
  EXPECT_EQ(run(3), run(3));
}

TEST(CApi, ExprSimplify) {
  char* out = nullptr;
  ASSERT_EQ(liftgeo_expr_simplify("X(t)^2*X'(t)/X(t)", &out), LIFTGEO_OK);
  EXPECT_EQ(take(out), "X(t)*X'(t)");
}
