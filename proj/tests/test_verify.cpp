#include <doctest.h>

#include <json.hpp>

#include "nilcat/verify.hpp"

using namespace nilcat;

TEST_CASE("verify passes at alpha = 1 and reports every module") {
  const VerifyOptions opt{.alpha = 1.0, .limits = false};
  const auto rep = run_verify(opt);
  CHECK(rep.all_pass());
  for (const char* k : {"period.L_residual", "profile.eqphi", "catenoid.hopf",
                        "section.c=0.closure_gap", "helicoid.ruling_line_fit", "cmc.lambda",
                        "cmc.critical_point_count"})
    CHECK_MESSAGE(rep.contains(k), k);
  for (const auto& [k, e] : rep.entries()) CHECK_MESSAGE(e.has_threshold(), k);

  const auto j = nlohmann::json::parse(verify_json(opt, rep));
  CHECK(j["pass"] == true);
  CHECK(j["failed"].empty());
  CHECK(j["checks"].size() == rep.entries().size());
}

TEST_CASE("verify output is deterministic") {
  const VerifyOptions opt{.alpha = 0.8, .limits = false};
  CHECK(verify_json(opt, run_verify(opt)) == verify_json(opt, run_verify(opt)));
}
