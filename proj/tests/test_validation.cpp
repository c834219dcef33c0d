#include <doctest.h>

#include "qfimeter/errors.hpp"
#include "qfimeter/validation.hpp"

using namespace qfimeter;
using namespace qfimeter::validation;

namespace {

void require_pass(const Report& r) {
  REQUIRE(!r.checks.empty());
  for (const Check& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.value);
    CHECK(c.pass);
  }
  CHECK(r.all_pass());
}

}  // namespace

TEST_CASE("every suite passes with default seeds") {
  for (const std::string& name : suite_names()) {
    if (name == "all") continue;
    CAPTURE(name);
    require_pass(run(name));
  }
}

TEST_CASE("fd suite at another seed and N") {
  const Report r = fd_suite({123, 6});
  CHECK(r.checks.size() == 20);
  require_pass(r);
}

TEST_CASE("report JSON") {
  const Report r = run("bounds");
  const nlohmann::json j = r.to_json();
  CHECK(j["suite"] == "bounds");
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == r.checks.size());
  CHECK(j["checks"][0].contains("tolerance"));
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run("nope"), InvalidParams);
}

TEST_CASE("a failing check fails the report") {
  Report r{"x", {{"a", 0.0, 1.0, true}, {"b", 2.0, 1.0, false}}};
  CHECK_FALSE(r.all_pass());
  CHECK(r.to_json()["pass"] == false);
}
