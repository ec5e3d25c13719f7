#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ringlab/harness.hpp"

using namespace ringlab;

TEST_CASE("registry covers the mapped catalogue exactly once") {
  // one entry per in-scope result, plus the recorded open problems
  const std::set<std::string> expected = {
      "prop-2.1",  "prop-2.2",  "rem-2.2",      "lem-2.1",
      "thm-2.9",   "cor-2.10",  "thm-2.11",     "cor-triangular",
      "prop-sumpotents",        "thm-groupring-potent",
      "thm-3.4",   "thm-3.7",   "thm-3.11",     "thm-3.12",
      "cor-3.13",  "cor-3.13-even",
      "lem-5.1",   "thm-5.2",   "prop-1.6",     "prop-1.7",
      "lem-3.9",   "thm-3.10",  "cor-3.11",     "lem-5.4",
      "thm-5.5",   "cor-wp-triangular",         "cor-5.6",
      "cor-5.7",   "thm-5.8",   "conj-1",       "conj-2",
      "q-1",       "q-2",       "q-3",          "q-4",
      "q-5",       "q-6",
  };
  std::set<std::string> got;
  for (const auto& check : theorem_registry()) {
    CAPTURE(check.id);
    CHECK(got.insert(check.id).second);  // ids are unique
    CHECK_FALSE(check.statement.empty());
    if (check.instantiable) {
      CHECK(check.run != nullptr);
    } else {
      CHECK_FALSE(check.vacuity_reason.empty());
    }
  }
  CHECK(got == expected);
}

TEST_CASE("config parsing: overlay, sections, lists with commas") {
  auto cfg = SuiteConfig::parse(
      "seed = 7\n"
      "cap.construct = 1234\n"
      "[prop-2.2]\n"
      "rings = M(2, Z(4)), Z(6)\n");
  CHECK(cfg.limits.seed == 7);
  CHECK(cfg.limits.construct_cap == 1234);
  auto rings = cfg.get("prop-2.2", "rings");
  REQUIRE(rings.size() == 2);
  CHECK(rings[0] == "M(2, Z(4))");
  CHECK(rings[1] == "Z(6)");
  // untouched sections fall back to the built-in instance sets
  CHECK_FALSE(cfg.get("thm-2.9", "morita").empty());
  CHECK(SuiteConfig::builtin_default().version == "suite-config/1");

  CHECK_THROWS_AS(SuiteConfig::parse("nonsense line"), RingError);
  CHECK_THROWS_AS(SuiteConfig::parse("unknown_key = 3"), RingError);
}

TEST_CASE("single theorem runs: pass with counted instances") {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  for (const char* id : {"prop-2.1", "prop-2.2", "rem-2.2", "lem-2.1", "thm-2.9",
                         "prop-1.6", "prop-1.7", "lem-3.9", "thm-3.10", "lem-5.1",
                         "thm-5.2", "lem-5.4"}) {
    auto rep = verify_theorem(id, cfg);
    CAPTURE(id);
    CHECK(rep.status == "pass");
    CHECK(rep.instances > 0);
    CHECK(rep.failures == 0);
  }
}

TEST_CASE("p-group sweep honours parameter overrides") {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  cfg.sections["thm-3.12"]["max2"] = {"8"};
  cfg.sections["thm-3.12"]["max3"] = {"9"};
  cfg.sections["thm-3.12"]["m"] = {"2..6"};
  auto rep = verify_theorem("thm-3.12", cfg);
  CHECK(rep.status == "pass");
  // groups: C2,C4,C2^2,C8,C4+C2,C2^3 and C3,C9,C3^2 -> 9 groups x 5 values of m
  CHECK(rep.instances == 45);
}

TEST_CASE("the strongly nil-clean finding is recorded, not fatal") {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  cfg.sections["cor-3.13"]["groups"] = {"C(4)+C(2)"};
  cfg.sections["cor-3.13"]["m"] = {"2..2"};
  auto rep = verify_theorem("cor-3.13", cfg);
  CHECK(rep.status == "pass");
  REQUIRE(rep.findings.size() == 1);
  CHECK(rep.findings[0].find("C(4)+C(2)") != std::string::npos);
}

TEST_CASE("vacuous entries carry reasons instead of runs") {
  for (const char* id : {"conj-1", "q-1", "q-5"}) {
    auto rep = verify_theorem(id);
    CHECK(rep.status == "not-instantiable");
    CHECK_FALSE(rep.reason.empty());
    CHECK(rep.instances == 0);
  }
  auto probe = verify_theorem("conj-2");
  CHECK(probe.status == "probe");
  CHECK(probe.instances > 0);
  CHECK_THROWS_AS(verify_theorem("thm-0.0"), RingError);
}

TEST_CASE("suite filtering and aggregation") {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  cfg.checks = {"prop-2.2", "rem-2.2", "q-1"};
  auto suite = run_suite(cfg);
  CHECK(suite.reports.size() == 3);
  CHECK(suite.pass);
  CHECK(suite.failures == 0);
}

TEST_CASE("a tiny construction cap skips most checks") {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  cfg.limits.construct_cap = 10;
  auto suite = run_suite(cfg);
  CHECK(suite.pass);  // skipped is not failed
  int64_t skipped = 0;
  for (const auto& r : suite.reports) {
    if (r.status == "skipped") ++skipped;
  }
  CHECK(skipped > static_cast<int64_t>(suite.reports.size()) / 2);
}

TEST_CASE("identical seeds give byte-identical reports") {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  cfg.checks = {"prop-2.1", "thm-2.9", "lem-5.1", "conj-2"};
  auto a = suite_report_json(run_suite(cfg), false).dump(2);
  auto b = suite_report_json(run_suite(cfg), false).dump(2);
  CHECK(a == b);
}

TEST_CASE("bounded counterexample search") {
  auto nc = search_property("nil_clean", "M(2, Z(n))", 2, 6);
  CHECK(nc.counterwitness_found);
  CHECK(nc.at_n == 3);
  CHECK(nc.instance == "M(2, Z(3))");

  auto uu = search_property("UU", "Z(n)", 2, 12);
  CHECK(uu.counterwitness_found);
  CHECK(uu.at_n == 3);
  CHECK(uu.witness == "2");

  auto pot = search_property("potent", "GR(Z(3), C(n))", 1, 4);
  CHECK(pot.counterwitness_found);
  CHECK(pot.at_n == 3);  // 3 divides the group order from here on

  auto exhausted = search_property("commutative", "Z(n)", 2, 8);
  CHECK_FALSE(exhausted.counterwitness_found);
  CHECK(exhausted.instances_checked == 7);

  CHECK_THROWS_AS(search_property("periodic", "Z(n)", 2, 4), RingError);
  CHECK_THROWS_AS(search_property("no_such_flag", "Z(n)", 2, 3), RingError);

  // fixed-exponent decomposition predicates take a ':m' suffix
  auto smc = search_property("strongly_m_nil_clean:2", "Z(n)", 2, 6);
  CHECK(smc.counterwitness_found);
  CHECK(smc.at_n == 3);  // Z(3) is not strongly nil-clean
  auto smc7 = search_property("strongly_m_nil_clean:3", "Z(n)", 2, 4);
  CHECK_FALSE(smc7.counterwitness_found);  // x^3 = x in Z(2), Z(3); Z(4) splits
}

TEST_CASE("corner ideal block law on a twisted instance") {
  // MN = NM = sR is nonzero here, so the even powers exercise genuine blocks
  auto z4 = cyclic_ring(4);
  MoritaData d = morita_k_s(z4, ring_int(*z4, 2));
  auto law = morita_block_law(d);
  CHECK(law.ok);
  CHECK(law.ring_order == 256);
  CHECK(law.l_max == 2);  // (2Z4)^2 = 0
  CHECK(law.k_nilpotency > 0);
}
