#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringlab/constructions.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

using OJson = nlohmann::ordered_json;

/// Instance sets live in a versioned plain-text config ("suite-config/1"):
/// global "key = value" lines, then one [section] per theorem id holding its
/// parameter lists. Parsed configs overlay the built-in default, so partial
/// files work.
struct SuiteConfig {
  std::string version = "suite-config/1";
  Limits limits;
  std::vector<std::string> checks;  // empty means all
  std::map<std::string, std::map<std::string, std::vector<std::string>>> sections;

  std::vector<std::string> get(const std::string& section, const std::string& key) const;
  std::vector<std::string> get_or(const std::string& section, const std::string& key,
                                  const std::vector<std::string>& fallback) const;

  static SuiteConfig parse(const std::string& text);
  static SuiteConfig parse(const std::string& text, const SuiteConfig& base);
  static const SuiteConfig& builtin_default();
};

struct TheoremReport {
  std::string id;
  std::string statement;     // the verified claim
  std::string refinement;    // the non-trivial finite content actually run
  std::string status;        // pass | fail | skipped | probe | not-instantiable
  int64_t instances = 0;
  int64_t failures = 0;
  std::vector<std::string> failure_notes;
  std::vector<std::string> findings;  // inconsistencies recorded, never fatal
  std::string reason;                 // set for not-instantiable entries
  OJson details = OJson::array();
  double wall_ms = 0.0;
};

struct TheoremCheck {
  std::string id;
  std::string statement;
  std::string refinement;
  bool instantiable = true;
  std::string vacuity_reason;  // set for the not-finitely-instantiable entries
  std::function<TheoremReport(const SuiteConfig&)> run;
};

const std::vector<TheoremCheck>& theorem_registry();

TheoremReport verify_theorem(const std::string& id,
                             const SuiteConfig& cfg = SuiteConfig::builtin_default());

struct SuiteReport {
  std::vector<TheoremReport> reports;
  bool pass = true;
  int64_t failures = 0;
  int64_t findings = 0;
};

/// Runs every registered (and selected) check; aggregate pass means no check
/// failed. Findings are reported but never fail the suite.
SuiteReport run_suite(const SuiteConfig& cfg = SuiteConfig::builtin_default());

OJson theorem_report_json(const TheoremReport& r, bool with_timings = false);
OJson suite_report_json(const SuiteReport& r, bool with_timings = false);

struct SearchResult {
  std::string predicate;
  std::string family;
  bool counterwitness_found = false;
  int64_t at_n = 0;
  std::string instance;
  std::string witness;
  int64_t instances_checked = 0;
};

/// Substitutes n = lo..hi into the family template (a ring expression with a
/// free variable n), evaluates the predicate, and stops at the first
/// violating instance. Predicates that are trivially true on finite carriers
/// are rejected with the triviality reason.
SearchResult search_property(const std::string& predicate, const std::string& family_template,
                             int64_t lo, int64_t hi, const Limits& lim = default_limits());

/// The corner ideal K = [[MN, M],[N, NM]] of a Morita context ring: checks
/// that K is a nilpotent two-sided ideal and that every even power K^{2l}
/// equals the block set [[(MN)^l, (MN)^l M],[(NM)^l N, (NM)^l]].
struct MoritaBlockLaw {
  bool ok = true;
  int64_t ring_order = 0;
  int k_nilpotency = 0;
  int l_max = 0;
  std::string issue;
};

MoritaBlockLaw morita_block_law(const MoritaData& d, const Limits& lim = default_limits());

}  // namespace ringlab
