#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ringlab/classify.hpp"
#include "ringlab/expr.hpp"
#include "ringlab/harness.hpp"
#include "ringlab/report.hpp"

using namespace ringlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;   // parse, cap, or malformed-input errors
constexpr int kExitVerify = 2;  // verification failure or counterwitness found

struct Options {
  std::string format = "text";
  std::string config_path;
  bool timings = false;
  // flag overrides; -1 means "not set on the command line"
  int64_t cap = -1;
  int64_t classify_cap = -1;
  int64_t axiom_cap = -1;
  int64_t seed = -1;
};

// precedence: flags > config file > RINGLAB_CAP environment > defaults;
// the file overlays the environment-adjusted base, so keys it does not set
// keep their inherited values
SuiteConfig resolve_config(const Options& opt) {
  SuiteConfig cfg = SuiteConfig::builtin_default();
  if (const char* env = std::getenv("RINGLAB_CAP")) {
    cfg.limits.construct_cap = std::stoll(env);
  }
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw RingError("cannot open config file '" + opt.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = SuiteConfig::parse(buf.str(), cfg);
  }
  if (opt.cap >= 0) cfg.limits.construct_cap = opt.cap;
  if (opt.classify_cap >= 0) cfg.limits.classify_cap = opt.classify_cap;
  if (opt.axiom_cap >= 0) cfg.limits.axiom_cap = opt.axiom_cap;
  if (opt.seed >= 0) cfg.limits.seed = static_cast<uint64_t>(opt.seed);
  return cfg;
}

void emit(const Report& rep, const Options& opt) {
  std::cout << (opt.format == "json" ? render_json(rep) : render_text(rep));
}

std::string canonical(const std::string& text) { return print_expr(*parse_expr(text)); }

int cmd_classify(const std::string& expr, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  RingPtr r = build_ring(expr, cfg.limits);
  RingProfile p = classify_ring(*r, cfg.limits);
  emit(make_report("classify", profile_payload(canonical(expr), *r, p)), opt);
  return kExitOk;
}

int cmd_element(const std::string& expr, Index elem, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  RingPtr r = build_ring(expr, cfg.limits);
  ElementReport er = classify_element(*r, elem);
  emit(make_report("element", element_payload(canonical(expr), *r, er)), opt);
  return kExitOk;
}

int cmd_decompose(const std::string& expr, Index elem, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  RingPtr r = build_ring(expr, cfg.limits);
  Decomposition d = potent_nilpotent_decompose(*r, elem);
  emit(make_report("decompose", decompose_payload(canonical(expr), *r, elem, d)), opt);
  return kExitOk;
}

int cmd_radical(const std::string& expr, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  RingPtr r = build_ring(expr, cfg.limits);
  RadicalData rad = jacobson_radical(*r);
  emit(make_report("radical", radical_payload(canonical(expr), *r, rad)), opt);
  return kExitOk;
}

int cmd_uniform(const std::string& expr, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  RingPtr r = build_ring(expr, cfg.limits);
  PeriodData u = uniform_period(*r);
  emit(make_report("uniform-period", uniform_payload(canonical(expr), *r, u)), opt);
  return kExitOk;
}

int cmd_qbound(const std::string& expr, int n, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  RingPtr r = build_ring(expr, cfg.limits);
  QBound q = q_bound(r, n, cfg.limits);
  emit(make_report("qbound", qbound_payload(canonical(expr), q)), opt);
  return q.verified ? kExitOk : kExitVerify;
}

int cmd_verify(const std::string& id, const std::vector<std::string>& sets,
               const std::string& m_range, int64_t max_group, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw RingError("--set expects key=value");
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    std::vector<std::string> items;
    int depth = 0;
    std::string cur;
    for (char c : value) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        items.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) items.push_back(cur);
    cfg.sections[id][key] = items;
  }
  if (!m_range.empty()) cfg.sections[id]["m"] = {m_range};
  if (max_group > 0) {
    cfg.sections[id]["max2"] = {std::to_string(max_group)};
    cfg.sections[id]["max3"] = {std::to_string(max_group)};
  }
  TheoremReport rep = verify_theorem(id, cfg);
  emit(make_report("verify", theorem_report_json(rep, opt.timings)), opt);
  return rep.status == "fail" ? kExitVerify : kExitOk;
}

int cmd_suite(const std::vector<std::string>& only, const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  if (!only.empty()) cfg.checks = only;
  SuiteReport suite = run_suite(cfg);
  if (opt.format == "json") {
    emit(make_report("suite", suite_report_json(suite, opt.timings)), opt);
  } else {
    for (const auto& r : suite.reports) {
      std::ostringstream line;
      line << (r.status + std::string(18 - std::min<size_t>(18, r.status.size()), ' '))
           << r.id;
      std::cout << line.str();
      if (r.instances > 0) std::cout << "  (" << r.instances << " instances)";
      if (opt.timings) std::cout << "  [" << static_cast<int64_t>(r.wall_ms) << " ms]";
      std::cout << "\n";
      for (const auto& n : r.failure_notes) std::cout << "    failure: " << n << "\n";
      for (const auto& f : r.findings) std::cout << "    finding: " << f << "\n";
      if (!r.reason.empty()) std::cout << "    reason: " << r.reason << "\n";
    }
    std::cout << "suite: " << (suite.pass ? "pass" : "fail") << "  (" << suite.failures
              << " failures, " << suite.findings << " findings)\n";
  }
  return suite.pass ? kExitOk : kExitVerify;
}

int cmd_search(const std::string& pred, const std::string& family, int64_t lo, int64_t hi,
               const Options& opt) {
  SuiteConfig cfg = resolve_config(opt);
  SearchResult res = search_property(pred, family, lo, hi, cfg.limits);
  OJson body;
  body["predicate"] = res.predicate;
  body["family"] = res.family;
  body["instances_checked"] = res.instances_checked;
  body["counterwitness_found"] = res.counterwitness_found;
  if (res.counterwitness_found) {
    body["at_n"] = res.at_n;
    body["instance"] = res.instance;
    if (!res.witness.empty()) body["witness"] = res.witness;
  } else {
    body["exhausted"] = "no violation up to n = " + std::to_string(hi);
  }
  emit(make_report("search", body), opt);
  return res.counterwitness_found ? kExitVerify : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringlab: finite ring families, classification, and theorem verification"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cap", opt.cap, "construction size cap");
  app.add_option("--classify-cap", opt.classify_cap, "exhaustive classification cap");
  app.add_option("--axiom-cap", opt.axiom_cap, "exhaustive axiom check cap");
  app.add_option("--seed", opt.seed, "seed for sampled checks");
  app.add_option("--config", opt.config_path, "suite configuration file");
  app.add_flag("--timings", opt.timings, "include wall times in reports");

  std::string expr, pred, family, verify_id, m_range;
  Index elem = 0;
  int qn = 2;
  int64_t lo = 2, hi = 12, max_group = 0;
  std::vector<std::string> sets, only;

  auto* c_classify = app.add_subcommand("classify", "full predicate profile of a ring");
  c_classify->add_option("expr", expr, "ring expression")->required();

  auto* c_element = app.add_subcommand("element", "classify a single element");
  c_element->add_option("expr", expr)->required();
  c_element->add_option("--elem", elem, "element index")->required();

  auto* c_decompose = app.add_subcommand("decompose", "potent + nilpotent split");
  c_decompose->add_option("expr", expr)->required();
  c_decompose->add_option("--elem", elem, "element index")->required();

  auto* c_radical = app.add_subcommand("radical", "Jacobson radical with its index");
  c_radical->add_option("expr", expr)->required();

  auto* c_uniform = app.add_subcommand("uniform-period", "least uniform (n, k)");
  c_uniform->add_option("expr", expr)->required();

  auto* c_qbound = app.add_subcommand("qbound", "matrix exponent q with verification");
  c_qbound->add_option("expr", expr)->required();
  c_qbound->add_option("--n", qn, "matrix size");

  auto* c_verify = app.add_subcommand("verify", "run one registered theorem check");
  c_verify->add_option("id", verify_id, "theorem id, e.g. thm-3.12")->required();
  c_verify->add_option("--set", sets, "override a section key, key=value");
  c_verify->add_option("--m", m_range, "m range, e.g. 2..10");
  c_verify->add_option("--max-group", max_group, "bound for generated p-groups");

  auto* c_suite = app.add_subcommand("suite", "run the whole verification suite");
  c_suite->add_option("--only", only, "restrict to these theorem ids");

  auto* c_search = app.add_subcommand("search", "bounded counterexample search");
  c_search->add_option("predicate", pred, "profile predicate, e.g. nil_clean")->required();
  c_search->add_option("--family", family, "ring expression with a free n")->required();
  c_search->add_option("--min", lo, "smallest n");
  c_search->add_option("--max", hi, "largest n")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_classify->parsed()) return cmd_classify(expr, opt);
    if (c_element->parsed()) return cmd_element(expr, elem, opt);
    if (c_decompose->parsed()) return cmd_decompose(expr, elem, opt);
    if (c_radical->parsed()) return cmd_radical(expr, opt);
    if (c_uniform->parsed()) return cmd_uniform(expr, opt);
    if (c_qbound->parsed()) return cmd_qbound(expr, qn, opt);
    if (c_verify->parsed()) return cmd_verify(verify_id, sets, m_range, max_group, opt);
    if (c_suite->parsed()) return cmd_suite(only, opt);
    if (c_search->parsed()) return cmd_search(pred, family, lo, hi, opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapError& e) {
    std::cerr << "cap error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
