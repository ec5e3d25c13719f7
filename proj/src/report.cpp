#include "ringlab/report.hpp"

#include <sstream>

namespace ringlab {

namespace {

const char* status_name(FlagStatus s) {
  switch (s) {
    case FlagStatus::True: return "true";
    case FlagStatus::False: return "false";
    case FlagStatus::TriviallyTrueFinite: return "trivially-true-finite";
    case FlagStatus::Skipped: return "skipped";
  }
  return "?";
}

void render_value(std::ostringstream& os, const OJson& v, int depth) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_value(os, it.value(), depth + 1);
      } else {
        os << pad << it.key() << ": "
           << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
           << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (item.is_object() || item.is_array()) {
        os << pad << "-\n";
        render_value(os, item, depth + 1);
      } else {
        os << pad << "- "
           << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
      }
    }
  } else {
    os << pad << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

}  // namespace

Report make_report(const std::string& command, OJson payload) {
  Report r;
  r.command = command;
  r.body = OJson::object();
  r.body["format"] = "ringlab/1";
  r.body["command"] = command;
  for (auto it = payload.begin(); it != payload.end(); ++it) r.body[it.key()] = it.value();
  return r;
}

std::string render_json(const Report& r) { return r.body.dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "== ringlab " << r.command << " ==\n";
  for (auto it = r.body.begin(); it != r.body.end(); ++it) {
    if (it.key() == "format" || it.key() == "command") continue;
    if (it.key() == "flags" && it.value().is_object()) {
      os << "flags:\n";
      size_t width = 0;
      for (auto f = it.value().begin(); f != it.value().end(); ++f) {
        width = std::max(width, f.key().size());
      }
      for (auto f = it.value().begin(); f != it.value().end(); ++f) {
        const OJson& fl = f.value();
        os << "  " << f.key() << std::string(width - f.key().size() + 2, ' ');
        if (fl.is_object()) {
          os << fl.value("status", std::string("?"));
          if (fl.contains("m")) os << "  m=" << fl["m"].dump();
          if (fl.contains("witness")) {
            os << "  witness=" << fl["witness"].get<std::string>();
          }
          if (fl.contains("note") && !fl["note"].get<std::string>().empty()) {
            os << "  (" << fl["note"].get<std::string>() << ")";
          }
        } else {
          os << fl.dump();
        }
        os << "\n";
      }
      continue;
    }
    if (it.value().is_object() || it.value().is_array()) {
      os << it.key() << ":\n";
      render_value(os, it.value(), 1);
    } else {
      os << it.key() << ": "
         << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
         << "\n";
    }
  }
  return os.str();
}

OJson profile_payload(const std::string& expr, const FiniteRing& r, const RingProfile& p) {
  OJson body;
  body["ring"] = expr;
  body["order"] = p.order;
  body["characteristic"] = p.chars.characteristic;
  body["pi"] = p.chars.pi;
  body["period"] = {{"n", p.uniform.n}, {"k", p.uniform.k}};
  body["counts"] = {{"units", p.units},
                    {"idempotents", p.idempotents},
                    {"nilpotents", p.nilpotents},
                    {"radical", p.radical_size}};
  body["nilpotency_degree"] = p.in_ring;
  OJson flags = OJson::object();
  OJson witnesses = OJson::object();
  for (const auto& [name, f] : p.flags) {
    OJson fl;
    fl["status"] = status_name(f.status);
    if (f.param) fl["m"] = *f.param;
    if (f.witness) {
      fl["witness"] = r.label(*f.witness);
      witnesses[name] = {{"element", r.label(*f.witness)}, {"index", *f.witness}};
    }
    if (!f.note.empty()) fl["note"] = f.note;
    flags[name] = fl;
  }
  body["flags"] = flags;
  if (!witnesses.empty()) body["witnesses"] = witnesses;
  return body;
}

OJson element_payload(const std::string& expr, const FiniteRing& r, const ElementReport& er) {
  OJson body;
  body["ring"] = expr;
  body["order"] = r.order();
  body["element"] = er.label;
  body["index"] = er.x;
  body["period"] = {{"n", er.period.n}, {"k", er.period.k}};
  OJson fl;
  fl["nilpotent"] = er.nilpotent;
  if (er.nilpotent) fl["nilpotency_index"] = er.nil_index;
  fl["idempotent"] = er.idempotent;
  fl["tripotent"] = er.tripotent;
  if (er.m_potent) fl["m_potent"] = *er.m_potent;
  fl["unit"] = er.unit;
  if (er.unit) fl["unit_order"] = er.unit_order;
  fl["in_jacobson"] = er.in_jacobson;
  fl["central"] = er.central;
  body["flags"] = fl;
  return body;
}

OJson decompose_payload(const std::string& expr, const FiniteRing& r, Index x,
                        const Decomposition& d) {
  OJson body;
  body["ring"] = expr;
  body["order"] = r.order();
  body["element"] = r.label(x);
  body["a"] = {{"element", r.label(d.a.index)},
               {"index", d.a.index},
               {"nilpotency_index", d.a_nil_index}};
  body["b"] = {{"element", r.label(d.b.index)},
               {"index", d.b.index},
               {"potency", d.b_potency}};
  body["commute"] = d.commute;
  body["annihilate"] = d.annihilate;
  return body;
}

OJson radical_payload(const std::string& expr, const FiniteRing& r, const RadicalData& rad) {
  OJson body;
  body["ring"] = expr;
  body["order"] = r.order();
  body["characteristic"] = characteristic(r).characteristic;
  body["radical_size"] = rad.ideal.count();
  body["nilpotency_index"] = rad.nilpotency_index;
  body["path"] = rad.structural ? "structural" : "brute-force";
  OJson elems = OJson::array();
  int64_t shown = 0;
  for (Index i : rad.ideal.indices()) {
    if (shown++ >= 64) {
      elems.push_back("...");
      break;
    }
    elems.push_back(r.label(i));
  }
  body["elements"] = elems;
  return body;
}

OJson uniform_payload(const std::string& expr, const FiniteRing& r, const PeriodData& u) {
  OJson body;
  body["ring"] = expr;
  body["order"] = r.order();
  body["period"] = {{"n", u.n}, {"k", u.k}};
  body["identity"] =
      "x^" + std::to_string(u.n + u.k) + " = x^" + std::to_string(u.n) + " for all x";
  return body;
}

OJson qbound_payload(const std::string& expr, const QBound& q) {
  OJson body;
  body["ring"] = expr;
  body["n"] = q.n;
  body["q"] = q.q;
  body["field_orders"] = q.field_orders;
  body["matrices_checked"] = q.matrices_checked;
  body["verified"] = q.verified;
  if (q.violation) body["violation_index"] = *q.violation;
  return body;
}

}  // namespace ringlab
