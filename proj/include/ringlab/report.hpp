#pragma once

#include <string>

#include <json.hpp>

#include "ringlab/classify.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

using OJson = nlohmann::ordered_json;

/// One report value backs both renderings; the body is the single source of
/// truth, serialised as "ringlab/1" records with stable field order.
struct Report {
  std::string command;
  OJson body;
  int exit_code = 0;
};

Report make_report(const std::string& command, OJson payload);

std::string render_json(const Report& r);
std::string render_text(const Report& r);

// payload builders shared by the CLI and the tests
OJson profile_payload(const std::string& expr, const FiniteRing& r, const RingProfile& p);
OJson element_payload(const std::string& expr, const FiniteRing& r, const ElementReport& er);
OJson decompose_payload(const std::string& expr, const FiniteRing& r, Index x,
                        const Decomposition& d);
OJson radical_payload(const std::string& expr, const FiniteRing& r, const RadicalData& rad);
OJson uniform_payload(const std::string& expr, const FiniteRing& r, const PeriodData& u);
OJson qbound_payload(const std::string& expr, const QBound& q);

}  // namespace ringlab
