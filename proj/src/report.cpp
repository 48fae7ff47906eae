#include "inbl/report.hpp"

namespace inbl {

using nlohmann::json;

json to_json(const Dyadic& d) { return json{{"mantissa", d.mantissa_string()}, {"exp2", d.exp2()}}; }

Dyadic dyadic_from_json(const json& j) {
  return Dyadic::from_parts(j.at("mantissa").get<std::string>(), j.at("exp2").get<std::int64_t>());
}

json to_json(const TraceRecord& r) {
  return json{{"action", r.action}, {"clock", r.clock}, {"amplitude", to_json(r.amplitude)}};
}

namespace {

json trace_json(const std::vector<TraceRecord>& trace) {
  json out = json::array();
  for (const auto& r : trace) out.push_back(to_json(r));
  return out;
}

}  // namespace

json to_json(const SearchOutcome& o) {
  json j{{"verdict", to_string(o.verdict)},
         {"switch_ops", o.switch_ops},
         {"clocks_waited", o.clocks_waited},
         {"clocks_observed", o.clocks_observed},
         {"epsilon", o.epsilon ? to_json(*o.epsilon) : json(nullptr)},
         {"witness_clock", o.witness_clock ? json(*o.witness_clock) : json(nullptr)},
         {"witness_amplitude", o.witness_clock ? to_json(o.witness_amplitude) : json(nullptr)},
         {"trace", trace_json(o.trace)}};
  return j;
}

json to_json(const EntangleResult& r) {
  return json{{"class", to_string(r.bell_class)},
              {"clock", r.clock},
              {"switch_ops", r.switch_ops},
              {"strings", r.strings},
              {"trace", trace_json(r.trace)}};
}

json to_json(const LookupResult& r, std::uint32_t value_width) {
  return json{{"value", format_bits(r.value, value_width)},
              {"switch_ops", r.switch_ops},
              {"clock", r.clock},
              {"trace", trace_json(r.trace)}};
}

json to_json(const ZeroStats& z) {
  json hist = json::array();
  for (const auto& [length, count] : z.run_lengths) hist.push_back(json{{"length", length}, {"count", count}});
  return json{{"clocks", z.clocks},
              {"zero_clocks", z.zero_clocks},
              {"zero_fraction", z.zero_fraction},
              {"waiting_time_histogram", hist}};
}

json to_json(const SpeedupReport& s) {
  return json{{"M", s.bits},
              {"N", s.name_bits},
              {"S", s.number_bits},
              {"classical_ratio", {{"formula", kClassicalFormula}, {"value", s.classical_ratio}}},
              {"grover_ratio", {{"formula", kGroverFormula}, {"value", s.grover_ratio}}},
              {"photon_bound", {{"formula", kPhotonFormula}, {"value", s.photon_bound}}},
              {"forward_lookup_cost", {{"formula", kForwardCostFormula}, {"value", s.forward_lookup_cost}}},
              {"inverse_lookup_cost", {{"formula", kInverseCostFormula}, {"value", s.inverse_lookup_cost}}}};
}

json to_json(const Expansion& e) {
  json entries = json::array();
  for (const auto& x : e.entries()) {
    entries.push_back(json{{"string", pattern_text(x.monomial, e.num_bits())}, {"coefficient", x.coefficient}});
  }
  return json{{"bits", e.num_bits()}, {"non_canonical", e.non_canonical()}, {"entries", entries}};
}

json ExperimentReport::to_json() const {
  return json{{"command", command},     {"seed", seed},       {"parameters", parameters},
              {"records", records},     {"summary", summary}, {"duration_ms", duration_ms}};
}

}  // namespace inbl
