#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "inbl/collapse.hpp"
#include "inbl/dyadic.hpp"
#include "inbl/experiments.hpp"
#include "inbl/oracle.hpp"
#include "inbl/phonebook.hpp"

namespace inbl {

// Amplitudes serialize as {"mantissa": "<decimal>", "exp2": <int>}.
nlohmann::json to_json(const Dyadic& d);
Dyadic dyadic_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TraceRecord& r);
nlohmann::json to_json(const SearchOutcome& o);
nlohmann::json to_json(const EntangleResult& r);
nlohmann::json to_json(const LookupResult& r, std::uint32_t value_width);
nlohmann::json to_json(const ZeroStats& z);
nlohmann::json to_json(const SpeedupReport& s);
nlohmann::json to_json(const Expansion& e);

struct ExperimentReport {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  double duration_ms = 0;

  // Keys are emitted sorted, so equal reports serialize identically apart
  // from duration_ms.
  nlohmann::json to_json() const;
};

}  // namespace inbl
