#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "inbl/expr.hpp"
#include "inbl/reference_system.hpp"

namespace inbl {

struct ZeroStats {
  std::uint64_t clocks = 0;
  std::uint64_t zero_clocks = 0;
  double zero_fraction = 0;
  // run length of consecutive zero clocks -> number of such runs
  std::map<std::uint64_t, std::uint64_t> run_lengths;
};

ZeroStats run_zero_stats(const Expr& expr, const ReferenceSystem& system, std::uint64_t clocks,
                         std::uint64_t t_start = 0);

// Least-squares slope of log(count) against run length, over run lengths
// whose count is at least `min_count`. Geometric decay with ratio r gives
// slope log(r).
double fit_log_slope(const std::map<std::uint64_t, std::uint64_t>& histogram, std::uint64_t min_count);

// Pearson correlation of two signals over clocks [t_start, t_start + clocks).
// Sums are accumulated exactly; the estimate is exactly 1 when both signals
// coincide. Throws std::domain_error if either signal has zero variance.
double run_crosscorr(const Expr& a, const Expr& b, const ReferenceSystem& system, std::uint64_t clocks,
                     std::uint64_t t_start = 0);

struct SpeedupReport {
  std::uint32_t bits;
  std::uint32_t name_bits;
  std::uint32_t number_bits;
  double classical_ratio;  // 2^M / M
  double grover_ratio;     // 2^M / M^1.5
  double photon_bound;     // M * 2^M
  std::uint32_t forward_lookup_cost;
  std::uint32_t inverse_lookup_cost;
};

inline constexpr const char* kClassicalFormula = "2^M/M";
inline constexpr const char* kGroverFormula = "2^M/M^1.5";
inline constexpr const char* kPhotonFormula = "M*2^M";
inline constexpr const char* kForwardCostFormula = "N+2S";
inline constexpr const char* kInverseCostFormula = "S+2N";

SpeedupReport speedup_report(std::uint32_t bits, std::uint32_t name_bits, std::uint32_t number_bits);

}  // namespace inbl
