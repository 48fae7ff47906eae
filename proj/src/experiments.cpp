#include "inbl/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "inbl/evaluator.hpp"
#include "inbl/phonebook.hpp"

namespace inbl {

ZeroStats run_zero_stats(const Expr& expr, const ReferenceSystem& system, std::uint64_t clocks,
                         std::uint64_t t_start) {
  if (clocks < 1) throw std::invalid_argument("zero statistics need at least one clock");
  Evaluator ev(expr, system);
  ZeroStats out;
  out.clocks = clocks;
  std::uint64_t run = 0;
  for (std::uint64_t i = 0; i < clocks; ++i) {
    if (ev.eval(t_start + i).is_zero()) {
      ++out.zero_clocks;
      ++run;
    } else if (run > 0) {
      ++out.run_lengths[run];
      run = 0;
    }
  }
  if (run > 0) ++out.run_lengths[run];
  out.zero_fraction = static_cast<double>(out.zero_clocks) / static_cast<double>(clocks);
  return out;
}

double fit_log_slope(const std::map<std::uint64_t, std::uint64_t>& histogram, std::uint64_t min_count) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [length, count] : histogram) {
    if (count < min_count) continue;
    const double x = static_cast<double>(length);
    const double y = std::log(static_cast<double>(count));
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 2) throw std::domain_error("need at least two populated run lengths to fit a slope");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double run_crosscorr(const Expr& a, const Expr& b, const ReferenceSystem& system, std::uint64_t clocks,
                     std::uint64_t t_start) {
  if (clocks < 1) throw std::invalid_argument("cross-correlation needs at least one clock");
  Evaluator ea(a, system);
  Evaluator eb(b, system);
  Dyadic sa, sb, saa, sbb, sab;
  for (std::uint64_t i = 0; i < clocks; ++i) {
    const Dyadic x = ea.eval(t_start + i);
    const Dyadic y = eb.eval(t_start + i);
    sa += x;
    sb += y;
    saa += x * x;
    sbb += y * y;
    sab += x * y;
  }
  const Dyadic n(static_cast<std::int64_t>(clocks));
  const Dyadic cov = n * sab - sa * sb;
  const Dyadic var_a = n * saa - sa * sa;
  const Dyadic var_b = n * sbb - sb * sb;
  if (var_a.is_zero() || var_b.is_zero()) throw std::domain_error("zero-variance signal");
  const Dyadic denom_sq = var_a * var_b;
  if (cov * cov == denom_sq) return cov.sign() > 0 ? 1.0 : -1.0;
  return cov.to_double() / std::sqrt(var_a.to_double() * var_b.to_double());
}

SpeedupReport speedup_report(std::uint32_t bits, std::uint32_t name_bits, std::uint32_t number_bits) {
  if (bits < 1) throw std::invalid_argument("speedup report needs M >= 1");
  const double m = bits;
  const double size = std::ldexp(1.0, static_cast<int>(bits));
  SpeedupReport r{};
  r.bits = bits;
  r.name_bits = name_bits;
  r.number_bits = number_bits;
  r.classical_ratio = size / m;
  r.grover_ratio = size / std::pow(m, 1.5);
  r.photon_bound = m * size;
  r.forward_lookup_cost = switching_cost(name_bits, number_bits, LookupDirection::Forward);
  r.inverse_lookup_cost = switching_cost(name_bits, number_bits, LookupDirection::Inverse);
  return r;
}

}  // namespace inbl
