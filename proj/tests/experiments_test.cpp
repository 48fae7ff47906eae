#include "inbl/experiments.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "inbl/dsl.hpp"
#include "inbl/mix.hpp"

using namespace inbl;

TEST(ZeroStats, AsymmetricUniverseNeverVanishes) {
  ReferenceSystem sys(6, RtwScheme::Asymmetric, 1);
  const ZeroStats z = run_zero_stats(build_universe(6), sys, 50000);
  EXPECT_EQ(z.clocks, 50000u);
  EXPECT_EQ(z.zero_clocks, 0u);
  EXPECT_EQ(z.zero_fraction, 0.0);
  EXPECT_TRUE(z.run_lengths.empty());
}

TEST(ZeroStats, SymmetricZeroFraction) {
  const std::uint64_t clocks = 200000;
  for (std::uint32_t m : {1u, 4u}) {
    ReferenceSystem sys(m, RtwScheme::Symmetric, 40 + m);
    const ZeroStats z = run_zero_stats(build_universe(m), sys, clocks);
    const double p = 1.0 - std::ldexp(1.0, -static_cast<int>(m));
    EXPECT_NEAR(z.zero_fraction, p, 4 * std::sqrt(p * (1 - p) / clocks)) << m;
    std::uint64_t counted = 0;
    for (const auto& [len, n] : z.run_lengths) counted += len * n;
    EXPECT_EQ(counted, z.zero_clocks);
  }
}

TEST(ZeroStats, RunLengthsDecayGeometrically) {
  ReferenceSystem sys(1, RtwScheme::Symmetric, 5);
  const ZeroStats z = run_zero_stats(build_universe(1), sys, 400000);
  EXPECT_NEAR(fit_log_slope(z.run_lengths, 100), -std::log(2.0), 0.1 * std::log(2.0));
}

TEST(FitLogSlope, ExactGeometric) {
  std::map<std::uint64_t, std::uint64_t> h{{1, 8000}, {2, 4000}, {3, 2000}, {4, 1000}, {5, 3}};
  EXPECT_NEAR(fit_log_slope(h, 100), -std::log(2.0), 1e-12);
  EXPECT_THROW(fit_log_slope({{1, 5}}, 100), std::domain_error);
}

TEST(Crosscorr, SelfIsOneDistinctIsSmall) {
  const std::uint64_t clocks = 100000;
  ReferenceSystem sys(4, RtwScheme::Asymmetric, 9);
  const Expr a = parse_dsl("bits 4; R1_1*R2_0*R3_1*R4_0").expr;
  const Expr b = parse_dsl("bits 4; R1_0*R2_0*R3_1*R4_0").expr;
  EXPECT_EQ(run_crosscorr(a, a, sys, clocks), 1.0);
  EXPECT_EQ(run_crosscorr(a, Expr::sum({{-2, a}}), sys, clocks), -1.0);
  EXPECT_LE(std::abs(run_crosscorr(a, b, sys, clocks)), 5.0 / std::sqrt(static_cast<double>(clocks)));
}

TEST(Crosscorr, ZeroVarianceIsRejected) {
  ReferenceSystem sys(1, RtwScheme::Asymmetric, 9);
  const Expr a = Expr::ref({1, 0});
  EXPECT_THROW(run_crosscorr(a, a - a, sys, 100), std::domain_error);
}

TEST(Speedup, Values) {
  const SpeedupReport r = speedup_report(4, 2, 2);
  EXPECT_DOUBLE_EQ(r.classical_ratio, 4.0);
  EXPECT_DOUBLE_EQ(r.grover_ratio, 2.0);
  EXPECT_DOUBLE_EQ(r.photon_bound, 64.0);
  EXPECT_EQ(r.forward_lookup_cost, 6u);
  EXPECT_EQ(r.inverse_lookup_cost, 6u);
  const SpeedupReport big = speedup_report(20, 10, 10);
  EXPECT_DOUBLE_EQ(big.classical_ratio, 1048576.0 / 20);
  EXPECT_DOUBLE_EQ(big.photon_bound, 20.0 * 1048576.0);
  EXPECT_THROW(speedup_report(0, 0, 0), std::invalid_argument);
}
