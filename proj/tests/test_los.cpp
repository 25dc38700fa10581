#include <gtest/gtest.h>

#include "irsbf/channel.hpp"
#include "irsbf/los.hpp"
#include "irsbf/mm.hpp"
#include "irsbf/txbf.hpp"
#include "oracles.hpp"

using namespace irsbf;

namespace {

struct LosInstance {
  LOSChannel ch;
  CVec h_id;
  SystemConfig cfg;
};

LosInstance instance(std::uint64_t seed, int n_s, int n_i) {
  LosInstance li;
  Rng rng(seed);
  li.cfg.n_s = n_s;
  li.cfg.n_i = n_i;
  li.ch = sample_los(rng, n_s, n_i, 1e-6);
  li.h_id = oracle::complex_gaussian(rng, n_i, 1e-6);
  return li;
}

}  // namespace

TEST(L1Norm, Examples) {
  CVec x(3);
  x << cdouble(3, 4), cdouble(0, -1), 0.0;
  EXPECT_DOUBLE_EQ(l1_norm(x), 6.0);
  EXPECT_EQ(l1_norm(CVec()), 0.0);
}

TEST(SolveLos, CoherentCombining) {
  const LosInstance li = instance(1, 4, 20);
  const LOSSolution sol = solve_los(li.ch, li.h_id, li.cfg);
  // Every term theta_i conj(h_i) a_I,i has the same phase.
  const cdouble ref = sol.theta.theta()[0] * std::conj(li.h_id[0]) * li.ch.a_i[0];
  for (int i = 1; i < 20; ++i) {
    const cdouble term = sol.theta.theta()[i] * std::conj(li.h_id[i]) * li.ch.a_i[i];
    EXPECT_NEAR(std::arg(term / ref), 0.0, 1e-12);
  }
  EXPECT_NEAR(sol.w.power(), li.cfg.effective_power(), 1e-12 * li.cfg.effective_power());
}

TEST(SolveLos, ClosedFormMatchesEvaluation) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const LosInstance li = instance(10 + s, 1 + static_cast<int>(s % 4), 10 + static_cast<int>(s));
    const LOSSolution sol = solve_los(li.ch, li.h_id, li.cfg);
    EXPECT_NEAR(sol.snr / sol.snr_closed, 1.0, 1e-10);
    const double direct = los_closed_snr(li.cfg, std::norm(li.ch.eta), l1_norm(li.h_id));
    EXPECT_NEAR(sol.snr_closed, direct, 1e-12 * direct);
    const ChannelSet cs = los_channel_set(li.ch, li.h_id);
    EXPECT_NEAR(evaluate_snr(sol.w, sol.theta, cs, li.cfg), sol.snr, 1e-10 * sol.snr);
  }
}

TEST(SolveLos, MMAgrees) {
  MMSettings mm;
  mm.epsilon = 1e-14;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const LosInstance li = instance(40 + s, 4, 16);
    const ChannelSet cs = los_channel_set(li.ch, li.h_id);
    const CompositeChannel psi = build_composite(cs);
    Rng rng(s);
    const MMResult r = run_mm(random_lifted(rng, 16), psi, li.cfg, mm);
    const LOSSolution sol = solve_los(li.ch, li.h_id, li.cfg);
    EXPECT_NEAR(r.eval.snr / sol.snr_closed, 1.0, 1e-6);
  }
}

TEST(SolveLos, RandomPhasesNeverBeatClosedForm) {
  const LosInstance li = instance(7, 4, 12);
  const ChannelSet cs = los_channel_set(li.ch, li.h_id);
  const LOSSolution sol = solve_los(li.ch, li.h_id, li.cfg);
  Rng rng(7);
  for (int k = 0; k < 1000; ++k) {
    const ReflectConfig th = ReflectConfig::from_theta(oracle::random_phases(rng, 12));
    const TransmitBeam w = optimal_transmit_beam(th, cs, li.cfg);
    EXPECT_LE(evaluate_snr(w, th, cs, li.cfg), sol.snr_closed * (1.0 + 1e-12));
  }
}

TEST(SolveLos, BeamIsOptimalForItsSurface) {
  const LosInstance li = instance(8, 4, 12);
  const ChannelSet cs = los_channel_set(li.ch, li.h_id);
  const LOSSolution sol = solve_los(li.ch, li.h_id, li.cfg);
  const TransmitBeam w = optimal_transmit_beam(sol.theta, cs, li.cfg);
  EXPECT_NEAR(evaluate_snr(w, sol.theta, cs, li.cfg), sol.snr, 1e-10 * sol.snr);
}

TEST(SolveLos, DimensionChecked) {
  const LosInstance li = instance(9, 4, 12);
  EXPECT_THROW(solve_los(li.ch, CVec::Ones(5), li.cfg), DimensionError);
}

TEST(AsymptoticSnr, IncreasesWithElementsAndSaturates) {
  SystemConfig cfg;
  double prev = 0.0;
  for (int n : {10, 100, 1000, 10000, 100000}) {
    const double s = asymptotic_snr(cfg, n, 1e-6, 1e-6);
    EXPECT_GT(s, prev);
    prev = s;
  }
  const double limit = cfg.n_s / (cfg.kappa_d * cfg.n_s + (1.0 + cfg.kappa_d) * cfg.kappa_s);
  EXPECT_LT(prev, limit);
  EXPECT_NEAR(asymptotic_snr(cfg, 100000000, 1e-6, 1e-6), limit, 1e-3 * limit);
}

TEST(AsymptoticSnr, NoiseFreeLimit) {
  SystemConfig cfg;
  cfg.sigma_n2 = 0.0;
  const double limit = cfg.n_s / (cfg.kappa_d * cfg.n_s + (1.0 + cfg.kappa_d) * cfg.kappa_s);
  EXPECT_NEAR(asymptotic_snr(cfg, 50, 1e-6, 1e-6), limit, 1e-12 * limit);
}

TEST(AsymptoticSnr, RejectsBadInputs) {
  SystemConfig cfg;
  EXPECT_THROW(asymptotic_snr(cfg, 0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(asymptotic_snr(cfg, 10, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(asymptotic_snr(cfg, 10, 1.0, -1.0), std::invalid_argument);
}

TEST(AsymptoticSnr, MatchesMonteCarloMean) {
  SystemConfig cfg;
  const int n_i = 400;
  const double sigma_id2 = 6e-8;  // neither noise-limited nor saturated
  const double eta2 = 6e-8;
  Rng rng(11);
  double sum = 0.0;
  const int draws = 200;
  for (int k = 0; k < draws; ++k) {
    LOSChannel ch = sample_los(rng, cfg.n_s, n_i, eta2);
    const CVec h = oracle::complex_gaussian(rng, n_i, sigma_id2);
    sum += solve_los(ch, h, cfg).snr;
  }
  const double asym = asymptotic_snr(cfg, n_i, sigma_id2, eta2);
  const double limit = cfg.n_s / (cfg.kappa_d * cfg.n_s + (1.0 + cfg.kappa_d) * cfg.kappa_s);
  EXPECT_LT(asym, 0.8 * limit);
  EXPECT_GT(asym, 0.2 * limit);
  EXPECT_NEAR(sum / draws, asym, 0.05 * asym);
}
