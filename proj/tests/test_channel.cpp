#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "irsbf/channel.hpp"

using namespace irsbf;

TEST(PathLoss, ReferenceDistance) {
  Geometry geo;
  EXPECT_NEAR(path_loss_linear(1.0, 2.5, geo), 1e-3, 1e-18);
}

TEST(PathLoss, TenMetresExponentTwo) {
  Geometry geo;
  EXPECT_NEAR(path_loss_linear(10.0, 2.0, geo), 1e-5, 1e-20);
}

TEST(PathLoss, ZeroExponentIsFlat) {
  Geometry geo;
  for (double d : {0.1, 1.0, 33.0, 1e4}) EXPECT_NEAR(path_loss_linear(d, 0.0, geo), 1e-3, 1e-18);
}

TEST(PathLoss, RejectsNonPositiveDistance) {
  Geometry geo;
  EXPECT_THROW(path_loss_linear(0.0, 2.0, geo), std::invalid_argument);
  EXPECT_THROW(path_loss_linear(-1.0, 2.0, geo), std::invalid_argument);
}

TEST(PathLoss, StrictlyDecreasingAndContinuous) {
  Geometry geo;
  double prev = path_loss_linear(0.01, 3.5, geo);
  for (double d = 0.02; d < 200.0; d *= 1.1) {
    const double g = path_loss_linear(d, 3.5, geo);
    EXPECT_LT(g, prev);
    prev = g;
  }
  EXPECT_NEAR(path_loss_linear(1.0 - 1e-9, 2.5, geo), path_loss_linear(1.0 + 1e-9, 2.5, geo), 1e-11);
}

TEST(Geometry, TableIDistances) {
  const Distances d = derive_distances(Geometry{});
  EXPECT_NEAR(d.d_sd, 49.0408, 1e-4);
  EXPECT_NEAR(d.d_id, std::sqrt(5.0), 1e-12);
}

TEST(Geometry, CollinearAtIrsRejected) {
  Geometry geo;
  geo.d_sd_h = geo.d_si;
  geo.d_v = 0.0;
  EXPECT_EQ(derive_distances(geo).d_id, 0.0);
  EXPECT_THROW(check_geometry(geo), std::invalid_argument);
  EXPECT_THROW(link_gains(geo), std::invalid_argument);
}

TEST(Geometry, VerticalOnly) {
  Geometry geo;
  geo.d_sd_h = 0.0;
  EXPECT_DOUBLE_EQ(derive_distances(geo).d_sd, geo.d_v);
}

TEST(Geometry, LinkGainsUseMatchingExponents) {
  Geometry geo;
  const Distances d = derive_distances(geo);
  const LinkGains g = link_gains(geo);
  EXPECT_DOUBLE_EQ(g.si, path_loss_linear(geo.d_si, geo.gamma_si, geo));
  EXPECT_DOUBLE_EQ(g.id, path_loss_linear(d.d_id, geo.gamma_id, geo));
  EXPECT_DOUBLE_EQ(g.sd, path_loss_linear(d.d_sd, geo.gamma_sd, geo));
}

TEST(Rayleigh, ZeroGainIsZero) {
  Rng rng(1);
  EXPECT_EQ(sample_rayleigh(rng, 3, 4, 0.0).norm(), 0.0);
}

TEST(Rayleigh, Deterministic) {
  Rng a(42), b(42);
  EXPECT_EQ(sample_rayleigh(a, 5, 3, 2.0), sample_rayleigh(b, 5, 3, 2.0));
  EXPECT_EQ(make_rng(9, 3, 1)(), make_rng(9, 3, 1)());
  EXPECT_NE(make_rng(9, 3, 1)(), make_rng(9, 4, 1)());
  EXPECT_NE(make_rng(9, 3, 1)(), make_rng(9, 3, 2)());
}

TEST(Rayleigh, VarianceWithinOnePercent) {
  Rng rng(7);
  const double g = 3.7e-4;
  const CMat m = sample_rayleigh(rng, 1000, 1000, g);
  const double var = m.cwiseAbs2().mean();
  EXPECT_NEAR(var, g, 0.01 * g);
}

TEST(Rayleigh, MeanAndVarianceAtThreeSigma) {
  Rng rng(8);
  const int n = 100000;
  const double g = 2.0;
  const CMat m = sample_rayleigh(rng, n, 1, g);
  const cdouble mean = m.mean();
  // Each component of the mean has standard deviation sqrt(g / 2 / n).
  const double sd_mean = std::sqrt(g / 2.0 / n);
  EXPECT_LT(std::abs(mean.real()), 3.0 * sd_mean);
  EXPECT_LT(std::abs(mean.imag()), 3.0 * sd_mean);
  // |x|^2 is exponential with mean g, so its sample mean has sd g / sqrt(n).
  EXPECT_NEAR(m.cwiseAbs2().mean(), g, 3.0 * g / std::sqrt(static_cast<double>(n)));
  // Circular symmetry: equal power in both components.
  EXPECT_NEAR(m.real().cwiseAbs2().mean(), g / 2.0, 3.0 * g / std::sqrt(static_cast<double>(n)));
}

TEST(Los, RankOneAndNorms) {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const LOSChannel los = sample_los(rng, 4, 20, 2.5e-5);
    EXPECT_NEAR(los.a_s.squaredNorm(), 4.0, 1e-12);
    EXPECT_NEAR(los.a_i.squaredNorm(), 20.0, 1e-12);
    EXPECT_NEAR(std::norm(los.eta), 2.5e-5, 1e-18);
    const CMat h = los.h_si();
    EXPECT_NEAR(h.squaredNorm(), std::norm(los.eta) * 20.0 * 4.0, 1e-15);
    Eigen::JacobiSVD<CMat> svd(h);
    EXPECT_LT(svd.singularValues()[1], 1e-12 * svd.singularValues()[0]);
  }
}

TEST(Los, RejectsNonPositiveGain) {
  Rng rng(1);
  EXPECT_THROW(sample_los(rng, 2, 3, 0.0), std::invalid_argument);
}

TEST(SampleChannels, ShapesAndDirectLinkIndependentOfNi) {
  Geometry geo;
  Rng a = make_rng(5, 0, 1), b = make_rng(5, 0, 1);
  const ChannelSet c1 = sample_channels(a, 4, 10, geo);
  const ChannelSet c2 = sample_channels(b, 4, 30, geo);
  EXPECT_EQ(c1.h_si.rows(), 10);
  EXPECT_EQ(c1.h_si.cols(), 4);
  EXPECT_EQ(c2.h_id.size(), 30);
  EXPECT_EQ(c1.h_sd, c2.h_sd);
}
