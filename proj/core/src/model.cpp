#include "irsbf/model.hpp"

#include <cmath>

namespace irsbf {

SystemConfig validate_config(const SystemConfig& cfg) {
  if (cfg.n_s < 1) throw ConfigError("n_s", "n_s must be at least 1");
  if (cfg.n_i < 0) throw ConfigError("n_i", "n_i must be non-negative");
  if (!(cfg.p > 0.0) || !std::isfinite(cfg.p))
    throw ConfigError("p", "p (transmit power) must be positive");
  if (!(cfg.kappa_s >= 0.0 && cfg.kappa_s < 1.0))
    throw ConfigError("kappa_s", "kappa_s out of range [0, 1)");
  if (!(cfg.kappa_d >= 0.0 && cfg.kappa_d < 1.0))
    throw ConfigError("kappa_d", "kappa_d out of range [0, 1)");
  if (!(cfg.sigma_n2 > 0.0) || !std::isfinite(cfg.sigma_n2))
    throw ConfigError("sigma_n2", "sigma_n2 (noise power) must be positive");
  return cfg;
}

double effective_power(const SystemConfig& cfg) { return cfg.effective_power(); }

void check_channels(const ChannelSet& ch) {
  if (ch.h_si.rows() != ch.h_id.size())
    throw DimensionError("h_si rows must equal the length of h_id");
  if (ch.h_si.cols() != ch.h_sd.size())
    throw DimensionError("h_si columns must equal the length of h_sd");
  if (ch.h_sd.size() == 0) throw DimensionError("h_sd must be non-empty");
  if (!ch.h_si.allFinite() || !ch.h_id.allFinite() || !ch.h_sd.allFinite())
    throw std::invalid_argument("channel entries must be finite");
}

void check_channels(const ChannelSet& ch, const SystemConfig& cfg) {
  check_channels(ch);
  if (ch.n_s() != cfg.n_s || ch.n_i() != cfg.n_i)
    throw DimensionError("channel dimensions do not match the configuration");
}

CompositeChannel build_composite(const ChannelSet& ch) {
  check_channels(ch);
  const Eigen::Index n_s = ch.h_sd.size();
  const Eigen::Index n_i = ch.h_id.size();
  CompositeChannel out;
  out.psi.resize(n_s, n_i + 1);
  // H_SI^H diag(h_ID): column i of H_SI^H scaled by h_ID[i].
  out.psi.leftCols(n_i) = ch.h_si.adjoint() * ch.h_id.asDiagonal();
  out.psi.col(n_i) = ch.h_sd;
  return out;
}

PhaseConstraint PhaseConstraint::discrete(int bits) {
  if (bits < 1 || bits > 16)
    throw std::invalid_argument("discrete phase bits must be in [1, 16]");
  return {PhaseKind::Discrete, bits};
}

namespace {

cdouble unit(cdouble z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : cdouble(1.0, 0.0);
}

}  // namespace

LiftedPhaseVector::LiftedPhaseVector(CVec values) : values_(std::move(values)) {
  for (Eigen::Index i = 0; i < values_.size(); ++i) values_[i] = unit(values_[i]);
}

LiftedPhaseVector LiftedPhaseVector::ones(int n_i) {
  return LiftedPhaseVector(CVec::Ones(n_i + 1));
}

double LiftedPhaseVector::modulus_error() const {
  double err = 0.0;
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    err = std::max(err, std::abs(std::abs(values_[i]) - 1.0));
  return err;
}

double wrap_phase(double phi) {
  double r = std::fmod(phi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

ReflectConfig ReflectConfig::from_phases(const RVec& phases) {
  ReflectConfig rc;
  rc.phases_.resize(phases.size());
  rc.theta_.resize(phases.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    rc.phases_[i] = wrap_phase(phases[i]);
    rc.theta_[i] = std::polar(1.0, rc.phases_[i]);
  }
  return rc;
}

ReflectConfig ReflectConfig::from_theta(const CVec& theta) {
  RVec phases(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    phases[i] = std::abs(theta[i]) > 0.0 ? std::arg(theta[i]) : 0.0;
  return from_phases(phases);
}

ReflectConfig ReflectConfig::from_lifted(const LiftedPhaseVector& lifted) {
  const int n = lifted.n_i();
  if (n < 0) throw DimensionError("lifted vector must hold at least the slack entry");
  const cdouble t = lifted[n];
  CVec theta(n);
  for (int i = 0; i < n; ++i) theta[i] = std::conj(lifted[i] / t);
  return from_theta(theta);
}

ReflectConfig ReflectConfig::identity(int n_i) {
  return from_phases(RVec::Zero(n_i));
}

LiftedPhaseVector ReflectConfig::lift() const {
  CVec v(theta_.size() + 1);
  v.head(theta_.size()) = theta_.conjugate();
  v[theta_.size()] = 1.0;
  return LiftedPhaseVector(std::move(v));
}

}  // namespace irsbf
