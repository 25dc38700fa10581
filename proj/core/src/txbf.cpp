#include "irsbf/txbf.hpp"

#include <cmath>

namespace irsbf {

CVec composite_vector(const ReflectConfig& theta, const ChannelSet& ch) {
  check_channels(ch);
  if (theta.n_i() != ch.n_i())
    throw DimensionError("reflect configuration size does not match h_id");
  // H_SI^H Theta^H h_ID with Theta^H = diag(conj(theta)).
  const CVec reflected = theta.theta().conjugate().cwiseProduct(ch.h_id);
  return ch.h_si.adjoint() * reflected + ch.h_sd;
}

UpsilonPair upsilon_pair(const CVec& v, const SystemConfig& cfg) {
  UpsilonPair out;
  out.upsilon = v * v.adjoint();
  out.upsilon_tilde = cfg.distortion_weight() * v.cwiseAbs2() +
                      RVec::Constant(v.size(), cfg.noise_weight());
  return out;
}

double evaluate_snr(const CVec& w, const CVec& v, const SystemConfig& cfg) {
  if (w.size() != v.size()) throw DimensionError("beam size does not match N_S");
  const double signal = std::norm(v.dot(w));  // |v^H w|^2
  const double per_antenna = v.cwiseAbs2().dot(w.cwiseAbs2());
  const double denom = cfg.kappa_d * signal + cfg.distortion_weight() * per_antenna +
                       (1.0 + cfg.kappa_d) * cfg.sigma_n2;
  return signal / denom;
}

double evaluate_snr(const TransmitBeam& w, const ReflectConfig& theta, const ChannelSet& ch,
                    const SystemConfig& cfg) {
  return evaluate_snr(w.w, composite_vector(theta, ch), cfg);
}

CVec normalize_global_phase(const CVec& w) {
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double r = std::abs(w[i]);
    if (r > 0.0) return w * (std::conj(w[i]) / r);
  }
  return w;
}

TransmitBeam optimal_transmit_beam(const CVec& v, const SystemConfig& cfg) {
  if (v.size() == 0 || v.squaredNorm() == 0.0) throw DegenerateChannelError();
  const RVec diag = upsilon_pair(v, cfg).upsilon_tilde;
  const CVec u = v.cwiseQuotient(diag.cast<cdouble>());
  return {normalize_global_phase(std::sqrt(cfg.effective_power()) * u / u.norm())};
}

TransmitBeam optimal_transmit_beam(const ReflectConfig& theta, const ChannelSet& ch,
                                   const SystemConfig& cfg) {
  return optimal_transmit_beam(composite_vector(theta, ch), cfg);
}

TransmitBeam matched_filter_beam(const CVec& v, const SystemConfig& cfg) {
  if (v.size() == 0 || v.squaredNorm() == 0.0) throw DegenerateChannelError();
  return {normalize_global_phase(std::sqrt(cfg.effective_power()) * v / v.norm())};
}

double psi_tilde(const CVec& v, const SystemConfig& cfg) {
  const RVec mag2 = v.cwiseAbs2();
  const double a = cfg.distortion_weight();
  const double b = cfg.noise_weight();
  double sum = 0.0;
  for (Eigen::Index m = 0; m < mag2.size(); ++m) sum += mag2[m] / (a * mag2[m] + b);
  return sum;
}

double psi_tilde(const ReflectConfig& theta, const ChannelSet& ch, const SystemConfig& cfg) {
  return psi_tilde(composite_vector(theta, ch), cfg);
}

double snr_from_psi_tilde(double pt, const SystemConfig& cfg) {
  // psi~ already carries P~ through the noise weight, so the optimal-beam SNR
  // is psi~ / (kd psi~ + 1) with no further power factor.
  if (std::isinf(pt)) return cfg.kappa_d > 0.0 ? 1.0 / cfg.kappa_d : pt;
  return pt / (cfg.kappa_d * pt + 1.0);
}

EvalResult evaluate_design(const CVec& v, const SystemConfig& cfg) {
  EvalResult out;
  out.psi_tilde_val = psi_tilde(v, cfg);
  out.psi_val = snr_from_psi_tilde(out.psi_tilde_val, cfg);
  out.snr = v.squaredNorm() > 0.0 ? evaluate_snr(optimal_transmit_beam(v, cfg).w, v, cfg) : 0.0;
  return out;
}

}  // namespace irsbf
