#include "irsbf/los.hpp"

#include <cmath>
#include <stdexcept>

namespace irsbf {

double l1_norm(const CVec& x) { return x.cwiseAbs().sum(); }

ChannelSet los_channel_set(const LOSChannel& ch, const CVec& h_id) {
  if (h_id.size() != ch.a_i.size()) throw DimensionError("h_id length must equal a_I length");
  ChannelSet out;
  out.h_si = ch.h_si();
  out.h_id = h_id;
  out.h_sd = CVec::Zero(ch.a_s.size());
  return out;
}

double los_closed_snr(const SystemConfig& cfg, double eta_abs2, double h_id_l1) {
  const double pt = cfg.effective_power();
  const double n_s = cfg.n_s;
  const double g = eta_abs2 * h_id_l1 * h_id_l1;
  return pt * n_s * g /
         (pt * (cfg.kappa_d * n_s + cfg.distortion_weight()) * g +
          (1.0 + cfg.kappa_d) * cfg.sigma_n2);
}

double asymptotic_snr(const SystemConfig& cfg, int n_i, double sigma_id2, double eta_abs2) {
  if (n_i <= 0 || !(sigma_id2 > 0.0) || !(eta_abs2 > 0.0))
    throw std::invalid_argument("asymptotic_snr needs positive n_i, sigma_id2 and eta_abs2");
  const double pt = cfg.effective_power();
  const double n_s = cfg.n_s;
  const double g = eta_abs2 * kPi * static_cast<double>(n_i) * n_i * sigma_id2;
  return pt * n_s * g /
         (pt * (cfg.kappa_d * n_s + cfg.distortion_weight()) * g +
          4.0 * (1.0 + cfg.kappa_d) * cfg.sigma_n2);
}

LOSSolution solve_los(const LOSChannel& ch, const CVec& h_id, const SystemConfig& cfg,
                      double sigma_id2) {
  if (ch.a_s.size() != cfg.n_s) throw DimensionError("a_S length must equal N_S");
  const int n_i = static_cast<int>(h_id.size());
  RVec phases(n_i);
  for (int i = 0; i < n_i; ++i)
    phases[i] = -(std::arg(std::conj(h_id[i])) + std::arg(ch.a_i[i]));

  LOSSolution out;
  out.theta = ReflectConfig::from_phases(phases);
  out.w.w = std::sqrt(cfg.effective_power() / cfg.n_s) * ch.a_s;
  out.snr = evaluate_snr(out.w, out.theta, los_channel_set(ch, h_id), cfg);
  out.snr_closed = los_closed_snr(cfg, std::norm(ch.eta), l1_norm(h_id));
  if (sigma_id2 > 0.0) out.snr_asymptotic = asymptotic_snr(cfg, n_i, sigma_id2, std::norm(ch.eta));
  return out;
}

}  // namespace irsbf
