#pragma once

// Closed-form design when the direct link is absent and the source-to-IRS
// channel is a rank-one line-of-sight channel eta * a_I * a_S^H.

#include "irsbf/channel.hpp"
#include "irsbf/model.hpp"
#include "irsbf/txbf.hpp"

namespace irsbf {

struct LOSSolution {
  ReflectConfig theta;
  TransmitBeam w;
  double snr = 0.0;             // SNR evaluated at (w, theta)
  double snr_closed = 0.0;      // closed ratio in terms of ||h_ID||_1
  double snr_asymptotic = 0.0;  // large-N_I formula, filled when sigma_id2 > 0
};

/// Sum of entry moduli.
double l1_norm(const CVec& x);

/// theta_i = exp(-j (arg(conj(h_i)) + arg(a_I,i))), w = sqrt(P~ / N_S) a_S.
/// sigma_id2 > 0 also evaluates the asymptotic formula.
LOSSolution solve_los(const LOSChannel& ch, const CVec& h_id, const SystemConfig& cfg,
                      double sigma_id2 = 0.0);

/// P~ N_S |eta|^2 L^2 / (P~ (kd N_S + (1+kd) ks) |eta|^2 L^2 + (1+kd) sigma^2), L = ||h_ID||_1.
double los_closed_snr(const SystemConfig& cfg, double eta_abs2, double h_id_l1);

/// Large-N_I SNR with |h_ID,i| Rayleigh of mean sqrt(pi) sigma_ID / 2.
double asymptotic_snr(const SystemConfig& cfg, int n_i, double sigma_id2, double eta_abs2);

/// Channel set with H_SI = eta a_I a_S^H and h_SD = 0.
ChannelSet los_channel_set(const LOSChannel& ch, const CVec& h_id);

}  // namespace irsbf
