#pragma once

// Impairment-aware SNR and the closed-form optimal transmit beamformer.

#include "irsbf/model.hpp"

namespace irsbf {

struct TransmitBeam {
  CVec w;

  double power() const { return w.squaredNorm(); }
};

/// Raised when the composite channel vector is identically zero.
class DegenerateChannelError : public std::runtime_error {
 public:
  DegenerateChannelError() : std::runtime_error("degenerate channel") {}
};

/// Upsilon = v v^H and the diagonal of
/// Upsilon~ = (1+kd) ks diag~{Upsilon} + (1+kd) sigma^2 / P~ I.
struct UpsilonPair {
  CMat upsilon;
  RVec upsilon_tilde;
};

/// v = H_SI^H Theta^H h_ID + h_SD (the conjugate of the effective row channel).
CVec composite_vector(const ReflectConfig& theta, const ChannelSet& ch);

UpsilonPair upsilon_pair(const CVec& v, const SystemConfig& cfg);

/// |v^H w|^2 / (v^H (kd w w^H + (1+kd) ks diag~{w w^H}) v + (1+kd) sigma^2)
double evaluate_snr(const CVec& w, const CVec& v, const SystemConfig& cfg);
double evaluate_snr(const TransmitBeam& w, const ReflectConfig& theta,
                    const ChannelSet& ch, const SystemConfig& cfg);

/// sqrt(P~) Upsilon~^{-1} v / ||Upsilon~^{-1} v||, global phase fixed so the
/// first nonzero entry is real positive. Throws DegenerateChannelError if v == 0.
TransmitBeam optimal_transmit_beam(const CVec& v, const SystemConfig& cfg);
TransmitBeam optimal_transmit_beam(const ReflectConfig& theta, const ChannelSet& ch,
                                   const SystemConfig& cfg);

/// sqrt(P~) v / ||v||, the matched-filter beam at full feasible power.
TransmitBeam matched_filter_beam(const CVec& v, const SystemConfig& cfg);

/// v^H Upsilon~^{-1} v
double psi_tilde(const CVec& v, const SystemConfig& cfg);
double psi_tilde(const ReflectConfig& theta, const ChannelSet& ch, const SystemConfig& cfg);

/// pt / (kd pt + 1): the SNR at the optimal beam when psi~ = pt.
double snr_from_psi_tilde(double pt, const SystemConfig& cfg);

/// SNR at the optimal beam for composite vector v, together with psi and psi~.
EvalResult evaluate_design(const CVec& v, const SystemConfig& cfg);

/// Rotates w so that its first nonzero entry is real positive.
CVec normalize_global_phase(const CVec& w);

}  // namespace irsbf
