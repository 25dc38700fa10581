#pragma once

// Core domain types for an IRS-assisted MISO link with transceiver hardware
// impairments: system configuration, channel blocks, the composite channel
// matrix and the reflect configuration of the surface.
//
// Conventions used throughout the library:
//   * powers are linear watts; dB conversion happens at the CLI boundary only.
//   * ReflectConfig stores the physical diagonal of the reflect matrix,
//     theta_i = exp(j * phi_i).
//   * The lifted vector used by the optimizers is
//       theta_tilde = [conj(theta_1), ..., conj(theta_N), t]
//     so that psi * theta_tilde = H_SI^H * Theta^H * h_ID + t * h_SD.
//     Conjugation happens only in lift() / ReflectConfig::from_lifted().

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace irsbf {

using cdouble = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kUnitModulusTol = 1e-12;

/// Raised by validate_config(); field() names the offending parameter.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised on inconsistent matrix/vector shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SystemConfig {
  int n_s = 4;              // source antennas
  int n_i = 50;             // reflecting elements (0 = no IRS)
  double p = 15.848931924611133;  // max transmit power [W] (12 dBW)
  double kappa_s = 0.07;    // transmit distortion level
  double kappa_d = 0.07;    // receive distortion level
  double sigma_n2 = 3.1622776601683795e-09;  // noise power [W] (-85 dBW)

  /// P / (1 + kappa_s): the largest feasible ||w||^2.
  double effective_power() const { return p / (1.0 + kappa_s); }

  /// (1 + kappa_d) * kappa_s, the weight of the per-antenna distortion term.
  double distortion_weight() const { return (1.0 + kappa_d) * kappa_s; }

  /// (1 + kappa_d) * sigma_n2 / P~, the scaled noise floor.
  double noise_weight() const {
    return (1.0 + kappa_d) * sigma_n2 / effective_power();
  }
};

SystemConfig validate_config(const SystemConfig& cfg);
double effective_power(const SystemConfig& cfg);

struct ChannelSet {
  CMat h_si;  // N_I x N_S, source -> IRS
  CVec h_id;  // N_I,      IRS -> destination
  CVec h_sd;  // N_S,      source -> destination

  int n_s() const { return static_cast<int>(h_sd.size()); }
  int n_i() const { return static_cast<int>(h_id.size()); }
};

/// Throws DimensionError on shape mismatch and std::invalid_argument on
/// non-finite entries.
void check_channels(const ChannelSet& ch);
void check_channels(const ChannelSet& ch, const SystemConfig& cfg);

/// psi = [H_SI^H diag(h_ID) | h_SD], shape N_S x (N_I + 1).
struct CompositeChannel {
  CMat psi;

  int n_s() const { return static_cast<int>(psi.rows()); }
  int n_i() const { return static_cast<int>(psi.cols()) - 1; }
};

CompositeChannel build_composite(const ChannelSet& ch);

enum class PhaseKind { Continuous, Discrete };

struct PhaseConstraint {
  PhaseKind kind = PhaseKind::Continuous;
  int bits = 0;

  static PhaseConstraint continuous() { return {}; }
  static PhaseConstraint discrete(int bits);

  int levels() const { return kind == PhaseKind::Discrete ? (1 << bits) : 0; }
};

/// Unit-modulus lifted vector [conj(theta); t] of length N_I + 1.
class LiftedPhaseVector {
 public:
  LiftedPhaseVector() = default;
  /// Renormalizes every entry onto the unit circle. Zero entries become 1.
  explicit LiftedPhaseVector(CVec values);

  static LiftedPhaseVector ones(int n_i);

  const CVec& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  int n_i() const { return size() - 1; }
  cdouble operator[](int i) const { return values_[i]; }

  /// max_i | |x_i| - 1 |
  double modulus_error() const;

 private:
  CVec values_;
};

class ReflectConfig {
 public:
  ReflectConfig() = default;

  /// theta_i = exp(j * phases_i); phases are wrapped into [0, 2*pi).
  static ReflectConfig from_phases(const RVec& phases);
  /// Entries are renormalized onto the unit circle.
  static ReflectConfig from_theta(const CVec& theta);
  /// Theta = diag{(theta_tilde(1:N) / theta_tilde(N+1))^*}.
  static ReflectConfig from_lifted(const LiftedPhaseVector& lifted);
  static ReflectConfig identity(int n_i);

  const CVec& theta() const { return theta_; }
  const RVec& phases() const { return phases_; }
  int n_i() const { return static_cast<int>(theta_.size()); }

  /// [conj(theta); 1]
  LiftedPhaseVector lift() const;

 private:
  CVec theta_;
  RVec phases_;
};

struct EvalResult {
  double snr = 0.0;            // received SNR at (w*(Theta), Theta)
  double psi_val = 0.0;        // psi~ / (kappa_d psi~ + 1), equal to snr
  double psi_tilde_val = 0.0;  // v^H Upsilon~^{-1} v
};

/// Wraps an angle into [0, 2*pi).
double wrap_phase(double phi);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace irsbf
