#pragma once

// Monte-Carlo comparison of the four beamforming schemes and the relaxation
// bound, plus the MM iteration-count study.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irsbf/channel.hpp"
#include "irsbf/mm.hpp"
#include "irsbf/model.hpp"
#include "irsbf/rng.hpp"
#include "irsbf/sdr.hpp"
#include "irsbf/txbf.hpp"

namespace irsbf {

enum class Scheme { RobustWithIRS, NonrobustWithIRS, RobustNoIRS, NonrobustNoIRS, UpperBound };

inline constexpr std::array<Scheme, 5> kAllSchemes = {
    Scheme::RobustWithIRS, Scheme::NonrobustWithIRS, Scheme::RobustNoIRS,
    Scheme::NonrobustNoIRS, Scheme::UpperBound};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

enum class SweepVariable { NI, DsdH, P, Kappa };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

// Purpose tags of the per-realization substreams.
inline constexpr std::uint64_t kStreamChannel = 1;
inline constexpr std::uint64_t kStreamInit = 2;
inline constexpr std::uint64_t kStreamSymbols = 16;  // + scheme index

struct DesignOptions {
  LiftedPhaseVector init;  // MM starting point; empty means all ones
  PhaseConstraint phase_mode;
  MMSettings mm;
};

struct Design {
  TransmitBeam w;
  ReflectConfig theta;
  int iterations = 0;  // MM iterations (0 for the no-IRS schemes)
};

/// Robust and nonrobust IRS designs computed together. The nonrobust one runs
/// MM with kappa_s = kappa_d = 0 and transmits the matched-filter beam. The
/// robust one runs MM under the true kappas; when the nonrobust surface scores
/// higher on the true objective it is used instead, so the robust SNR is
/// never below the nonrobust SNR on the same channel.
struct IrsDesignPair {
  Design robust;
  Design nonrobust;
};

IrsDesignPair design_irs_pair(const ChannelSet& ch, const SystemConfig& cfg,
                              const DesignOptions& opts = {});

/// Throws std::invalid_argument for Scheme::UpperBound, which is not a design.
Design design_beams(Scheme scheme, const ChannelSet& ch, const SystemConfig& cfg,
                    const DesignOptions& opts = {});

/// Copy of cfg with kappa_s = kappa_d = 0.
SystemConfig impairment_free(const SystemConfig& cfg);

struct SerEstimate {
  double ser = 0.0;
  long long errors = 0;
  long long symbols = 0;
  bool degenerate = false;  // zero effective channel, ser reported as 0.75
};

/// QPSK link simulation: t = w x + z_S, y = v^H t + n + z_D, y / (v^H w) is
/// sliced to the nearest constellation point. z_D has variance
/// kd (|v^H w|^2 + ks sum |v_i w_i|^2 + sigma^2).
SerEstimate simulate_ser_detail(const TransmitBeam& w, const ReflectConfig& theta,
                                const ChannelSet& ch, const SystemConfig& cfg,
                                long long n_symbols, Rng& rng);
double simulate_ser(const TransmitBeam& w, const ReflectConfig& theta, const ChannelSet& ch,
                    const SystemConfig& cfg, long long n_symbols, Rng& rng);

/// Exact QPSK symbol error probability with Gaussian disturbance at the given SNR.
double qpsk_ser(double snr);

struct SweepSpec {
  SweepVariable variable = SweepVariable::NI;
  std::vector<double> values;  // N_I count, d_sd_h [m], P [dBW] or kappa_s = kappa_d
  int n_channels = 500;
  long long n_symbols = 2000;
  std::uint64_t seed = 0;
  PhaseConstraint phase_mode;
  bool include_bound = true;
  int workers = 1;
  MMSettings mm;
  SdrSettings sdr;
};

/// Throws std::invalid_argument on empty or unsorted values, n_channels < 1,
/// n_symbols < 0 or workers < 1.
void validate_sweep(const SweepSpec& spec);

/// Applies one sweep value to the base configuration.
void apply_sweep_value(SweepVariable var, double value, SystemConfig& cfg, Geometry& geo);

struct SchemeStats {
  Scheme scheme = Scheme::RobustWithIRS;
  double mean_snr_db = 0.0;
  std::optional<double> ser;              // absent for UpperBound
  std::optional<double> mean_iterations;  // optimizing schemes only
};

struct SimResult {
  SweepVariable variable = SweepVariable::NI;
  double sweep_value = 0.0;
  std::vector<SchemeStats> schemes;
  int skipped = 0;  // realizations that failed and were left out

  const SchemeStats* find(Scheme s) const;
};

/// Per-realization outcome, exposed for dominance checks.
struct RealizationOutcome {
  bool ok = false;
  std::string error;
  std::array<double, 5> snr{};  // indexed by Scheme; UpperBound is the bound SNR
  std::array<double, 4> ser{};
  std::array<int, 2> iterations{};  // robust, nonrobust
};

RealizationOutcome run_realization(std::size_t index, const SystemConfig& cfg, const Geometry& geo,
                                   const SweepSpec& spec);

/// Called after each sweep point, in order.
using SweepCallback = std::function<void(const SimResult&)>;

std::vector<SimResult> run_sweep(const SweepSpec& spec, const SystemConfig& base_cfg,
                                 const Geometry& geo, const SweepCallback& on_point = {});

/// Mean of linear SNRs, reported in dB.
double mean_snr_db(const std::vector<double>& linear_snrs);

struct IterationRow {
  int n_i = 0;
  double robust_plain = 0.0;
  double robust_accelerated = 0.0;
  double nonrobust_plain = 0.0;
  double nonrobust_accelerated = 0.0;
  int skipped = 0;
};

/// Average MM iteration counts for robust / nonrobust x plain / accelerated,
/// all four runs sharing the same random starting point per channel.
std::vector<IterationRow> run_iteration_study(const std::vector<int>& n_i_list,
                                              const SystemConfig& base_cfg, const Geometry& geo,
                                              std::uint64_t seed, int n_channels = 100,
                                              int workers = 1, const MMSettings& mm = {});

/// Runs fn(i) for i in [0, count) on `workers` threads. Exceptions escaping fn
/// are rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace irsbf
