#include "irsbf/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace irsbf {

namespace {

constexpr std::size_t idx(Scheme s) { return static_cast<std::size_t>(s); }

ChannelSet without_irs(const ChannelSet& ch) {
  ChannelSet out;
  out.h_si = CMat(0, ch.h_sd.size());
  out.h_id = CVec(0);
  out.h_sd = ch.h_sd;
  return out;
}

cdouble qpsk_symbol(unsigned bits) {
  const double s = 1.0 / std::sqrt(2.0);
  return {(bits & 1u) ? -s : s, (bits & 2u) ? -s : s};
}

unsigned qpsk_decide(cdouble r) { return (r.real() < 0.0 ? 1u : 0u) | (r.imag() < 0.0 ? 2u : 0u); }

cdouble complex_normal(Rng& rng, std::normal_distribution<double>& normal, double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {s * re, s * im};
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::RobustWithIRS: return "RobustWithIRS";
    case Scheme::NonrobustWithIRS: return "NonrobustWithIRS";
    case Scheme::RobustNoIRS: return "RobustNoIRS";
    case Scheme::NonrobustNoIRS: return "NonrobustNoIRS";
    case Scheme::UpperBound: return "UpperBound";
  }
  throw std::invalid_argument("unknown scheme");
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : kAllSchemes)
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::NI: return "N_I";
    case SweepVariable::DsdH: return "d_sd_h";
    case SweepVariable::P: return "P_dBW";
    case SweepVariable::Kappa: return "kappa";
  }
  throw std::invalid_argument("unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  for (SweepVariable v :
       {SweepVariable::NI, SweepVariable::DsdH, SweepVariable::P, SweepVariable::Kappa})
    if (to_string(v) == name) return v;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

SystemConfig impairment_free(const SystemConfig& cfg) {
  SystemConfig out = cfg;
  out.kappa_s = 0.0;
  out.kappa_d = 0.0;
  return out;
}

IrsDesignPair design_irs_pair(const ChannelSet& ch, const SystemConfig& cfg,
                              const DesignOptions& opts) {
  check_channels(ch);
  const int n_i = ch.n_i();
  IrsDesignPair out;
  if (n_i == 0) {
    out.robust = {optimal_transmit_beam(ch.h_sd, cfg), ReflectConfig::identity(0), 0};
    out.nonrobust = {matched_filter_beam(ch.h_sd, cfg), ReflectConfig::identity(0), 0};
    return out;
  }
  const LiftedPhaseVector init =
      opts.init.size() == 0 ? LiftedPhaseVector::ones(n_i) : opts.init;
  if (init.n_i() != n_i) throw DimensionError("MM init length must equal N_I + 1");

  const CompositeChannel psi = build_composite(ch);
  const MMResult nr = run_mm(init, psi, impairment_free(cfg), opts.mm);
  const MMResult r = run_mm(init, psi, cfg, opts.mm);

  ReflectConfig theta_nr = quantize_phases(nr.theta, opts.phase_mode);
  ReflectConfig theta_r = quantize_phases(r.theta, opts.phase_mode);
  if (psi_tilde(theta_nr, ch, cfg) > psi_tilde(theta_r, ch, cfg)) theta_r = theta_nr;

  out.robust = {optimal_transmit_beam(theta_r, ch, cfg), theta_r, r.iterations};
  out.nonrobust = {matched_filter_beam(composite_vector(theta_nr, ch), cfg), theta_nr,
                   nr.iterations};
  return out;
}

Design design_beams(Scheme scheme, const ChannelSet& ch, const SystemConfig& cfg,
                    const DesignOptions& opts) {
  switch (scheme) {
    case Scheme::RobustWithIRS: return design_irs_pair(ch, cfg, opts).robust;
    case Scheme::NonrobustWithIRS: return design_irs_pair(ch, cfg, opts).nonrobust;
    case Scheme::RobustNoIRS:
      check_channels(ch);
      return {optimal_transmit_beam(ch.h_sd, cfg), ReflectConfig::identity(0), 0};
    case Scheme::NonrobustNoIRS:
      check_channels(ch);
      return {matched_filter_beam(ch.h_sd, cfg), ReflectConfig::identity(0), 0};
    case Scheme::UpperBound: break;
  }
  throw std::invalid_argument("UpperBound is a bound, not a beam design");
}

SerEstimate simulate_ser_detail(const TransmitBeam& w, const ReflectConfig& theta,
                                const ChannelSet& ch, const SystemConfig& cfg,
                                long long n_symbols, Rng& rng) {
  if (n_symbols < 0) throw std::invalid_argument("n_symbols must be non-negative");
  // The no-IRS schemes pass an empty reflect configuration.
  const ChannelSet used = theta.n_i() == 0 && ch.n_i() != 0 ? without_irs(ch) : ch;
  const CVec v = composite_vector(theta, used);
  if (w.w.size() != v.size()) throw DimensionError("beam size does not match N_S");

  SerEstimate out;
  out.symbols = n_symbols;
  const cdouble gain = v.dot(w.w);  // v^H w
  if (!(std::abs(gain) > 0.0) || !std::isfinite(std::abs(gain))) {
    out.degenerate = true;
    out.ser = 0.75;
    out.errors = static_cast<long long>(std::llround(0.75 * static_cast<double>(n_symbols)));
    return out;
  }

  const double signal = std::norm(gain);
  const double per_antenna = v.cwiseAbs2().dot(w.w.cwiseAbs2());
  const double var_d = cfg.kappa_d * (signal + cfg.kappa_s * per_antenna + cfg.sigma_n2);
  RVec var_s = cfg.kappa_s * w.w.cwiseAbs2();

  std::normal_distribution<double> normal;
  std::uniform_int_distribution<unsigned> bits_dist(0, 3);
  const Eigen::Index n_s = v.size();
  for (long long k = 0; k < n_symbols; ++k) {
    const unsigned bits = bits_dist(rng);
    const cdouble x = qpsk_symbol(bits);
    cdouble y = gain * x;
    for (Eigen::Index i = 0; i < n_s; ++i)
      y += std::conj(v[i]) * complex_normal(rng, normal, var_s[i]);
    y += complex_normal(rng, normal, cfg.sigma_n2);
    y += complex_normal(rng, normal, var_d);
    if (qpsk_decide(y / gain) != bits) ++out.errors;
  }
  out.ser = n_symbols > 0 ? static_cast<double>(out.errors) / static_cast<double>(n_symbols) : 0.0;
  return out;
}

double simulate_ser(const TransmitBeam& w, const ReflectConfig& theta, const ChannelSet& ch,
                    const SystemConfig& cfg, long long n_symbols, Rng& rng) {
  return simulate_ser_detail(w, theta, ch, cfg, n_symbols, rng).ser;
}

double qpsk_ser(double snr) {
  if (std::isinf(snr)) return 0.0;
  const double q = 0.5 * std::erfc(std::sqrt(std::max(snr, 0.0)) / std::sqrt(2.0));
  return 2.0 * q - q * q;
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep values must be non-empty");
  if (!std::is_sorted(spec.values.begin(), spec.values.end()))
    throw std::invalid_argument("sweep values must be sorted");
  if (spec.n_channels < 1) throw std::invalid_argument("n_channels must be at least 1");
  if (spec.n_symbols < 0) throw std::invalid_argument("n_symbols must be non-negative");
  if (spec.workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (spec.variable == SweepVariable::NI)
    for (double v : spec.values)
      if (v < 0.0 || v != std::floor(v))
        throw std::invalid_argument("N_I sweep values must be non-negative integers");
}

void apply_sweep_value(SweepVariable var, double value, SystemConfig& cfg, Geometry& geo) {
  switch (var) {
    case SweepVariable::NI: cfg.n_i = static_cast<int>(value); break;
    case SweepVariable::DsdH: geo.d_sd_h = value; break;
    case SweepVariable::P: cfg.p = db_to_linear(value); break;
    case SweepVariable::Kappa:
      cfg.kappa_s = value;
      cfg.kappa_d = value;
      break;
  }
}

const SchemeStats* SimResult::find(Scheme s) const {
  for (const auto& st : schemes)
    if (st.scheme == s) return &st;
  return nullptr;
}

RealizationOutcome run_realization(std::size_t index, const SystemConfig& cfg, const Geometry& geo,
                                   const SweepSpec& spec) {
  RealizationOutcome out;
  try {
    Rng crng = make_rng(spec.seed, index, kStreamChannel);
    const ChannelSet ch = sample_channels(crng, cfg.n_s, cfg.n_i, geo);
    Rng irng = make_rng(spec.seed, index, kStreamInit);
    DesignOptions opts;
    opts.init = random_lifted(irng, cfg.n_i);
    opts.phase_mode = spec.phase_mode;
    opts.mm = spec.mm;

    const IrsDesignPair pair = design_irs_pair(ch, cfg, opts);
    const Design designs[4] = {pair.robust, pair.nonrobust,
                               design_beams(Scheme::RobustNoIRS, ch, cfg, opts),
                               design_beams(Scheme::NonrobustNoIRS, ch, cfg, opts)};
    const ChannelSet direct = without_irs(ch);
    for (std::size_t s = 0; s < 4; ++s) {
      const ChannelSet& used = designs[s].theta.n_i() == ch.n_i() ? ch : direct;
      out.snr[s] = evaluate_snr(designs[s].w, designs[s].theta, used, cfg);
      Rng srng = make_rng(spec.seed, index, kStreamSymbols + s);
      out.ser[s] = simulate_ser(designs[s].w, designs[s].theta, used, cfg, spec.n_symbols, srng);
    }
    out.iterations = {pair.robust.iterations, pair.nonrobust.iterations};

    if (spec.include_bound) {
      if (cfg.n_i == 0) {
        out.snr[idx(Scheme::UpperBound)] = snr_from_psi_tilde(psi_tilde(ch.h_sd, cfg), cfg);
      } else {
        SdrSettings sdr = spec.sdr;
        sdr.init = pair.robust.theta.lift();
        const UpperBoundResult ub = solve_sdr(build_composite(ch), cfg, sdr);
        out.snr[idx(Scheme::UpperBound)] = snr_bound(ub, cfg);
      }
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

double mean_snr_db(const std::vector<double>& linear_snrs) {
  if (linear_snrs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (double x : linear_snrs) sum += x;
  return linear_to_db(sum / static_cast<double>(linear_snrs.size()));
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<SimResult> run_sweep(const SweepSpec& spec, const SystemConfig& base_cfg,
                                 const Geometry& geo, const SweepCallback& on_point) {
  validate_sweep(spec);
  std::vector<SimResult> results;
  for (double value : spec.values) {
    SystemConfig cfg = base_cfg;
    Geometry g = geo;
    apply_sweep_value(spec.variable, value, cfg, g);
    validate_config(cfg);
    check_geometry(g);

    std::vector<RealizationOutcome> outcomes(static_cast<std::size_t>(spec.n_channels));
    parallel_for(outcomes.size(), spec.workers,
                 [&](std::size_t r) { outcomes[r] = run_realization(r, cfg, g, spec); });

    SimResult res;
    res.variable = spec.variable;
    res.sweep_value = value;
    std::array<std::vector<double>, 5> snrs;
    std::array<double, 4> ser_sum{};
    std::array<double, 2> iter_sum{};
    int ok = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      const auto& o = outcomes[r];
      if (!o.ok) {
        ++res.skipped;
        std::cerr << "realization " << r << " at " << to_string(spec.variable) << "=" << value
                  << " skipped: " << o.error << "\n";
        continue;
      }
      ++ok;
      for (std::size_t s = 0; s < 5; ++s) snrs[s].push_back(o.snr[s]);
      for (std::size_t s = 0; s < 4; ++s) ser_sum[s] += o.ser[s];
      iter_sum[0] += o.iterations[0];
      iter_sum[1] += o.iterations[1];
    }
    for (Scheme s : kAllSchemes) {
      if (s == Scheme::UpperBound && !spec.include_bound) continue;
      SchemeStats st;
      st.scheme = s;
      st.mean_snr_db = mean_snr_db(snrs[idx(s)]);
      if (s != Scheme::UpperBound && ok > 0) st.ser = ser_sum[idx(s)] / ok;
      if ((s == Scheme::RobustWithIRS || s == Scheme::NonrobustWithIRS) && ok > 0)
        st.mean_iterations = iter_sum[idx(s)] / ok;
      res.schemes.push_back(st);
    }
    results.push_back(res);
    if (on_point) on_point(results.back());
  }
  return results;
}

std::vector<IterationRow> run_iteration_study(const std::vector<int>& n_i_list,
                                              const SystemConfig& base_cfg, const Geometry& geo,
                                              std::uint64_t seed, int n_channels, int workers,
                                              const MMSettings& mm) {
  if (n_channels < 1) throw std::invalid_argument("n_channels must be at least 1");
  std::vector<IterationRow> rows;
  for (int n_i : n_i_list) {
    if (n_i < 1) throw std::invalid_argument("iteration study needs N_I >= 1");
    SystemConfig cfg = base_cfg;
    cfg.n_i = n_i;
    validate_config(cfg);
    const SystemConfig cfg0 = impairment_free(cfg);

    struct Counts {
      bool ok = false;
      std::array<int, 4> it{};
    };
    std::vector<Counts> counts(static_cast<std::size_t>(n_channels));
    parallel_for(counts.size(), workers, [&](std::size_t r) {
      try {
        Rng crng = make_rng(seed, r, kStreamChannel);
        const ChannelSet ch = sample_channels(crng, cfg.n_s, n_i, geo);
        Rng irng = make_rng(seed, r, kStreamInit);
        const LiftedPhaseVector init = random_lifted(irng, n_i);
        const CompositeChannel psi = build_composite(ch);
        MMSettings plain = mm;
        plain.accelerate = false;
        MMSettings fast = mm;
        fast.accelerate = true;
        counts[r].it = {run_mm(init, psi, cfg, plain).iterations,
                        run_mm(init, psi, cfg, fast).iterations,
                        run_mm(init, psi, cfg0, plain).iterations,
                        run_mm(init, psi, cfg0, fast).iterations};
        counts[r].ok = true;
      } catch (const std::exception&) {
        counts[r].ok = false;
      }
    });
    IterationRow row;
    row.n_i = n_i;
    std::array<double, 4> sum{};
    int ok = 0;
    for (const auto& c : counts) {
      if (!c.ok) {
        ++row.skipped;
        continue;
      }
      ++ok;
      for (std::size_t k = 0; k < 4; ++k) sum[k] += c.it[k];
    }
    if (ok > 0) {
      row.robust_plain = sum[0] / ok;
      row.robust_accelerated = sum[1] / ok;
      row.nonrobust_plain = sum[2] / ok;
      row.nonrobust_accelerated = sum[3] / ok;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace irsbf
