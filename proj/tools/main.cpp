// irsbf: command-line front end for the sweep, iteration, LOS and bound studies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irsbf/channel.hpp"
#include "irsbf/config_io.hpp"
#include "irsbf/csv.hpp"
#include "irsbf/los.hpp"
#include "irsbf/mm.hpp"
#include "irsbf/sdr.hpp"
#include "irsbf/sim.hpp"

using namespace irsbf;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  int channels = -1;  // -1: subcommand default
  long long symbols = 2000;
  std::optional<int> bits;
  std::string out;
  std::string config;
  bool json_out = false;
  int workers = 1;
  std::vector<double> values;
  bool no_bound = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed");
  sub->add_option("--channels", c.channels, "Channel realizations per point")
      ->check(CLI::PositiveNumber);
  sub->add_option("--symbols", c.symbols, "QPSK symbols per realization")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--bits", c.bits, "Discrete phase resolution (omit for continuous)")
      ->check(CLI::Range(1, 16));
  sub->add_option("--out", c.out, "CSV output path");
  sub->add_option("--config", c.config, "key = value file overriding the defaults")
      ->check(CLI::ExistingFile);
  sub->add_flag("--json", c.json_out, "Print a JSON summary instead of a table");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--values", c.values, "Sweep values / N_I list");
  sub->add_flag("--no-bound", c.no_bound, "Skip the relaxation bound");
}

RunConfig load(const Common& c) {
  RunConfig rc;
  if (!c.config.empty()) rc = load_config_file(c.config);
  validate_config(rc.system);
  check_geometry(rc.geometry);
  return rc;
}

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
  if (path.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*f) throw std::runtime_error("cannot open output file: " + path);
  return f;
}

std::string fmt(double x, const char* spec = "%.3f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

int run_sweep_cmd(SweepVariable var, std::vector<double> defaults, const Common& c) {
  const RunConfig rc = load(c);
  SweepSpec spec;
  spec.variable = var;
  spec.values = c.values.empty() ? std::move(defaults) : c.values;
  spec.n_channels = c.channels > 0 ? c.channels : 500;
  spec.n_symbols = c.symbols;
  spec.seed = c.seed;
  spec.phase_mode = c.bits ? PhaseConstraint::discrete(*c.bits) : PhaseConstraint::continuous();
  spec.include_bound = !c.no_bound;
  spec.workers = c.workers;
  validate_sweep(spec);

  auto out = open_out(c.out);
  if (out) {
    write_csv_header(*out);
    out->flush();
  }
  const auto results = run_sweep(spec, rc.system, rc.geometry, [&](const SimResult& r) {
    if (out) {
      write_csv_rows(*out, r);
      out->flush();
    }
    if (!c.json_out) std::cerr << to_string(var) << " = " << format_number(r.sweep_value) << " done\n";
  });

  if (c.json_out) {
    json j;
    j["sweep_variable"] = to_string(var);
    j["seed"] = c.seed;
    j["channels"] = spec.n_channels;
    j["symbols"] = spec.n_symbols;
    for (const auto& r : results) {
      json p;
      p["value"] = r.sweep_value;
      p["skipped"] = r.skipped;
      for (const auto& st : r.schemes) {
        json s;
        s["mean_snr_db"] = st.mean_snr_db;
        if (st.ser) s["ser"] = *st.ser;
        if (st.mean_iterations) s["mean_iterations"] = *st.mean_iterations;
        p["schemes"][to_string(st.scheme)] = s;
      }
      j["points"].push_back(p);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::cout << "mean SNR [dB] / SER over " << spec.n_channels << " channels, "
            << spec.n_symbols << " symbols each\n";
  std::printf("%-10s", to_string(var).c_str());
  for (const auto& st : results.front().schemes) std::printf(" %24s", to_string(st.scheme).c_str());
  std::printf("\n");
  for (const auto& r : results) {
    std::printf("%-10s", format_number(r.sweep_value).c_str());
    for (const auto& st : r.schemes) {
      std::string cell = fmt(st.mean_snr_db, "%.2f");
      if (st.ser) cell += " / " + fmt(*st.ser, "%.2e");
      std::printf(" %24s", cell.c_str());
    }
    if (r.skipped > 0) std::printf("  (%d skipped)", r.skipped);
    std::printf("\n");
  }
  return 0;
}

int run_iteration_cmd(const Common& c) {
  const RunConfig rc = load(c);
  std::vector<int> list;
  for (double v : c.values) list.push_back(static_cast<int>(v));
  if (list.empty()) list = {4, 18, 32, 46, 60};
  const int channels = c.channels > 0 ? c.channels : 100;
  const auto rows = run_iteration_study(list, rc.system, rc.geometry, c.seed, channels, c.workers);

  auto out = open_out(c.out);
  if (out) {
    *out << "n_i,robust_plain,robust_accelerated,nonrobust_plain,nonrobust_accelerated\n";
    for (const auto& r : rows)
      *out << r.n_i << ',' << format_number(r.robust_plain) << ','
           << format_number(r.robust_accelerated) << ',' << format_number(r.nonrobust_plain)
           << ',' << format_number(r.nonrobust_accelerated) << "\n";
  }
  if (c.json_out) {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"n_i", r.n_i},
                   {"robust_plain", r.robust_plain},
                   {"robust_accelerated", r.robust_accelerated},
                   {"nonrobust_plain", r.nonrobust_plain},
                   {"nonrobust_accelerated", r.nonrobust_accelerated}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("average MM iterations over %d channels (epsilon = 1e-5)\n", channels);
  std::printf("%-6s %14s %14s %14s %14s\n", "N_I", "robust", "robust+acc", "nonrobust",
              "nonrobust+acc");
  for (const auto& r : rows)
    std::printf("%-6d %14.2f %14.2f %14.2f %14.2f\n", r.n_i, r.robust_plain,
                r.robust_accelerated, r.nonrobust_plain, r.nonrobust_accelerated);
  return 0;
}

int run_los_cmd(const Common& c) {
  const RunConfig rc = load(c);
  std::vector<int> list;
  for (double v : c.values) list.push_back(static_cast<int>(v));
  if (list.empty()) list = {25, 50, 100, 200, 400};
  const int channels = c.channels > 0 ? c.channels : 200;
  const LinkGains gains = link_gains(rc.geometry);

  struct Row {
    int n_i;
    double closed, mm, asym;
  };
  std::vector<Row> rows;
  for (int n_i : list) {
    SystemConfig cfg = rc.system;
    cfg.n_i = n_i;
    validate_config(cfg);
    std::vector<double> closed(channels), mm(channels);
    parallel_for(static_cast<std::size_t>(channels), c.workers, [&](std::size_t r) {
      Rng rng = make_rng(c.seed, r, kStreamChannel);
      const LOSChannel los = sample_los(rng, cfg.n_s, n_i, gains.si);
      const CVec h_id = sample_rayleigh(rng, n_i, 1, gains.id).col(0);
      closed[r] = solve_los(los, h_id, cfg).snr;
      Rng irng = make_rng(c.seed, r, kStreamInit);
      mm[r] = run_mm(random_lifted(irng, n_i), build_composite(los_channel_set(los, h_id)), cfg)
                  .eval.snr;
    });
    rows.push_back({n_i, mean_snr_db(closed), mean_snr_db(mm),
                    linear_to_db(asymptotic_snr(cfg, n_i, gains.id, gains.si))});
  }

  auto out = open_out(c.out);
  if (out) {
    *out << "n_i,closed_snr_db,mm_snr_db,asymptotic_snr_db\n";
    for (const auto& r : rows)
      *out << r.n_i << ',' << format_number(r.closed) << ',' << format_number(r.mm) << ','
           << format_number(r.asym) << "\n";
  }
  if (c.json_out) {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"n_i", r.n_i},
                   {"closed_snr_db", r.closed},
                   {"mm_snr_db", r.mm},
                   {"asymptotic_snr_db", r.asym}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::printf("rank-one source-IRS channel, no direct link, %d draws per N_I\n", channels);
  std::printf("%-6s %16s %16s %16s\n", "N_I", "closed [dB]", "MM [dB]", "asymptotic [dB]");
  for (const auto& r : rows)
    std::printf("%-6d %16.4f %16.4f %16.4f\n", r.n_i, r.closed, r.mm, r.asym);
  return 0;
}

int run_bound_cmd(const Common& c) {
  const RunConfig rc = load(c);
  const SystemConfig& cfg = rc.system;
  if (cfg.n_i < 1) throw std::invalid_argument("bound-check needs n_i >= 1");
  const int channels = c.channels > 0 ? c.channels : 50;

  struct Row {
    double mm = 0.0, bound = 0.0;
    bool converged = false;
    int rank = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(channels));
  parallel_for(rows.size(), c.workers, [&](std::size_t r) {
    Rng crng = make_rng(c.seed, r, kStreamChannel);
    const ChannelSet ch = sample_channels(crng, cfg.n_s, cfg.n_i, rc.geometry);
    Rng irng = make_rng(c.seed, r, kStreamInit);
    const CompositeChannel psi = build_composite(ch);
    const MMResult mm = run_mm(random_lifted(irng, cfg.n_i), psi, cfg);
    SdrSettings s;
    s.init = mm.theta.lift();
    const UpperBoundResult ub = solve_sdr(psi, cfg, s);
    rows[r] = {mm.eval.snr, ub.bound_snr, ub.converged, ub.numerical_rank};
  });

  auto out = open_out(c.out);
  if (out) *out << "channel,mm_snr_db,bound_snr_db,gap_db,converged,numerical_rank\n";
  std::vector<double> mm_snr, ub_snr;
  double max_gap = 0.0;
  int violations = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    const double gap = linear_to_db(row.bound) - linear_to_db(row.mm);
    max_gap = std::max(max_gap, gap);
    if (row.bound < row.mm) ++violations;
    mm_snr.push_back(row.mm);
    ub_snr.push_back(row.bound);
    if (out)
      *out << r << ',' << format_number(linear_to_db(row.mm)) << ','
           << format_number(linear_to_db(row.bound)) << ',' << format_number(gap) << ','
           << (row.converged ? 1 : 0) << ',' << row.rank << "\n";
  }
  const double mean_gap = mean_snr_db(ub_snr) - mean_snr_db(mm_snr);
  if (c.json_out) {
    std::cout << json{{"channels", channels},
                      {"mean_mm_snr_db", mean_snr_db(mm_snr)},
                      {"mean_bound_snr_db", mean_snr_db(ub_snr)},
                      {"mean_gap_db", mean_gap},
                      {"max_gap_db", max_gap},
                      {"violations", violations}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::printf("channels          %d\n", channels);
  std::printf("mean MM SNR       %.4f dB\n", mean_snr_db(mm_snr));
  std::printf("mean bound SNR    %.4f dB\n", mean_snr_db(ub_snr));
  std::printf("mean gap          %.4f dB (max %.4f dB)\n", mean_gap, max_gap);
  std::printf("bound violations  %d\n", violations);
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted MISO beamforming under hardware impairments"};
  app.require_subcommand(1);

  Common c;
  auto* sweep_n = app.add_subcommand("sweep-n", "Sweep the number of reflecting elements");
  auto* sweep_d = app.add_subcommand("sweep-distance", "Sweep the horizontal source-destination distance");
  auto* sweep_p = app.add_subcommand("sweep-power", "Sweep the transmit power [dBW]");
  auto* sweep_k = app.add_subcommand("sweep-kappa", "Sweep kappa_s = kappa_d");
  auto* iters = app.add_subcommand("iteration-study", "Average MM iteration counts");
  auto* los = app.add_subcommand("los-demo", "Closed-form design for a rank-one source-IRS channel");
  auto* bound = app.add_subcommand("bound-check", "Compare MM against the relaxation bound");
  for (auto* sub : {sweep_n, sweep_d, sweep_p, sweep_k, iters, los, bound}) add_common(sub, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_n->parsed()) return run_sweep_cmd(SweepVariable::NI, {4, 18, 32, 46, 60}, c);
    if (sweep_d->parsed())
      return run_sweep_cmd(SweepVariable::DsdH, {10, 20, 30, 40, 45, 50, 55, 60, 70, 80}, c);
    if (sweep_p->parsed())
      return run_sweep_cmd(SweepVariable::P, {0, 5, 10, 15, 20, 25, 30, 35, 40}, c);
    if (sweep_k->parsed())
      return run_sweep_cmd(SweepVariable::Kappa, {0.02, 0.05, 0.08, 0.11, 0.15}, c);
    if (iters->parsed()) return run_iteration_cmd(c);
    if (los->parsed()) return run_los_cmd(c);
    if (bound->parsed()) return run_bound_cmd(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
