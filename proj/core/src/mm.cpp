#include "irsbf/mm.hpp"

#include <algorithm>
#include <cmath>

#include "irsbf/power_iteration.hpp"
#include "irsbf/txbf.hpp"

namespace irsbf {

namespace {

void check_lifted(const CVec& tt, const CompositeChannel& psi) {
  if (tt.size() != psi.psi.cols())
    throw DimensionError("lifted vector length must equal N_I + 1");
}

struct Expansion {
  CVec z;     // psi * x0
  RVec xi;    // diagonal of Xi_0
  CVec zxi;   // Xi_0^{-1} psi x0
  RVec d;     // |Xi_0^{-1} psi x0|^2
  double objective = 0.0;
};

Expansion expand(const CVec& x0, const CompositeChannel& psi, const SystemConfig& cfg) {
  const double a = cfg.distortion_weight();
  const double b = cfg.noise_weight();
  Expansion e;
  e.z = psi.psi * x0;
  const RVec q = e.z.cwiseAbs2();
  e.xi = (a * q).array() + b;
  e.zxi = e.z.cwiseQuotient(e.xi.cast<cdouble>());
  e.d = e.zxi.cwiseAbs2();
  e.objective = q.cwiseQuotient(e.xi).sum();
  return e;
}

// alpha = (psi^H Xi^-1 psi - a (Omega - lambda I)) x0, plus the pieces used by
// the surrogate.
struct Linearization {
  Expansion e;
  CMat omega;
  double lambda = 0.0;
  CVec lambda_vector;
  CVec alpha;
};

Linearization linearize(const CVec& x0, const CompositeChannel& psi, const SystemConfig& cfg,
                        const MMSettings& s, const CVec& warm_start) {
  const double a = cfg.distortion_weight();
  Linearization lin;
  lin.e = expand(x0, psi, cfg);
  lin.alpha = psi.psi.adjoint() * lin.e.zxi;
  if (a > 0.0) {
    lin.omega = psi.psi.adjoint() * lin.e.d.cast<cdouble>().asDiagonal() * psi.psi;
    const EigenPair ep =
        dominant_eigenpair(lin.omega, s.power_iter_tol, s.power_iter_max, warm_start);
    lin.lambda = ep.value;
    lin.lambda_vector = ep.vector;
    const CVec omega_x = psi.psi.adjoint() * lin.e.d.cast<cdouble>().cwiseProduct(lin.e.z);
    lin.alpha -= a * (omega_x - lin.lambda * x0);
  }
  return lin;
}

CVec project_torus(const CVec& x, const CVec& fallback) {
  CVec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double r = std::abs(x[i]);
    out[i] = r > 0.0 ? x[i] / r : fallback[i];
  }
  return out;
}

}  // namespace

double lifted_objective(const CVec& theta_tilde, const CompositeChannel& psi,
                        const SystemConfig& cfg) {
  check_lifted(theta_tilde, psi);
  return expand(theta_tilde, psi, cfg).objective;
}

double lifted_objective(const LiftedPhaseVector& tt, const CompositeChannel& psi,
                        const SystemConfig& cfg) {
  return lifted_objective(tt.values(), psi, cfg);
}

MMIterate initial_iterate(const LiftedPhaseVector& tt, const CompositeChannel& psi,
                          const SystemConfig& cfg) {
  MMIterate it;
  it.theta_tilde = tt;
  it.objective = lifted_objective(tt, psi, cfg);
  return it;
}

MMIterate mm_step(const MMIterate& prev, const CompositeChannel& psi, const SystemConfig& cfg,
                  const MMSettings& settings) {
  const CVec& x0 = prev.theta_tilde.values();
  check_lifted(x0, psi);
  Linearization lin = linearize(x0, psi, cfg, settings, prev.lambda_vector);

  MMIterate next;
  next.theta_tilde = LiftedPhaseVector(project_torus(lin.alpha, x0));
  next.objective = lifted_objective(next.theta_tilde, psi, cfg);
  next.xi0 = std::move(lin.e.xi);
  next.omega = std::move(lin.omega);
  next.lambda_max = lin.lambda;
  next.lambda_vector = std::move(lin.lambda_vector);
  next.alpha = std::move(lin.alpha);
  next.iter = prev.iter + 1;
  next.map_evaluations = prev.map_evaluations + 1;
  return next;
}

double surrogate_value(const CVec& tt, const CVec& tt0, const CompositeChannel& psi,
                       const SystemConfig& cfg, const MMSettings& settings) {
  check_lifted(tt, psi);
  check_lifted(tt0, psi);
  const double a = cfg.distortion_weight();
  const Linearization lin = linearize(tt0, psi, cfg, settings, CVec());
  const double n = static_cast<double>(tt0.size());
  // tt0^H Omega tt0 = sum_m d_m |z_m|^2 and tt0^H psi^H Xi^-1 psi tt0 = f(tt0).
  const double omega_quad = lin.e.d.dot(lin.e.z.cwiseAbs2());
  return 2.0 * std::real(lin.alpha.dot(tt)) - 2.0 * a * n * lin.lambda +
         2.0 * a * omega_quad - lin.e.objective;
}

MMIterate squarem_accelerate(const MMIterate& state, const CompositeChannel& psi,
                             const SystemConfig& cfg, const MMSettings& settings) {
  const MMIterate s1 = mm_step(state, psi, cfg, settings);
  MMIterate s2 = mm_step(s1, psi, cfg, settings);

  const CVec& x0 = state.theta_tilde.values();
  const CVec r = s1.theta_tilde.values() - x0;
  const CVec v = s2.theta_tilde.values() - s1.theta_tilde.values() - r;
  const double rn = r.norm();
  const double vn = v.norm();
  if (vn == 0.0 || rn == 0.0) return s2;

  double step = -rn / vn;
  if (step >= -1.0) return s2;  // no extrapolation beyond the double step

  for (int k = 0; k < settings.max_backtracks; ++k) {
    const CVec trial = project_torus(x0 - 2.0 * step * r + step * step * v, s2.theta_tilde.values());
    const double obj = lifted_objective(trial, psi, cfg);
    if (obj >= s2.objective) {
      MMIterate out = s2;
      out.theta_tilde = LiftedPhaseVector(trial);
      out.objective = obj;
      out.iter = state.iter + 1;
      return out;
    }
    step = (step - 1.0) / 2.0;
  }
  s2.iter = state.iter + 1;
  return s2;
}

MMResult run_mm(const LiftedPhaseVector& init, const CompositeChannel& psi,
                const SystemConfig& cfg, const MMSettings& settings) {
  if (!(settings.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (settings.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  check_lifted(init.values(), psi);

  MMResult out;
  MMIterate state = initial_iterate(init, psi, cfg);
  out.objective_trace.push_back(state.objective);
  for (int k = 1; k <= settings.max_iter; ++k) {
    MMIterate next = settings.accelerate ? squarem_accelerate(state, psi, cfg, settings)
                                         : mm_step(state, psi, cfg, settings);
    const double change =
        std::abs(next.objective - state.objective) / std::max(1.0, std::abs(state.objective));
    state = std::move(next);
    out.objective_trace.push_back(state.objective);
    out.iterations = k;
    if (change < settings.epsilon) {
      out.converged = true;
      break;
    }
  }
  out.map_evaluations = state.map_evaluations;
  out.theta_tilde = state.theta_tilde;
  out.theta = ReflectConfig::from_lifted(state.theta_tilde);
  out.eval = evaluate_design(psi.psi * out.theta.lift().values(), cfg);
  return out;
}

LiftedPhaseVector random_lifted(Rng& rng, int n_i) {
  std::normal_distribution<double> normal;
  CVec x(n_i + 1);
  for (int i = 0; i <= n_i; ++i) x[i] = cdouble(normal(rng), normal(rng));
  return LiftedPhaseVector(std::move(x));
}

ReflectConfig quantize_phases(const ReflectConfig& theta, const PhaseConstraint& pc) {
  if (pc.kind != PhaseKind::Discrete) return theta;
  const int levels = pc.levels();
  const double spacing = 2.0 * kPi / levels;
  RVec out(theta.n_i());
  for (int i = 0; i < theta.n_i(); ++i) {
    const double x = theta.phases()[i] / spacing;  // phases are in [0, 2 pi)
    const int lo = std::min(static_cast<int>(std::floor(x)), levels - 1);
    const int hi = (lo + 1) % levels;
    const double d_lo = x - lo;
    const double d_hi = (lo + 1) - x;
    int pick = d_lo < d_hi ? lo : hi;
    if (d_lo == d_hi) pick = std::min(lo, hi);
    out[i] = pick * spacing;
  }
  return ReflectConfig::from_phases(out);
}

}  // namespace irsbf
