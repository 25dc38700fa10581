#include "irsbf/sdr.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "irsbf/rng.hpp"
#include "irsbf/txbf.hpp"

namespace irsbf {

namespace {

RVec diag_quadratic(const CMat& theta_big, const CompositeChannel& psi) {
  if (theta_big.rows() != psi.psi.cols() || theta_big.cols() != psi.psi.cols())
    throw DimensionError("relaxation matrix must be (N_I + 1) x (N_I + 1)");
  // q_m = row_m(psi) Theta row_m(psi)^H
  const CMat pt = psi.psi * theta_big;
  return pt.cwiseProduct(psi.psi.conjugate()).rowwise().sum().real();
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

double relaxed_objective(const CMat& theta_big, const CompositeChannel& psi,
                         const SystemConfig& cfg) {
  const RVec q = diag_quadratic(theta_big, psi);
  const double a = cfg.distortion_weight();
  const double b = cfg.noise_weight();
  double sum = 0.0;
  for (Eigen::Index m = 0; m < q.size(); ++m) sum += q[m] / (a * q[m] + b);
  return sum;
}

CMat relaxed_gradient(const CMat& theta_big, const CompositeChannel& psi,
                      const SystemConfig& cfg) {
  const RVec q = diag_quadratic(theta_big, psi);
  const double a = cfg.distortion_weight();
  const double b = cfg.noise_weight();
  RVec c(q.size());
  for (Eigen::Index m = 0; m < q.size(); ++m) {
    const double den = a * q[m] + b;
    c[m] = b / (den * den);
  }
  return hermitian_part(psi.psi.adjoint() * c.cast<cdouble>().asDiagonal() * psi.psi);
}

double relaxation_certificate(const CMat& theta_big, const CompositeChannel& psi,
                              const SystemConfig& cfg) {
  const CMat g = relaxed_gradient(theta_big, psi, cfg);
  const RVec y = (g * theta_big).diagonal().real();
  CMat shifted = g;
  shifted.diagonal() -= y.cast<cdouble>();
  Eigen::SelfAdjointEigenSolver<CMat> es(shifted, Eigen::EigenvaluesOnly);
  const double mu = es.eigenvalues().maxCoeff();
  return relaxed_objective(theta_big, psi, cfg) + static_cast<double>(theta_big.rows()) * mu;
}

CMat project_psd(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
  const RVec clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.cast<cdouble>().asDiagonal() * es.eigenvectors().adjoint();
}

CMat project_elliptope(const CMat& m, double tol, int max_iter) {
  if (m.rows() != m.cols()) throw DimensionError("elliptope projection needs a square matrix");
  const Eigen::Index n = m.rows();
  CMat x = hermitian_part(m);
  CMat p = CMat::Zero(n, n);
  CMat q = CMat::Zero(n, n);
  double gap = 0.0;
  for (int k = 0; k < max_iter; ++k) {
    const CMat y = project_psd(x + p);
    p += x - y;
    CMat next = y + q;
    next.diagonal().setOnes();
    q = y + q - next;
    gap = (next - y).norm();
    x = std::move(next);
    if (gap < tol) return x;
  }
  throw ProjectionError(x, gap);
}

namespace {

// Step scale from the local curvature of q -> q / (a q + b) at theta, capped so
// the first move is at most one elliptope diameter.
double initial_step(const CMat& theta, const CompositeChannel& psi, const SystemConfig& cfg) {
  const double a = cfg.distortion_weight();
  const double b = cfg.noise_weight();
  const RVec q0 = diag_quadratic(theta, psi);
  const RVec row_norm2 = psi.psi.rowwise().squaredNorm();
  double curvature = 0.0;
  for (Eigen::Index m = 0; m < q0.size(); ++m) {
    const double den = a * q0[m] + b;
    curvature += 2.0 * a * b / (den * den * den) * row_norm2[m] * row_norm2[m];
  }
  const double g0 = relaxed_gradient(theta, psi, cfg).norm();
  double step0 = g0 > 0.0 ? static_cast<double>(theta.rows()) / g0 : 1.0;
  if (curvature > 0.0) step0 = std::min(step0, 1.0 / curvature);
  return step0;
}

struct Tracker {
  UpperBoundResult& out;
  const SdrSettings& s;
  double window_start;

  // Returns true when the loop should stop.
  bool offer(const CMat& theta, double val, const CompositeChannel& psi, const SystemConfig& cfg,
             bool certify) {
    if (val > out.primal_psi_tilde) {
      out.primal_psi_tilde = val;
      out.theta_big = theta;
    }
    if (certify) {
      out.bound_psi_tilde = std::min(out.bound_psi_tilde, relaxation_certificate(theta, psi, cfg));
      const double gap = out.bound_psi_tilde - out.primal_psi_tilde;
      if (gap <= s.tol * std::max(1e-300, std::abs(out.primal_psi_tilde))) {
        out.converged = true;
        return true;
      }
    }
    return false;
  }

  bool stalled(int k) {
    if (k % s.stall_window != 0) return false;
    if (out.primal_psi_tilde - window_start <= s.stall_tol * std::abs(out.primal_psi_tilde))
      return true;
    window_start = out.primal_psi_tilde;
    return false;
  }
};

void solve_projected(const CompositeChannel& psi, const SystemConfig& cfg, const SdrSettings& s,
                     Tracker& tr) {
  CMat theta = tr.out.theta_big;
  const double step0 = initial_step(theta, psi, cfg);
  for (int k = 0; k < s.max_iter; ++k) {
    tr.out.iterations = k + 1;
    const CMat g = relaxed_gradient(theta, psi, cfg);
    const double step = step0 / (1.0 + k * s.step_decay);
    try {
      theta = project_elliptope(theta + step * g, s.projection_tol, s.projection_max_iter);
    } catch (const ProjectionError& e) {
      theta = e.last_iterate();
    }
    if (tr.offer(theta, relaxed_objective(theta, psi, cfg), psi, cfg, true)) return;
    if (tr.stalled(k + 1)) return;
  }
}

double factor_value(const CMat& v, const CompositeChannel& psi, double a, double b, RVec* q_out) {
  const CMat z = psi.psi * v;
  const RVec q = z.rowwise().squaredNorm();
  double sum = 0.0;
  for (Eigen::Index m = 0; m < q.size(); ++m) sum += q[m] / (a * q[m] + b);
  if (q_out) *q_out = q;
  return sum;
}

void normalize_rows(CMat& v) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double r = v.row(i).norm();
    if (r > 0.0) {
      v.row(i) /= r;
    } else {
      v.row(i).setZero();
      v(i, 0) = 1.0;
    }
  }
}

void solve_factorized(const CompositeChannel& psi, const SystemConfig& cfg, const SdrSettings& s,
                      const CVec& x0, Tracker& tr) {
  const Eigen::Index n = x0.size();
  const Eigen::Index r = s.factor_rank > 0 ? std::min<Eigen::Index>(s.factor_rank, n) : n;
  const double a = cfg.distortion_weight();
  const double b = cfg.noise_weight();

  // A rank-one start is a critical point of the factorized problem in the
  // extra columns, so they get a small fixed perturbation.
  CMat v = CMat::Zero(n, r);
  v.col(0) = x0;
  Rng rng(0x5D2B0A7E1ULL);
  std::normal_distribution<double> normal;
  for (Eigen::Index j = 1; j < r; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = 1e-3 * cdouble(normal(rng), normal(rng));
  normalize_rows(v);

  RVec q;
  double val = factor_value(v, psi, a, b, &q);
  double step = initial_step(v * v.adjoint(), psi, cfg);
  for (int k = 0; k < s.factorized_max_iter; ++k) {
    tr.out.iterations = k + 1;
    RVec c(q.size());
    for (Eigen::Index m = 0; m < q.size(); ++m) {
      const double den = a * q[m] + b;
      c[m] = b / (den * den);
    }
    // Euclidean gradient 2 G V, projected onto the tangent space of the row spheres.
    CMat grad = 2.0 * psi.psi.adjoint() * (c.cast<cdouble>().asDiagonal() * (psi.psi * v));
    const RVec radial = (v.conjugate().cwiseProduct(grad)).rowwise().sum().real();
    grad -= radial.cast<cdouble>().asDiagonal() * v;
    if (grad.norm() == 0.0) {
      tr.offer(v * v.adjoint(), val, psi, cfg, true);
      return;
    }

    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      CMat trial = v + step * grad;
      normalize_rows(trial);
      RVec q_trial;
      const double val_trial = factor_value(trial, psi, a, b, &q_trial);
      if (val_trial >= val) {
        v = std::move(trial);
        q = std::move(q_trial);
        moved = val_trial > val;
        val = val_trial;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    const bool certify = !moved || (k + 1) % s.certificate_every == 0;
    if (tr.offer(v * v.adjoint(), val, psi, cfg, certify)) return;
    if (!moved) return;
    if (tr.stalled(k + 1)) {
      tr.offer(v * v.adjoint(), val, psi, cfg, true);
      return;
    }
  }
  tr.offer(v * v.adjoint(), val, psi, cfg, true);
}

}  // namespace

UpperBoundResult solve_sdr(const CompositeChannel& psi, const SystemConfig& cfg,
                           const SdrSettings& s) {
  const Eigen::Index n = psi.psi.cols();
  const LiftedPhaseVector x0 = s.init ? *s.init : LiftedPhaseVector::ones(static_cast<int>(n) - 1);
  if (x0.size() != n) throw DimensionError("warm start length must equal N_I + 1");

  UpperBoundResult out;
  out.theta_big = x0.values() * x0.values().adjoint();
  out.primal_psi_tilde = relaxed_objective(out.theta_big, psi, cfg);
  out.bound_psi_tilde = relaxation_certificate(out.theta_big, psi, cfg);
  Tracker tr{out, s, out.primal_psi_tilde};
  if (!tr.offer(out.theta_big, out.primal_psi_tilde, psi, cfg, false) &&
      out.bound_psi_tilde - out.primal_psi_tilde >
          s.tol * std::max(1e-300, std::abs(out.primal_psi_tilde))) {
    if (s.method == SdrMethod::ProjectedGradient)
      solve_projected(psi, cfg, s, tr);
    else
      solve_factorized(psi, cfg, s, x0.values(), tr);
  } else {
    out.converged = true;
  }
  // The certificate can never drop below a feasible value.
  out.bound_psi_tilde = std::max(out.bound_psi_tilde, out.primal_psi_tilde);
  out.bound_snr = snr_bound(out, cfg);

  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(out.theta_big), Eigen::EigenvaluesOnly);
  const double cutoff = 1e-6 * static_cast<double>(n);
  out.numerical_rank = static_cast<int>((es.eigenvalues().array() > cutoff).count());
  return out;
}

double snr_bound(const UpperBoundResult& ub, const SystemConfig& cfg) {
  return snr_from_psi_tilde(ub.bound_psi_tilde, cfg);
}

}  // namespace irsbf
