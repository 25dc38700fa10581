#pragma once

// Convex relaxation bound for the reflect beamforming problem.
//
// Lifting Theta~ = x x^H and dropping the rank constraint gives
//
//   maximize  sum_m q_m / (a q_m + b),   q_m = (psi Theta~ psi^H)_{mm}
//   s.t.      Theta~ PSD, diag(Theta~) = 1,
//
// a concave program over the elliptope. Two ascent methods are available:
// projected supergradient steps with a Dykstra projection onto the elliptope,
// and Riemannian gradient ascent on a factorization Theta~ = V V^H whose rows
// have unit norm (feasible by construction, no eigendecompositions per step).
// Every iterate also yields a Lagrangian certificate, so the reported bound is
// a valid upper bound on the relaxation (and hence on every unit-modulus
// design) even when the ascent is stopped early.

#include <optional>
#include <stdexcept>

#include "irsbf/model.hpp"

namespace irsbf {

class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(CMat last, double gap)
      : std::runtime_error("elliptope projection did not reach joint feasibility"),
        last_(std::move(last)),
        gap_(gap) {}
  const CMat& last_iterate() const noexcept { return last_; }
  double gap() const noexcept { return gap_; }

 private:
  CMat last_;
  double gap_;
};

struct UpperBoundResult {
  CMat theta_big;                // best iterate, unit diagonal, PSD up to the projection tolerance
  double bound_psi_tilde = 0.0;  // certified upper bound on the relaxation optimum
  double primal_psi_tilde = 0.0; // relaxed objective at theta_big
  double bound_snr = 0.0;
  bool converged = false;
  int iterations = 0;
  int numerical_rank = 0;        // eigenvalues of theta_big above 1e-6 * n
};

enum class SdrMethod { Factorized, ProjectedGradient };

struct SdrSettings {
  SdrMethod method = SdrMethod::Factorized;
  double tol = 1e-4;               // relative certified gap that counts as converged
  int max_iter = 2000;             // projected gradient steps
  int factorized_max_iter = 20000; // factorized ascent steps
  int factor_rank = 0;             // columns of V; 0 means N_I + 1
  int certificate_every = 25;      // factorized: certificate check period
  double step_decay = 0.0;         // step_k = a / (1 + k * step_decay); the objective is smooth, so constant works
  int stall_window = 50;           // stop when the best value improves < tol_stall over this many steps
  double stall_tol = 1e-10;
  double projection_tol = 1e-9;
  int projection_max_iter = 2000;
  std::optional<LiftedPhaseVector> init;  // warm start x0 x0^H (default: all ones)
};

/// sum_m q_m / (a q_m + b) with q_m = Re (psi Theta psi^H)_{mm}.
double relaxed_objective(const CMat& theta_big, const CompositeChannel& psi,
                         const SystemConfig& cfg);

/// psi^H diag(c) psi with c_m = b / (a q_m + b)^2, so that
/// f(Theta + D) ~ f(Theta) + Re tr(G D).
CMat relaxed_gradient(const CMat& theta_big, const CompositeChannel& psi, const SystemConfig& cfg);

/// Upper bound on max f over the elliptope from the supergradient at theta_big:
/// f(T) + n * lambda_max(G - Diag(Re diag(G T))).
double relaxation_certificate(const CMat& theta_big, const CompositeChannel& psi,
                              const SystemConfig& cfg);

/// Nearest-point projection onto the PSD cone by eigenvalue clipping.
CMat project_psd(const CMat& m);

/// Dykstra alternating projections between the PSD cone and the unit-diagonal
/// affine set. Returns a unit-diagonal matrix within tol (Frobenius) of the
/// PSD cone. Throws ProjectionError after max_iter.
CMat project_elliptope(const CMat& m, double tol = 1e-9, int max_iter = 2000);

UpperBoundResult solve_sdr(const CompositeChannel& psi, const SystemConfig& cfg,
                           const SdrSettings& settings = {});

double snr_bound(const UpperBoundResult& ub, const SystemConfig& cfg);

}  // namespace irsbf
