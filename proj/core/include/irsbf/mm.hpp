#pragma once

// Minorization-maximization optimizer for the IRS reflect beamforming.
//
// The optimizer works on the lifted unit-modulus vector theta_tilde of
// length N_I + 1 and maximizes
//
//   f(x) = sum_m |(psi x)_m|^2 / (a |(psi x)_m|^2 + b),
//   a = (1 + kd) ks,  b = (1 + kd) sigma^2 / P~.
//
// Each step maximizes a linear minorizer of f built from the previous iterate
// (the quadratic distortion term is majorized with lambda_max(Omega) I), whose
// maximizer on the torus is x_i = exp(j arg(alpha_i)).

#include <cstdint>
#include <vector>

#include "irsbf/model.hpp"
#include "irsbf/rng.hpp"

namespace irsbf {

struct MMSettings {
  double epsilon = 1e-5;      // relative objective change that ends the loop
  int max_iter = 10000;
  bool accelerate = true;     // SQUAREM on/off
  double power_iter_tol = 1e-10;
  int power_iter_max = 10000;
  int max_backtracks = 30;    // SQUAREM step-length halvings before falling back
};

struct MMIterate {
  LiftedPhaseVector theta_tilde;
  double objective = 0.0;
  // Quantities of the expansion that produced theta_tilde (empty for the
  // initial iterate). omega and lambda_max are only formed when ks > 0.
  RVec xi0;
  CMat omega;
  double lambda_max = 0.0;
  CVec lambda_vector;  // dominant eigenvector, warm start for the next step
  CVec alpha;
  int iter = 0;
  int map_evaluations = 0;
};

struct MMResult {
  ReflectConfig theta;
  EvalResult eval;
  LiftedPhaseVector theta_tilde;
  int iterations = 0;
  int map_evaluations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // f at the initial point and after every iteration
};

/// f(theta_tilde) in the separable form; the distortion matrix is diagonal so
/// its inverse is entrywise.
double lifted_objective(const CVec& theta_tilde, const CompositeChannel& psi,
                        const SystemConfig& cfg);
double lifted_objective(const LiftedPhaseVector& tt, const CompositeChannel& psi,
                        const SystemConfig& cfg);

MMIterate initial_iterate(const LiftedPhaseVector& tt, const CompositeChannel& psi,
                          const SystemConfig& cfg);

/// One MM update. Entries with alpha_i == 0 keep their previous phase.
MMIterate mm_step(const MMIterate& prev, const CompositeChannel& psi, const SystemConfig& cfg,
                  const MMSettings& settings = {});

/// Minorizer of f expanded at tt0, evaluated at tt (both unit-modulus).
double surrogate_value(const CVec& tt, const CVec& tt0, const CompositeChannel& psi,
                       const SystemConfig& cfg, const MMSettings& settings = {});

/// One SQUAREM cycle: two MM maps, squared extrapolation with
/// alpha = -||r|| / ||v||, projection onto the torus and step halving toward
/// -1 until the objective is at least that of the plain double MM step (which
/// is returned as the fallback).
MMIterate squarem_accelerate(const MMIterate& state, const CompositeChannel& psi,
                             const SystemConfig& cfg, const MMSettings& settings = {});

MMResult run_mm(const LiftedPhaseVector& init, const CompositeChannel& psi,
                const SystemConfig& cfg, const MMSettings& settings = {});

/// Entries of a complex Gaussian vector normalized onto the unit circle.
LiftedPhaseVector random_lifted(Rng& rng, int n_i);

/// Nearest level of the L = 2^B grid under wrap-around distance; ties go to the
/// smaller level. Continuous constraints return theta unchanged.
ReflectConfig quantize_phases(const ReflectConfig& theta, const PhaseConstraint& pc);

}  // namespace irsbf
