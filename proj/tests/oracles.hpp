#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "irsbf/channel.hpp"
#include "irsbf/model.hpp"
#include "irsbf/rng.hpp"

namespace irsbf::oracle {

inline CVec complex_gaussian(Rng& rng, int n, double var = 1.0) {
  std::normal_distribution<double> normal;
  CVec x(n);
  const double s = std::sqrt(var / 2.0);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    x[i] = {s * re, s * im};
  }
  return x;
}

inline CMat complex_gaussian(Rng& rng, int rows, int cols, double var = 1.0) {
  CMat m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = complex_gaussian(rng, rows, var);
  return m;
}

/// Unit-variance channels of the requested shape.
inline ChannelSet unit_channels(Rng& rng, int n_s, int n_i) {
  ChannelSet ch;
  ch.h_si = complex_gaussian(rng, n_i, n_s);
  ch.h_id = complex_gaussian(rng, n_i);
  ch.h_sd = complex_gaussian(rng, n_s);
  return ch;
}

/// Configuration with random impairments and an SNR scale around 10 dB for
/// unit-variance channels.
inline SystemConfig random_config(Rng& rng, int n_s, int n_i) {
  std::uniform_real_distribution<double> kappa(0.0, 0.2);
  std::uniform_real_distribution<double> log_p(-0.5, 1.5);
  SystemConfig cfg;
  cfg.n_s = n_s;
  cfg.n_i = n_i;
  cfg.kappa_s = kappa(rng);
  cfg.kappa_d = kappa(rng);
  cfg.p = std::pow(10.0, log_p(rng));
  cfg.sigma_n2 = 1.0;
  return cfg;
}

inline CVec random_phases(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  CVec x(n);
  for (int i = 0; i < n; ++i) x[i] = std::polar(1.0, u(rng));
  return x;
}

/// Full-inverse optimal beam: sqrt(P~) A^{-1} v / ||A^{-1} v|| with
/// A = kd v v^H + (1+kd) ks diag(|v|^2) + (1+kd) sigma^2 / P~ I.
inline CVec full_inverse_beam(const CVec& v, const SystemConfig& cfg) {
  const double pt = cfg.p / (1.0 + cfg.kappa_s);
  const Eigen::Index n = v.size();
  CMat a = cfg.kappa_d * v * v.adjoint();
  for (Eigen::Index i = 0; i < n; ++i)
    a(i, i) += (1.0 + cfg.kappa_d) * cfg.kappa_s * std::norm(v[i]) +
               (1.0 + cfg.kappa_d) * cfg.sigma_n2 / pt;
  const CVec u = a.ldlt().solve(v);
  CVec w = std::sqrt(pt) * u / u.norm();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(w[i]) > 0.0) return w * (std::conj(w[i]) / std::abs(w[i]));
  return w;
}

/// SNR written out term by term from the received-signal model.
inline double snr_direct(const CVec& w, const ChannelSet& ch, const CVec& theta,
                         const SystemConfig& cfg) {
  // Row channel h^T = h_ID^H Theta H_SI + h_SD^H.
  Eigen::RowVectorXcd h = ch.h_sd.adjoint();
  for (Eigen::Index i = 0; i < ch.h_id.size(); ++i)
    h += std::conj(ch.h_id[i]) * theta[i] * ch.h_si.row(i);
  const cdouble hw = (h * w)(0, 0);
  double dist = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) dist += std::norm(h[i]) * std::norm(w[i]);
  const double signal = std::norm(hw);
  const double ytilde_power = signal + cfg.kappa_s * dist + cfg.sigma_n2;
  return signal / (cfg.kappa_s * dist + cfg.sigma_n2 + cfg.kappa_d * ytilde_power);
}

/// Separable objective written independently of the library.
inline double objective_direct(const CMat& psi, const CVec& x, const SystemConfig& cfg) {
  const double pt = cfg.p / (1.0 + cfg.kappa_s);
  const double a = (1.0 + cfg.kappa_d) * cfg.kappa_s;
  const double b = (1.0 + cfg.kappa_d) * cfg.sigma_n2 / pt;
  double f = 0.0;
  for (Eigen::Index m = 0; m < psi.rows(); ++m) {
    const double q = std::norm((psi.row(m) * x)(0, 0));  // |(psi x)_m|^2
    f += q / (a * q + b);
  }
  return f;
}

inline double lambda_max_dense(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// Maximum of the objective over x = [exp(j phi), 1] on an n-point grid.
inline double grid_search_n1(const CMat& psi, const SystemConfig& cfg, int n) {
  double best = -1.0;
  CVec x(2);
  x[1] = 1.0;
  for (int k = 0; k < n; ++k) {
    x[0] = std::polar(1.0, 2.0 * kPi * k / n);
    best = std::max(best, objective_direct(psi, x, cfg));
  }
  return best;
}

/// Maximum over x = [exp(j phi1), exp(j phi2), 1] on an n x n grid.
inline double grid_search_n2(const CMat& psi, const SystemConfig& cfg, int n) {
  const double pt = cfg.p / (1.0 + cfg.kappa_s);
  const double a = (1.0 + cfg.kappa_d) * cfg.kappa_s;
  const double b = (1.0 + cfg.kappa_d) * cfg.sigma_n2 / pt;
  const Eigen::Index n_s = psi.rows();
  std::vector<cdouble> unit(n);
  for (int k = 0; k < n; ++k) unit[k] = std::polar(1.0, 2.0 * kPi * k / n);
  double best = -1.0;
  std::vector<cdouble> base(n_s);
  for (int k1 = 0; k1 < n; ++k1) {
    for (Eigen::Index m = 0; m < n_s; ++m) base[m] = psi(m, 0) * unit[k1] + psi(m, 2);
    for (int k2 = 0; k2 < n; ++k2) {
      double f = 0.0;
      for (Eigen::Index m = 0; m < n_s; ++m) {
        const double q = std::norm(base[m] + psi(m, 1) * unit[k2]);
        f += q / (a * q + b);
      }
      best = std::max(best, f);
    }
  }
  return best;
}

/// Maximum of the relaxed objective over the 2 x 2 elliptope
/// [[1, z], [conj z, 1]], |z| <= 1, on an n_r x n_phi polar grid.
inline double elliptope_grid_2x2(const CMat& psi, const SystemConfig& cfg, int n_r, int n_phi) {
  const double pt = cfg.p / (1.0 + cfg.kappa_s);
  const double a = (1.0 + cfg.kappa_d) * cfg.kappa_s;
  const double b = (1.0 + cfg.kappa_d) * cfg.sigma_n2 / pt;
  double best = -1.0;
  for (int i = 0; i <= n_r; ++i) {
    const double r = static_cast<double>(i) / n_r;
    for (int k = 0; k < n_phi; ++k) {
      const cdouble z = std::polar(r, 2.0 * kPi * k / n_phi);
      double f = 0.0;
      for (Eigen::Index m = 0; m < psi.rows(); ++m) {
        const cdouble p0 = psi(m, 0);
        const cdouble p1 = psi(m, 1);
        const double q = std::norm(p0) + std::norm(p1) + 2.0 * (p0 * z * std::conj(p1)).real();
        f += q / (a * q + b);
      }
      best = std::max(best, f);
    }
  }
  return best;
}

/// Plain alternating projections (no Dykstra correction) between the PSD cone
/// and the unit-diagonal set.
inline CMat alternating_projection(const CMat& m, int iters) {
  CMat x = 0.5 * (m + m.adjoint());
  for (int k = 0; k < iters; ++k) {
    Eigen::SelfAdjointEigenSolver<CMat> es(x);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    x = es.eigenvectors() * ev.cast<cdouble>().asDiagonal() * es.eigenvectors().adjoint();
    x.diagonal().setOnes();
  }
  return x;
}

inline double central_difference(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

}  // namespace irsbf::oracle
