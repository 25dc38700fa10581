#include "irsbf/power_iteration.hpp"

#include <cmath>

#include "irsbf/rng.hpp"

namespace irsbf {

EigenPair dominant_eigenpair(const CMat& a, double tol, int max_iter, const CVec& start,
                             std::uint64_t seed) {
  if (a.rows() != a.cols()) throw DimensionError("power iteration needs a square matrix");
  const Eigen::Index n = a.rows();
  EigenPair out;
  if (n == 0) return out;

  CVec x;
  if (start.size() == n && start.squaredNorm() > 0.0) {
    x = start;
  } else {
    Rng rng(seed);
    std::normal_distribution<double> normal;
    x.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = cdouble(normal(rng), normal(rng));
  }
  x.normalize();

  double rho = 0.0;
  for (int k = 1; k <= max_iter; ++k) {
    CVec y = a * x;
    const double next = std::real(x.dot(y));
    const double ynorm = y.norm();
    out.iterations = k;
    if (ynorm == 0.0) {
      // x lies in the null space; for a PSD matrix this only happens when the
      // start is orthogonal to every nonzero eigenvector (or a == 0).
      out.value = 0.0;
      out.vector = x;
      return out;
    }
    x = y / ynorm;
    if (k > 1 && std::abs(next - rho) <= tol * std::abs(next)) {
      out.value = next;
      out.vector = x;
      return out;
    }
    rho = next;
  }
  throw PowerIterationError(rho);
}

double lambda_max_power_iteration(const CMat& omega, double tol, int max_iter) {
  return dominant_eigenpair(omega, tol, max_iter).value;
}

}  // namespace irsbf
