#include "irsbf/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace irsbf {

double path_loss_linear(double d, double gamma, const Geometry& geo) {
  if (!(d > 0.0)) throw std::invalid_argument("path loss distance must be positive");
  const double pl_db = geo.pl0_db - 10.0 * gamma * std::log10(d / geo.d0);
  return std::pow(10.0, pl_db / 10.0);
}

Distances derive_distances(const Geometry& geo) {
  const double dx = geo.d_si - geo.d_sd_h;
  return {std::hypot(geo.d_sd_h, geo.d_v), std::hypot(dx, geo.d_v)};
}

void check_geometry(const Geometry& geo) {
  if (!(geo.d_si > 0.0)) throw std::invalid_argument("d_si must be positive");
  if (!(geo.d0 > 0.0)) throw std::invalid_argument("d0 must be positive");
  if (!(geo.d_v >= 0.0)) throw std::invalid_argument("d_v must be non-negative");
  if (!(geo.d_sd_h >= 0.0)) throw std::invalid_argument("d_sd_h must be non-negative");
  const Distances d = derive_distances(geo);
  if (!(d.d_sd > 0.0)) throw std::invalid_argument("source-destination distance is zero");
  if (!(d.d_id > 0.0)) throw std::invalid_argument("IRS-destination distance is zero");
}

CMat sample_rayleigh(Rng& rng, int rows, int cols, double gain) {
  if (gain < 0.0) throw std::invalid_argument("gain must be non-negative");
  CMat out(rows, cols);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(gain / 2.0);
  // Row-major draw order so that leading rows do not depend on the column count.
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = cdouble(scale * re, scale * im);
    }
  return out;
}

CVec ula_response(int size, double angle) {
  CVec a(size);
  const double c = std::cos(angle);
  for (int n = 0; n < size; ++n) a[n] = std::polar(1.0, kPi * n * c);
  return a;
}

LOSChannel sample_los(Rng& rng, int n_s, int n_i, double gain) {
  if (!(gain > 0.0)) throw std::invalid_argument("gain must be positive");
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  LOSChannel out;
  out.eta = std::polar(std::sqrt(gain), phase(rng));
  out.a_i = ula_response(n_i, angle(rng));
  out.a_s = ula_response(n_s, angle(rng));
  return out;
}

LinkGains link_gains(const Geometry& geo) {
  check_geometry(geo);
  const Distances d = derive_distances(geo);
  return {path_loss_linear(geo.d_si, geo.gamma_si, geo),
          path_loss_linear(d.d_id, geo.gamma_id, geo),
          path_loss_linear(d.d_sd, geo.gamma_sd, geo)};
}

ChannelSet sample_channels(Rng& rng, int n_s, int n_i, const Geometry& geo) {
  const LinkGains g = link_gains(geo);
  ChannelSet ch;
  ch.h_sd = sample_rayleigh(rng, n_s, 1, g.sd).col(0);
  ch.h_id = sample_rayleigh(rng, n_i, 1, g.id).col(0);
  ch.h_si = sample_rayleigh(rng, n_i, n_s, g.si);
  return ch;
}

}  // namespace irsbf
