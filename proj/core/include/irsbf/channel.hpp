#pragma once

// Channel realizations: log-distance path loss, i.i.d. Rayleigh blocks and
// rank-one line-of-sight source-to-IRS channels.

#include "irsbf/model.hpp"
#include "irsbf/rng.hpp"

namespace irsbf {

/// Source at the origin, IRS at distance d_si along the x axis, destination at
/// horizontal offset d_sd_h and vertical offset d_v from the source-IRS line.
struct Geometry {
  double d_si = 50.0;
  double d_v = 2.0;
  double d_sd_h = 49.0;
  double pl0_db = -30.0;
  double d0 = 1.0;
  double gamma_si = 2.5;
  double gamma_id = 2.5;
  double gamma_sd = 3.5;
};

struct Distances {
  double d_sd = 0.0;
  double d_id = 0.0;
};

/// 10^((PL0 - 10 gamma log10(d / d0)) / 10). Throws std::invalid_argument for d <= 0.
double path_loss_linear(double d, double gamma, const Geometry& geo);

Distances derive_distances(const Geometry& geo);

/// Throws std::invalid_argument if a distance is non-positive.
void check_geometry(const Geometry& geo);

/// i.i.d. CN(0, gain) entries. gain == 0 yields a zero matrix.
CMat sample_rayleigh(Rng& rng, int rows, int cols, double gain);

struct LOSChannel {
  cdouble eta;
  CVec a_i;  // IRS array response, unit-modulus entries
  CVec a_s;  // source array response, unit-modulus entries

  /// eta * a_I * a_S^H
  CMat h_si() const { return eta * a_i * a_s.adjoint(); }
};

/// Half-wavelength ULA response exp(j*pi*n*cos(angle)), n = 0..size-1.
CVec ula_response(int size, double angle);

/// |eta|^2 = gain with uniform phase; array angles uniform in [0, pi).
LOSChannel sample_los(Rng& rng, int n_s, int n_i, double gain);

struct LinkGains {
  double si = 0.0;
  double id = 0.0;
  double sd = 0.0;
};

LinkGains link_gains(const Geometry& geo);

/// Rayleigh realization of all three links with the geometry's path-loss
/// gains. h_SD is drawn first so the direct link does not depend on N_I.
ChannelSet sample_channels(Rng& rng, int n_s, int n_i, const Geometry& geo);

}  // namespace irsbf
