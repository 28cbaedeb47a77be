#pragma once

#include <cstddef>
#include <optional>

#include "geopump/su2.hpp"

namespace geopump {

/// Both closed-form routes to the n -> infinity pump probability at one
/// loop, plus the stability context needed to read them.
///
/// At a stable point of order N the orbit is periodic; the full-sequence
/// Cesaro mean is then the mean over one period, reported separately in
/// `orbit_mean` together with `orbit_period`.
struct AsymptoteReport {
  double p_inf_direct = 0.0;
  double p_inf_axis = 0.0;
  double discrepancy = 0.0;
  bool removable_singularity = false;
  std::optional<std::size_t> orbit_period;
  std::optional<double> orbit_mean;
};

/// (1/2) sin^2(Theta/2) / (1 - cos^2(Theta/2) cos^2(Phi)); independent of
/// Omega. At Theta = 0, Phi = 0 mod pi the expression is 0/0; 0 is returned,
/// the value on the rest of the Theta = 0 row where U is diagonal. The
/// approach along Phi = 0 tends to 1/2 instead (see is_removable_singularity).
double p_infinity(const LoopParams& lp);

bool is_removable_singularity(const LoopParams& lp);

/// (1/2) sin^2(alpha) from the axis of the loop rotation.
/// Throws IdentityRotation for U = +-I.
double p_infinity_axis_route(const LoopParams& lp);

/// Phi-averaged pump probability (1/2) sin(Theta/2).
double p_geometric(double theta);

/// (1/pi) * integral of p_infinity over Phi in [-pi/2, pi/2] by the
/// composite midpoint rule on `quadrature_points` cells.
double phi_average(double theta, std::size_t quadrature_points);

/// Mean of q_j over one period of a periodic orbit of order `period`.
double periodic_orbit_mean(const LoopParams& lp, std::size_t period);

AsymptoteReport asymptote_report(const LoopParams& lp, std::size_t n_max = 200);

}  // namespace geopump
