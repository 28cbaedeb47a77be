#include "geopump/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "geopump/errors.hpp"
#include "geopump/loop_evolution.hpp"
#include "geopump/stability.hpp"

namespace geopump {

namespace {

// 1 - cos^2(Theta/2) cos^2(Phi) = sin^2(Theta/2) + cos^2(Theta/2) sin^2(Phi)
double pumping_denominator(const LoopParams& lp) {
  const double sh = std::sin(0.5 * lp.theta);
  const double ch = std::cos(0.5 * lp.theta);
  const double sp = std::sin(lp.phi);
  return sh * sh + ch * ch * sp * sp;
}

}  // namespace

bool is_removable_singularity(const LoopParams& lp) {
  return pumping_denominator(lp) == 0.0;
}

double p_infinity(const LoopParams& lp) {
  const double denom = pumping_denominator(lp);
  if (denom == 0.0) return 0.0;
  const double sh = std::sin(0.5 * lp.theta);
  return 0.5 * sh * sh / denom;
}

double p_infinity_axis_route(const LoopParams& lp) {
  const double s = std::sin(axis_angle_from_euler(euler_from_loop(lp)).alpha);
  return 0.5 * s * s;
}

double p_geometric(double theta) { return 0.5 * std::sin(0.5 * theta); }

double phi_average(double theta, std::size_t quadrature_points) {
  if (quadrature_points == 0) {
    throw std::invalid_argument("phi_average: need at least one cell");
  }
  const double h = kPi / static_cast<double>(quadrature_points);
  double sum = 0.0;
  for (std::size_t i = 0; i < quadrature_points; ++i) {
    const double phi = -0.5 * kPi + (static_cast<double>(i) + 0.5) * h;
    sum += p_infinity({theta, 0.0, phi});
  }
  // (1/pi) * h * sum
  return sum / static_cast<double>(quadrature_points);
}

double periodic_orbit_mean(const LoopParams& lp, std::size_t period) {
  if (period == 0) {
    throw std::invalid_argument("periodic_orbit_mean: period must be >= 1");
  }
  return pump_trace(lp, period).final_average();
}

AsymptoteReport asymptote_report(const LoopParams& lp, std::size_t n_max) {
  AsymptoteReport r;
  r.p_inf_direct = p_infinity(lp);
  r.removable_singularity = is_removable_singularity(lp);
  try {
    r.p_inf_axis = p_infinity_axis_route(lp);
  } catch (const IdentityRotation&) {
    // U = +-I never leaves the ground state.
    r.p_inf_axis = 0.0;
  }
  r.discrepancy = std::abs(r.p_inf_direct - r.p_inf_axis);
  const StabilityVerdict v = classify(lp, n_max);
  if (v.stable()) {
    r.orbit_period = v.order;
    r.orbit_mean = periodic_orbit_mean(lp, v.order);
  }
  return r;
}

}  // namespace geopump
