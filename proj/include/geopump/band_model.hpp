#pragma once

#include <cstddef>
#include <vector>

namespace geopump {

/// Two-site chain with intra-cell hopping v, inter-cell hopping w and
/// lattice constant l. Bloch vector d(k) = (v + w cos kl, w sin kl, 0).
struct ChainParams {
  double v = 0.0;
  double w = 1.0;
  double l = 1.0;
};

/// v(t) = a + cos(omega t) with w held fixed.
struct DriveCycle {
  double a = 0.0;
  double omega = 1.0;
  std::size_t time_samples = 64;
  double w = 1.0;
  double l = 1.0;
};

struct BlochVector {
  double dx = 0.0;
  double dy = 0.0;
};

/// A gap closing d(k*; v(t)) = 0 during one drive cycle.
struct TptEvent {
  double time_fraction = 0.0;  // [0, 1)
  double k_star = 0.0;         // 0 or pi/l
  bool transversal = false;
};

struct PumpProfile {
  std::vector<double> k_values;    // [-pi/l, pi/l)
  std::vector<double> theta_of_k;  // each 0 or pi
  std::vector<double> p_g_of_k;    // (1/2) sin(theta/2)
  std::size_t tpt_count = 0;       // winding flips per cycle
};

inline constexpr double kGapTol = 1e-10;

BlochVector bloch_vector(double k, const ChainParams& cp);

/// Minimum of |d(k)| over the Brillouin zone, | |v| - |w| |.
double min_gap(const ChainParams& cp);

/// Winding of d(k) around the origin over one Brillouin-zone traversal,
/// accumulated from wrapped atan2 increments. Intervals whose increment
/// exceeds pi/2 are bisected, so sharp turns near a small gap are not
/// aliased. Throws GapClosed if min_gap <= kGapTol.
int winding_number(const ChainParams& cp, std::size_t k_samples = 256);

/// Gap closings over one cycle, ordered by time: at k = pi/l where
/// v(t) = w and at k = 0 where v(t) = -w.
std::vector<TptEvent> tpt_events(const DriveCycle& dc);

/// Per-event winding flag: true when the winding number differs between
/// the time midpoints on either side of the event.
std::vector<bool> winding_flips(const DriveCycle& dc, const std::vector<TptEvent>& events);

/// pi when k hosts a transversal closing with a winding flip (band
/// inversion), 0 otherwise.
double theta_of_k(const DriveCycle& dc, double k);

/// k_j = -pi/l + j (2 pi / l) / k_grid.
PumpProfile pump_profile(const DriveCycle& dc, std::size_t k_grid, unsigned threads = 1);

/// Effective per-k field d(k; v(t)) sampled at t = i T / time_samples.
std::vector<BlochVector> effective_field_trace(const DriveCycle& dc, double k);

}  // namespace geopump
