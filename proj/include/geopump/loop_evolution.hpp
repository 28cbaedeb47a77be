#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "geopump/su2.hpp"

namespace geopump {

/// Instantaneous pump probabilities q_j = |<n1|U^j|init>|^2 for
/// j = 1..n and their running Cesaro means p_j.
struct PumpTrace {
  std::vector<double> q;
  std::vector<double> p;

  std::size_t cycles() const { return q.size(); }
  double final_average() const { return p.empty() ? 0.0 : p.back(); }
};

/// B(t) = B0 (a + cos(omega t)) along z.
struct FieldCycle1D {
  double a = 0.0;
  double omega = 1.0;
  double b0 = 1.0;
};

/// A zero of B_z within one cycle. Transversal zeros change the sign of
/// the field (a Z2 flip); tangential ones only touch zero.
struct PumpEvent1D {
  double time_fraction = 0.0;  // [0, 1)
  bool transversal = false;
};

/// Matrix multiplications between re-projections onto SU(2) in long runs.
inline constexpr std::uint64_t kRenormalizeInterval = 1U << 10U;

Su2Matrix build_loop_operator(const LoopParams& lp);

/// Runs n cycles from `initial` (default: ground state (1, 0)).
PumpTrace pump_trace(const LoopParams& lp, std::size_t n,
                     const SpinState& initial = SpinState{});

/// Largest deviation of |U^j init| from 1 over j = 1..n_cycles, iterated
/// the same way as pump_trace.
double max_norm_drift(const LoopParams& lp, std::uint64_t n_cycles,
                      const SpinState& initial = SpinState{});

/// (1/pi) arccos(sgn(B_z sigma_z)): 0 when aligned, 1 when anti-aligned.
/// Throws ZeroField when field_sign == 0.
int z2_index(int field_sign, int spin_sign);

/// Zeros of a + cos(omega t) over one cycle, ordered by time.
std::vector<PumpEvent1D> pump_1d(const FieldCycle1D& fc);

/// Z2 index of a spin starting up (ground for B_z > 0) after each
/// transversal event over `cycles` cycles. Front entry is the initial index.
std::vector<int> z2_history_1d(const FieldCycle1D& fc, std::size_t cycles);

/// eta_j = j delta mod 2pi for j = 1..n, delta the rotation angle of the
/// loop operator. Throws IdentityRotation for U = +-I.
std::vector<double> trajectory_angles(const LoopParams& lp, std::size_t n);

}  // namespace geopump
