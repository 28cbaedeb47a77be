#include "geopump/loop_evolution.hpp"

#include <algorithm>
#include <cmath>

#include "geopump/errors.hpp"

namespace geopump {

namespace {

// |a| within this of 1 is treated as the boundary touch.
constexpr double kTouchTol = 1e-12;

// Advances U^j one cycle at a time with periodic re-projection onto SU(2).
class CycleIterator {
 public:
  explicit CycleIterator(const Su2Matrix& u) : u_(u) {}

  const Su2Matrix& next() {
    current_ = u_ * current_;
    if (++steps_ % kRenormalizeInterval == 0) {
      current_ = project_to_su2(current_);
    }
    return current_;
  }

 private:
  Su2Matrix u_;
  Su2Matrix current_ = Su2Matrix::identity();
  std::uint64_t steps_ = 0;
};

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

Su2Matrix build_loop_operator(const LoopParams& lp) {
  const double ch = std::cos(0.5 * lp.theta);
  const double sh = std::sin(0.5 * lp.theta);
  return {ch * std::polar(1.0, -lp.phi),
          -sh * std::polar(1.0, -(lp.omega - lp.phi)),
          sh * std::polar(1.0, lp.omega - lp.phi),
          ch * std::polar(1.0, lp.phi)};
}

PumpTrace pump_trace(const LoopParams& lp, std::size_t n,
                     const SpinState& initial) {
  PumpTrace trace;
  trace.q.reserve(n);
  trace.p.reserve(n);
  CycleIterator it(build_loop_operator(lp));
  double sum = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const SpinState s = apply(it.next(), initial);
    const double q = std::clamp(std::norm(s.down), 0.0, 1.0);
    sum += q;
    trace.q.push_back(q);
    trace.p.push_back(sum / static_cast<double>(j));
  }
  return trace;
}

double max_norm_drift(const LoopParams& lp, std::uint64_t n_cycles,
                      const SpinState& initial) {
  CycleIterator it(build_loop_operator(lp));
  double worst = 0.0;
  for (std::uint64_t j = 0; j < n_cycles; ++j) {
    worst = std::max(worst, std::abs(apply(it.next(), initial).norm() - 1.0));
  }
  return worst;
}

int z2_index(int field_sign, int spin_sign) {
  if (field_sign == 0) {
    throw ZeroField("z2_index: field vanishes, gap is closed");
  }
  return sign_of(static_cast<double>(field_sign) * spin_sign) > 0 ? 0 : 1;
}

std::vector<PumpEvent1D> pump_1d(const FieldCycle1D& fc) {
  const double a = fc.a;
  if (std::abs(a) > 1.0 + kTouchTol) return {};
  if (std::abs(std::abs(a) - 1.0) <= kTouchTol) {
    // a = 1 touches zero at omega t = pi, a = -1 at omega t = 0.
    return {{a > 0.0 ? 0.5 : 0.0, false}};
  }
  const double first = std::acos(-a) / kTwoPi;
  return {{first, true}, {1.0 - first, true}};
}

std::vector<int> z2_history_1d(const FieldCycle1D& fc, std::size_t cycles) {
  const auto field_at = [&](double fraction) {
    return sign_of(fc.a + std::cos(kTwoPi * fraction));
  };
  constexpr int kSpinUp = 1;

  const auto events = pump_1d(fc);
  std::vector<double> flips;
  for (const auto& e : events) {
    if (e.transversal) flips.push_back(e.time_fraction);
  }
  if (flips.empty()) {
    // Field never changes sign; sample it away from any touch point.
    const double probe = events.empty() ? 0.0 : events.front().time_fraction + 0.25;
    return {z2_index(field_at(probe), kSpinUp)};
  }

  std::vector<int> history{z2_index(field_at(0.5 * flips.front()), kSpinUp)};
  for (std::size_t c = 0; c < cycles; ++c) {
    for (std::size_t i = 0; i < flips.size(); ++i) {
      const double after = i + 1 < flips.size()
                               ? 0.5 * (flips[i] + flips[i + 1])
                               : 0.5 * (flips[i] + 1.0 + flips.front());
      history.push_back(z2_index(field_at(after), kSpinUp));
    }
  }
  return history;
}

std::vector<double> trajectory_angles(const LoopParams& lp, std::size_t n) {
  const double delta =
      axis_angle_from_euler(euler_from_loop(lp)).delta;
  std::vector<double> eta;
  eta.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    eta.push_back(wrap_two_pi(static_cast<double>(j) * delta));
  }
  return eta;
}

}  // namespace geopump
