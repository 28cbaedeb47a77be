#include "geopump/band_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geopump/asymptotics.hpp"
#include "geopump/errors.hpp"
#include "geopump/parallel.hpp"
#include "geopump/su2.hpp"

namespace geopump {

namespace {

constexpr double kTouchTol = 1e-12;
constexpr double kMomentumTol = 1e-9;
constexpr int kMaxBisection = 48;

double angle_increment(const BlochVector& from, const BlochVector& to) {
  const double cross = from.dx * to.dy - from.dy * to.dx;
  const double dot = from.dx * to.dx + from.dy * to.dy;
  return std::atan2(cross, dot);
}

double swept_angle(const ChainParams& cp, double k0, double k1, int depth) {
  const double inc = angle_increment(bloch_vector(k0, cp), bloch_vector(k1, cp));
  if (std::abs(inc) <= 0.5 * kPi || depth >= kMaxBisection) return inc;
  const double mid = 0.5 * (k0 + k1);
  return swept_angle(cp, k0, mid, depth + 1) + swept_angle(cp, mid, k1, depth + 1);
}

double drive_v(const DriveCycle& dc, double time_fraction) {
  return dc.a + std::cos(kTwoPi * time_fraction);
}

bool same_momentum(double k1, double k2, double l) {
  return std::abs(std::remainder((k1 - k2) * l, kTwoPi)) < kMomentumTol;
}

void validate(const DriveCycle& dc) {
  if (dc.w == 0.0) throw std::invalid_argument("DriveCycle: w must be nonzero");
  if (!(dc.l > 0.0)) throw std::invalid_argument("DriveCycle: l must be > 0");
  if (!(dc.omega > 0.0)) throw std::invalid_argument("DriveCycle: omega must be > 0");
}

}  // namespace

BlochVector bloch_vector(double k, const ChainParams& cp) {
  return {cp.v + cp.w * std::cos(k * cp.l), cp.w * std::sin(k * cp.l)};
}

double min_gap(const ChainParams& cp) {
  return std::abs(std::abs(cp.v) - std::abs(cp.w));
}

int winding_number(const ChainParams& cp, std::size_t k_samples) {
  if (k_samples < 2) throw std::invalid_argument("winding_number: need k_samples >= 2");
  if (!(cp.l > 0.0)) throw std::invalid_argument("winding_number: l must be > 0");
  if (min_gap(cp) <= kGapTol) {
    throw GapClosed("winding_number: gap closed, winding undefined");
  }
  const double k_lo = -kPi / cp.l;
  const double dk = kTwoPi / (cp.l * static_cast<double>(k_samples));
  double total = 0.0;
  for (std::size_t j = 0; j < k_samples; ++j) {
    const double k0 = k_lo + static_cast<double>(j) * dk;
    total += swept_angle(cp, k0, k0 + dk, 0);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

std::vector<TptEvent> tpt_events(const DriveCycle& dc) {
  validate(dc);
  std::vector<TptEvent> events;
  // d(pi/l) = (v - w, 0) and d(0) = (v + w, 0).
  const std::pair<double, double> closings[] = {{kPi / dc.l, dc.w}, {0.0, -dc.w}};
  for (const auto& [k_star, v_target] : closings) {
    const double c = v_target - dc.a;  // solve cos(omega t) = c
    if (std::abs(c) > 1.0 + kTouchTol) continue;
    if (std::abs(std::abs(c) - 1.0) <= kTouchTol) {
      events.push_back({c > 0.0 ? 0.0 : 0.5, k_star, false});
      continue;
    }
    const double first = std::acos(c) / kTwoPi;
    events.push_back({first, k_star, true});
    events.push_back({1.0 - first, k_star, true});
  }
  std::sort(events.begin(), events.end(), [](const TptEvent& x, const TptEvent& y) {
    return x.time_fraction < y.time_fraction;
  });
  return events;
}

std::vector<bool> winding_flips(const DriveCycle& dc, const std::vector<TptEvent>& events) {
  const std::size_t n = events.size();
  std::vector<bool> flips(n, false);
  if (n < 2) return flips;
  const auto winding_at = [&](double t) {
    return winding_number({drive_v(dc, t), dc.w, dc.l});
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double t = events[i].time_fraction;
    const double prev = i == 0 ? events[n - 1].time_fraction - 1.0 : events[i - 1].time_fraction;
    const double next = i + 1 == n ? events[0].time_fraction + 1.0 : events[i + 1].time_fraction;
    flips[i] = winding_at(0.5 * (prev + t)) != winding_at(0.5 * (t + next));
  }
  return flips;
}

namespace {

double theta_from_events(const std::vector<TptEvent>& events, const std::vector<bool>& flips,
                         double k, double l) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].transversal && flips[i] && same_momentum(k, events[i].k_star, l)) {
      return kPi;
    }
  }
  return 0.0;
}

}  // namespace

double theta_of_k(const DriveCycle& dc, double k) {
  const auto events = tpt_events(dc);
  return theta_from_events(events, winding_flips(dc, events), k, dc.l);
}

PumpProfile pump_profile(const DriveCycle& dc, std::size_t k_grid, unsigned threads) {
  if (k_grid < 1) throw std::invalid_argument("pump_profile: k_grid must be >= 1");
  const auto events = tpt_events(dc);
  const auto flips = winding_flips(dc, events);

  PumpProfile prof;
  prof.k_values.resize(k_grid);
  prof.theta_of_k.resize(k_grid);
  prof.p_g_of_k.resize(k_grid);
  const double dk = kTwoPi / (dc.l * static_cast<double>(k_grid));
  parallel_for_index(k_grid, threads, [&](std::size_t j) {
    const double k = -kPi / dc.l + static_cast<double>(j) * dk;
    const double theta = theta_from_events(events, flips, k, dc.l);
    prof.k_values[j] = k;
    prof.theta_of_k[j] = theta;
    prof.p_g_of_k[j] = p_geometric(theta);
  });
  prof.tpt_count = static_cast<std::size_t>(std::count(flips.begin(), flips.end(), true));
  return prof;
}

std::vector<BlochVector> effective_field_trace(const DriveCycle& dc, double k) {
  validate(dc);
  std::vector<BlochVector> trace;
  trace.reserve(dc.time_samples);
  for (std::size_t i = 0; i < dc.time_samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(dc.time_samples);
    trace.push_back(bloch_vector(k, {drive_v(dc, t), dc.w, dc.l}));
  }
  return trace;
}

}  // namespace geopump
