// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles are written out here rather than borrowed from the
// library where that is feasible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "geopump/asymptotics.hpp"
#include "geopump/band_model.hpp"
#include "geopump/errors.hpp"
#include "geopump/loop_evolution.hpp"
#include "geopump/result_table.hpp"
#include "geopump/rng.hpp"
#include "geopump/run.hpp"
#include "geopump/stability.hpp"
#include "geopump/su2.hpp"

using namespace geopump;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double closed_form_p(double theta, double phi) {
  const double s = std::sin(theta / 2);
  const double c = std::cos(theta / 2) * std::cos(phi);
  return 0.5 * s * s / (1.0 - c * c);
}

Su2Matrix product(const Su2Matrix& x, const Su2Matrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

double entry_gap(const Su2Matrix& x, const Su2Matrix& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                   std::abs(x.d - y.d)});
}

double ks_uniform(std::vector<double> xs, double span) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = xs[i] / span;
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

Outcome c1_convergence() {
  CounterRng rng(101);
  const auto start = Clock::now();
  int good = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.uniform(0.1, kPi - 0.1);
    const double phi = rng.uniform(-1.4, 1.4);
    const double err =
        std::abs(pump_trace({theta, 0.0, phi}, 10000).final_average() - closed_form_p(theta, phi));
    worst = std::max(worst, err);
    if (err < 2e-2) ++good;
  }
  const double t = seconds_since(start);
  return {good >= 95 && t < 30.0,
          fmt("%.0f/100 within 2e-2 (worst %.3g), %.2f s", good, worst, t)};
}

Outcome c2_ceiling() {
  const int n = 200;
  double top = 0.0;
  double top_row_worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = kPi * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double phi = -kPi / 2 + kPi * j / (n - 1);
      const double p = p_infinity({theta, 0.0, phi});
      top = std::max(top, p);
      if (i == n - 1) top_row_worst = std::max(top_row_worst, std::abs(p - 0.5));
    }
  }
  return {top <= 0.5 + 1e-12 && top_row_worst < 1e-12,
          fmt("max %.17g, theta=pi row off by %.3g", top, top_row_worst)};
}

Outcome c3_average() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double theta = kPi * i / 49;
    worst = std::max(worst, std::abs(phi_average(theta, 10000) - 0.5 * std::sin(theta / 2)));
  }
  const double t = seconds_since(start);
  return {worst < 1e-6 && t < 5.0, fmt("max error %.3g, %.3f s", worst, t)};
}

Outcome c4_routes() {
  CounterRng rng(104);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LoopParams lp{rng.uniform(0.0, kPi), rng.uniform(0.0, kTwoPi),
                        rng.uniform(-kPi / 2, kPi / 2)};
    worst = std::max(worst, std::abs(p_infinity(lp) - p_infinity_axis_route(lp)));
  }
  return {worst < 1e-10, fmt("max |direct - axis| %.3g", worst)};
}

Outcome c5_closed_powers() {
  CounterRng rng(105);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const LoopParams lp{rng.uniform(0.0, kPi), rng.uniform(0.0, kTwoPi),
                        rng.uniform(-kPi / 2, kPi / 2)};
    const Su2Matrix u = build_loop_operator(lp);
    Su2Matrix m = Su2Matrix::identity();
    for (std::size_t n = 1; n <= 100; ++n) {
      m = product(m, u);
      worst = std::max(worst, entry_gap(un_closed_form(lp, n), m));
    }
  }
  return {worst < 1e-10, fmt("max entry error %.3g", worst)};
}

Outcome c6_stability_exact() {
  int curves = 0;
  int mismatches = 0;
  for (long q = 1; q <= 12; ++q) {
    for (long p = 1; p < 2 * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++curves;
      std::size_t expected = 1;
      while ((static_cast<long>(expected) * p) % (2 * q) != 0) ++expected;
      for (const auto& [theta, phi] : stable_curve(p, q, 5).points) {
        const LoopParams lp{theta, 0.0, phi};
        const StabilityVerdict v = classify(lp, 200);
        const Su2Matrix u = build_loop_operator(lp);
        Su2Matrix m = Su2Matrix::identity();
        std::size_t direct = 0;
        for (std::size_t n = 1; n <= 200 && direct == 0; ++n) {
          m = product(m, u);
          if (std::abs(m.b) < 1e-9) direct = n;
        }
        if (!v.stable() || v.order != expected || direct != expected) ++mismatches;
      }
    }
  }
  return {mismatches == 0, fmt("%.0f curves x 5 points, %.0f mismatches", curves, mismatches)};
}

PhaseDiagram reference_diagram(unsigned threads) {
  PhaseDiagramSpec spec;
  spec.theta_cells = 100;
  spec.phi_cells = 100;
  spec.n_max = 200;
  spec.threads = threads;
  return phase_diagram(spec);
}

Outcome c7_boundary(const PhaseDiagram& d) {
  int total = 0;
  int bad = 0;
  for (std::size_t r = 0; r < d.theta.size(); ++r) {
    for (std::size_t c = 0; c < d.phi.size(); ++c) {
      const bool edge = d.theta[r] == 0.0 || d.theta[r] == kPi || std::abs(d.phi[c]) == kPi / 2;
      if (!edge) continue;
      ++total;
      if (!d.at(r, c).stable() || d.at(r, c).order > 2) ++bad;
    }
  }
  return {total > 0 && bad == 0, fmt("%.0f boundary points, %.0f not stable of order <= 2", total, bad)};
}

Outcome c8_measure(const PhaseDiagram& d) {
  int total = 0;
  int stable = 0;
  for (std::size_t r = 0; r < d.theta.size(); ++r) {
    for (std::size_t c = 0; c < d.phi.size(); ++c) {
      if (d.theta[r] == 0.0 || d.theta[r] == kPi || std::abs(d.phi[c]) == kPi / 2) continue;
      ++total;
      if (d.at(r, c).stable()) ++stable;
    }
  }
  const double frac = static_cast<double>(stable) / total;
  return {total == 10000 && frac < 0.05, fmt("%.0f interior points, stable fraction %.4f", total, frac)};
}

Outcome c9_norm() {
  CounterRng rng(109);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const LoopParams lp{rng.uniform(0.0, kPi), rng.uniform(0.0, kTwoPi),
                        rng.uniform(-kPi / 2, kPi / 2)};
    worst = std::max(worst, max_norm_drift(lp, 1000000));
  }
  return {worst < 1e-9, fmt("max norm deviation %.3g over 1e6 cycles", worst)};
}

Outcome c10_band() {
  CounterRng rng(110);
  int agree = 0;
  int tried = 0;
  while (tried < 200) {
    const double v = rng.uniform(-3.0, 3.0);
    const double w = rng.uniform(-3.0, 3.0);
    if (std::abs(std::abs(v) - std::abs(w)) < 1e-6) continue;
    ++tried;
    if (std::abs(winding_number({v, w, 1.0})) == (std::abs(v) < std::abs(w) ? 1 : 0)) ++agree;
  }

  bool profile_ok = true;
  const PumpProfile one = pump_profile({1.0}, 256);
  for (std::size_t j = 0; j < one.k_values.size(); ++j) {
    const bool at_closing = std::abs(std::abs(one.k_values[j]) - kPi) < 1e-12;
    profile_ok = profile_ok && one.p_g_of_k[j] == (at_closing ? 0.5 : 0.0);
  }
  profile_ok = profile_ok && one.tpt_count == 2;

  const auto all_zero = [](const PumpProfile& p) {
    return std::all_of(p.p_g_of_k.begin(), p.p_g_of_k.end(), [](double x) { return x == 0.0; });
  };
  const PumpProfile three = pump_profile({3.0}, 256);
  const PumpProfile zero = pump_profile({0.0}, 256);
  const bool rest_ok = all_zero(three) && three.tpt_count == 0 && all_zero(zero);

  return {agree == 200 && profile_ok && rest_ok,
          fmt("winding %.0f/200", agree) + ", a=1 profile " + (profile_ok ? "ok" : "wrong") +
              ", a=3 and a=0 profiles " + (rest_ok ? "zero" : "nonzero")};
}

Outcome c11_equidistribution() {
  CounterRng rng(111);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const LoopParams lp{rng.uniform(0.3, kPi - 0.3), 0.0, rng.uniform(-1.3, 1.3)};
    worst = std::max(worst, ks_uniform(trajectory_angles(lp, 100000), kTwoPi));
  }
  return {worst < 0.01, fmt("max KS statistic %.4g", worst)};
}

std::string cli_bytes(const std::vector<std::string>& args, unsigned threads) {
  std::vector<std::string> full{"geopump"};
  full.insert(full.end(), args.begin(), args.end());
  full.insert(full.end(), {"--out", "-", "--threads", std::to_string(threads)});
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  const auto cfg = parse_command_line(static_cast<int>(argv.size()), argv.data());
  return to_csv(run(*cfg)) + to_json(run(*cfg));
}

Outcome c12_determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"phase-diagram", "--theta-grid", "60", "--phi-grid", "60"},
      {"band-scan", "--a", "1", "--k-grid", "512"},
      {"band-scan", "--a", "0.3", "--w", "0.8", "--k-grid", "256"},
  };
  int differing = 0;
  for (const auto& cmd : commands) {
    const std::string ref = cli_bytes(cmd, 1);
    if (cli_bytes(cmd, 1) != ref) ++differing;
    for (unsigned t : {2U, 8U}) {
      if (cli_bytes(cmd, t) != ref) ++differing;
    }
  }
  return {differing == 0, fmt("%.0f differing outputs across re-runs and threads {1,2,8}", differing)};
}

}  // namespace

int main() {
  const PhaseDiagram diagram = reference_diagram(1);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 cesaro-convergence", c1_convergence},
      {"2 ceiling", c2_ceiling},
      {"3 phi-average-identity", c3_average},
      {"4 route-equivalence", c4_routes},
      {"5 closed-form-powers", c5_closed_powers},
      {"6 stability-exactness", c6_stability_exact},
      {"7 boundary-stability", [&] { return c7_boundary(diagram); }},
      {"8 measure-surrogate", [&] { return c8_measure(diagram); }},
      {"9 norm-preservation", c9_norm},
      {"10 band-model", c10_band},
      {"11 equidistribution", c11_equidistribution},
      {"12 determinism", c12_determinism},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s [%s] %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
