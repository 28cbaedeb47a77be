#include "geopump/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "geopump/errors.hpp"
#include "geopump/loop_evolution.hpp"
#include "geopump/parallel.hpp"

namespace geopump {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex i_power(std::size_t n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

StableCurve StableCurve::mirrored() const {
  StableCurve m{p, q, points};
  for (auto& pt : m.points) pt.second = -pt.second;
  return m;
}

LambdaTilde lambda_tilde(const LoopParams& lp) {
  return {Complex{0.0, -2.0 * std::cos(0.5 * lp.theta) * std::cos(lp.phi)}};
}

Complex fib_eval(std::size_t n, Complex x) {
  Complex prev{0.0, 0.0};  // F_0
  if (n == 0) return prev;
  Complex cur{1.0, 0.0};  // F_1
  for (std::size_t k = 1; k < n; ++k) {
    const Complex next = x * cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex fib_e_eval(std::size_t n, Complex x) {
  if (n == 0) return {1.0, 0.0};
  return fib_eval(n - 1, x);
}

Su2Matrix un_closed_form(const LoopParams& lp, std::size_t n) {
  const Complex lt = lambda_tilde(lp).value;
  const Su2Matrix u_tilde = build_loop_operator(lp).scaled(-kI);
  const Complex f = fib_eval(n, lt);
  const Complex e = fib_e_eval(n, lt);
  const Su2Matrix inner =
      u_tilde.scaled(f) + Su2Matrix::identity().scaled(e);
  return inner.scaled(i_power(n));
}

double off_diagonal_magnitude(const LoopParams& lp, std::size_t n) {
  return std::abs(fib_eval(n, lambda_tilde(lp).value)) *
         std::abs(std::sin(0.5 * lp.theta));
}

StabilityVerdict classify(const LoopParams& lp, std::size_t n_max, double tol) {
  if (n_max == 0) throw std::invalid_argument("classify: n_max must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be > 0");

  const Complex lt = lambda_tilde(lp).value;
  const double sh = std::abs(std::sin(0.5 * lp.theta));

  StabilityVerdict v;
  v.n_max = n_max;
  v.min_residual = std::numeric_limits<double>::infinity();

  Complex prev{0.0, 0.0};
  Complex cur{1.0, 0.0};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double residual = std::abs(cur) * sh;
    v.min_residual = std::min(v.min_residual, residual);
    if (residual < tol) {
      v.kind = StabilityKind::Stable;
      v.order = n;
      return v;
    }
    const Complex next = lt * cur + prev;
    prev = cur;
    cur = next;
  }
  v.marginal = v.min_residual < kMarginalUpper;
  return v;
}

std::size_t rational_rotation_order(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("rational_rotation_order: q must be > 0");
  const std::int64_t two_q = 2 * q;
  const std::int64_t g = std::gcd(std::abs(p), two_q);
  return static_cast<std::size_t>(two_q / g);
}

StableCurve stable_curve(std::int64_t p, std::int64_t q, std::size_t resolution) {
  if (q <= 0 || std::gcd(std::abs(p), q) != 1) {
    throw std::invalid_argument("stable_curve: p/q must be in lowest terms with q > 0");
  }
  if (resolution < 2) {
    throw std::invalid_argument("stable_curve: resolution must be >= 2");
  }
  if (p <= 0 || p >= 2 * q) {
    throw EmptyCurve("stable_curve: delta = p pi / q must lie in (0, 2 pi)");
  }
  const double cos_half_delta =
      std::cos(0.5 * kPi * static_cast<double>(p) / static_cast<double>(q));
  // Admissible where |cos(delta/2)| <= cos(Theta/2).
  const double theta_max = 2.0 * std::acos(std::abs(cos_half_delta));
  if (!(theta_max > 0.0)) {
    throw EmptyCurve("stable_curve: no admissible Theta");
  }

  StableCurve curve{p, q, {}};
  curve.points.reserve(resolution);
  // The curve ends on Phi = 0 (or pi) at theta_max, except for delta = pi
  // where theta_max = pi and every Phi qualifies, so that end stays open.
  const std::size_t steps = p == q ? resolution + 1 : resolution;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double theta =
        theta_max * static_cast<double>(i + 1) / static_cast<double>(steps);
    const double ratio =
        std::clamp(cos_half_delta / std::cos(0.5 * theta), -1.0, 1.0);
    curve.points.emplace_back(theta, std::acos(ratio));
  }
  return curve;
}

bool PhaseDiagram::is_boundary(std::size_t row, std::size_t col) const {
  if (!has_boundary) return false;
  return row == 0 || row + 1 == theta.size() || col == 0 || col + 1 == phi.size();
}

double PhaseDiagram::interior_stable_fraction() const {
  std::size_t total = 0;
  std::size_t stable = 0;
  for (std::size_t r = 0; r < theta.size(); ++r) {
    for (std::size_t c = 0; c < phi.size(); ++c) {
      if (is_boundary(r, c)) continue;
      ++total;
      if (at(r, c).stable()) ++stable;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(stable) / static_cast<double>(total);
}

PhaseDiagram phase_diagram(const PhaseDiagramSpec& spec) {
  if (spec.theta_cells < 2 || spec.phi_cells < 2) {
    throw std::invalid_argument("phase_diagram: grids must have >= 2 cells");
  }
  PhaseDiagram d;
  d.has_boundary = spec.include_boundary;

  const auto axis = [&](std::size_t cells, double lo, double hi) {
    std::vector<double> v;
    if (spec.include_boundary) v.push_back(lo);
    const double h = (hi - lo) / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      v.push_back(lo + (static_cast<double>(i) + 0.5) * h);
    }
    if (spec.include_boundary) v.push_back(hi);
    return v;
  };
  d.theta = axis(spec.theta_cells, 0.0, kPi);
  d.phi = axis(spec.phi_cells, -0.5 * kPi, 0.5 * kPi);

  const std::size_t cols = d.phi.size();
  d.cells.resize(d.theta.size() * cols);
  parallel_for_index(d.cells.size(), spec.threads, [&](std::size_t idx) {
    const LoopParams lp{d.theta[idx / cols], 0.0, d.phi[idx % cols]};
    d.cells[idx] = classify(lp, spec.n_max, spec.tol);
  });
  return d;
}

}  // namespace geopump
