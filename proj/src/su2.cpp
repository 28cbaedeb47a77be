#include "geopump/su2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "geopump/errors.hpp"

namespace geopump {

namespace {

constexpr Complex kI{0.0, 1.0};

// Below this the rotation is +-I to working precision.
constexpr double kIdentityTol = 1e-12;

}  // namespace

Su2Matrix operator*(const Su2Matrix& x, const Su2Matrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Su2Matrix operator+(const Su2Matrix& x, const Su2Matrix& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

Su2Matrix operator-(const Su2Matrix& x, const Su2Matrix& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

double max_abs_diff(const Su2Matrix& x, const Su2Matrix& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b),
                   std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

double unitarity_defect(const Su2Matrix& m) {
  return max_abs_diff(m.adjoint() * m, Su2Matrix::identity());
}

Su2Matrix project_to_su2(const Su2Matrix& m) {
  const Complex p = 0.5 * (m.a + std::conj(m.d));
  const Complex q = 0.5 * (m.b - std::conj(m.c));
  const double n = std::sqrt(std::norm(p) + std::norm(q));
  const Complex pn = p / n;
  const Complex qn = q / n;
  return {pn, qn, -std::conj(qn), std::conj(pn)};
}

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Su2Matrix compose(const Su2Matrix& a, const Su2Matrix& b) { return a * b; }

Su2Matrix power(const Su2Matrix& u, std::uint64_t n) {
  Su2Matrix result = Su2Matrix::identity();
  Su2Matrix base = u;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Su2Matrix rotation_from_axis_angle(const AxisAngle& aa) {
  const double ch = std::cos(0.5 * aa.delta);
  const double sh = std::sin(0.5 * aa.delta);
  const double ca = std::cos(aa.alpha);
  const double sa = std::sin(aa.alpha);
  return {Complex{ch, -sh * ca}, -kI * sh * sa * std::polar(1.0, -aa.beta),
          -kI * sh * sa * std::polar(1.0, aa.beta), Complex{ch, sh * ca}};
}

Su2Matrix su2_from_euler(const EulerAngles& e) {
  const double ch = std::cos(0.5 * e.theta);
  const double sh = std::sin(0.5 * e.theta);
  const double sum = 0.5 * (e.phi + e.psi);
  const double diff = 0.5 * (e.phi - e.psi);
  return {ch * std::polar(1.0, -sum), -kI * sh * std::polar(1.0, -diff),
          -kI * sh * std::polar(1.0, diff), ch * std::polar(1.0, sum)};
}

AxisAngle axis_angle_from_euler(const EulerAngles& e) {
  const double ch = std::cos(0.5 * e.theta);
  const double sh = std::sin(0.5 * e.theta);
  const double half_sum = 0.5 * (e.phi + e.psi);

  // cos(delta/2) and sin(delta/2) >= 0; the second is
  // sqrt(1 - cos^2(theta/2) cos^2(half_sum)) written without cancellation.
  const double cos_half = ch * std::cos(half_sum);
  const double sin_half = std::hypot(sh, ch * std::sin(half_sum));
  if (sin_half <= kIdentityTol) {
    throw IdentityRotation("axis_angle_from_euler: rotation is +-I");
  }
  const double delta = wrap_two_pi(2.0 * std::atan2(sin_half, cos_half));

  // sin^2(alpha) = sin^2(theta/2) / sin^2(delta/2), equivalently the
  // cos^2(alpha) quotient; both signs of cos(alpha) are tried below.
  const double sin_alpha = sh / sin_half;
  const double cos_alpha_abs = std::abs(ch * std::sin(half_sum)) / sin_half;
  const double beta0 = 0.5 * (e.phi - e.psi);

  const Su2Matrix target = su2_from_euler(e);
  AxisAngle best{};
  double best_err = std::numeric_limits<double>::infinity();
  for (double sign : {1.0, -1.0}) {
    for (int n : {0, 1}) {
      AxisAngle cand{std::atan2(sin_alpha, sign * cos_alpha_abs),
                     wrap_two_pi(beta0 + n * kPi), delta};
      const double err = max_abs_diff(rotation_from_axis_angle(cand), target);
      if (err < best_err) {
        best_err = err;
        best = cand;
      }
    }
  }
  return best;
}

EulerAngles euler_from_loop(const LoopParams& lp) {
  return {lp.omega + 0.5 * kPi, lp.theta,
          2.0 * lp.phi - lp.omega - 0.5 * kPi};
}

SpinState apply(const Su2Matrix& u, const SpinState& s) {
  return {u.a * s.up + u.b * s.down, u.c * s.up + u.d * s.down};
}

}  // namespace geopump
