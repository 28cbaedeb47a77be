#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace geopump {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
///
/// Nothing in the type enforces unitarity; every factory in this module
/// produces an SU(2) element and `compose` preserves that up to rounding.
struct Su2Matrix {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  static constexpr Su2Matrix identity() { return {}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }
  Su2Matrix adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  Su2Matrix scaled(Complex s) const { return {s * a, s * b, s * c, s * d}; }

  bool operator==(const Su2Matrix&) const = default;
};

Su2Matrix operator*(const Su2Matrix& x, const Su2Matrix& y);
Su2Matrix operator+(const Su2Matrix& x, const Su2Matrix& y);
Su2Matrix operator-(const Su2Matrix& x, const Su2Matrix& y);

/// Largest entrywise modulus of x - y.
double max_abs_diff(const Su2Matrix& x, const Su2Matrix& y);

/// max |(M^dagger M - I)_ij|
double unitarity_defect(const Su2Matrix& m);

/// Nearest element of SU(2) in the quaternion sense: keeps the
/// [[p, q], [-q*, p*]] part of m and rescales it to unit norm.
Su2Matrix project_to_su2(const Su2Matrix& m);

struct SpinState {
  Complex up{1.0, 0.0};
  Complex down{0.0, 0.0};

  double norm() const { return std::sqrt(std::norm(up) + std::norm(down)); }
};

/// Rotation by `delta` about the axis with polar angle `alpha` and
/// azimuth `beta`.
struct AxisAngle {
  double alpha = 0.0;  // [0, pi]
  double beta = 0.0;   // [0, 2pi)
  double delta = 0.0;  // [0, 2pi)
};

struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;  // [0, pi]
  double psi = 0.0;
};

/// Coordinates of one driving loop.
///
/// `theta` is the opening angle of the field loop at the degeneracy
/// point, `omega` the azimuth of the loop plane and `phi` the dynamic
/// phase accumulated over one cycle.
struct LoopParams {
  double theta = 0.0;  // [0, pi]
  double omega = 0.0;  // [0, 2pi)
  double phi = 0.0;    // [-pi/2, pi/2]
};

/// Reduce an angle into [0, 2pi).
double wrap_two_pi(double angle);

Su2Matrix compose(const Su2Matrix& a, const Su2Matrix& b);

/// u^n by binary exponentiation; power(u, 0) is the identity.
Su2Matrix power(const Su2Matrix& u, std::uint64_t n);

Su2Matrix rotation_from_axis_angle(const AxisAngle& aa);

/// [[cos(t/2) e^{-i(f+s)/2}, -i sin(t/2) e^{i(s-f)/2}],
///  [-i sin(t/2) e^{i(f-s)/2},  cos(t/2) e^{i(f+s)/2}]]
Su2Matrix su2_from_euler(const EulerAngles& e);

/// Inverse of `rotation_from_axis_angle` restricted to the Euler family.
///
/// cos(delta/2) = cos(theta/2) cos((phi+psi)/2); the sign of cos(alpha)
/// and the pi-branch of beta = (phi-psi)/2 + n pi are fixed by requiring
/// that the returned axis-angle rebuilds `su2_from_euler(e)`.
/// Throws IdentityRotation when e describes +-I.
AxisAngle axis_angle_from_euler(const EulerAngles& e);

/// phi = Omega + pi/2, theta = Theta, psi = 2 Phi - Omega - pi/2, so that
/// su2_from_euler(euler_from_loop(lp)) is the loop operator of lp.
EulerAngles euler_from_loop(const LoopParams& lp);

SpinState apply(const Su2Matrix& u, const SpinState& s);

}  // namespace geopump
