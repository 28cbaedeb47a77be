#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "geopump/su2.hpp"

namespace geopump {

inline constexpr double kDefaultStabilityTol = 1e-9;
/// Residuals in [tol, kMarginalUpper) are flagged but still count as
/// NoStabilityFound.
inline constexpr double kMarginalUpper = 1e-6;

/// -i tr U = -2i cos(Theta/2) cos(Phi); always purely imaginary.
struct LambdaTilde {
  Complex value;
};

enum class StabilityKind { Stable, NoStabilityFound };

/// A point is stable of order N when U^N is diagonal. Rationality of the
/// rotation angle is undecidable in floating point, so the negative
/// verdict only covers orders up to n_max.
struct StabilityVerdict {
  StabilityKind kind = StabilityKind::NoStabilityFound;
  std::size_t order = 0;  // smallest N, valid iff Stable
  std::size_t n_max = 0;
  bool marginal = false;
  double min_residual = 0.0;  // smallest |(U^n)_12| seen for n <= order or n_max

  bool stable() const { return kind == StabilityKind::Stable; }
};

/// Points on cos(Theta/2) cos(Phi) = cos(delta/2) with delta = p pi / q.
///
/// Phi is taken from arccos and lies in [0, pi]; for p/q > 1 that is past
/// pi/2, which is the Phi + pi image of a canonical-range point.
struct StableCurve {
  std::int64_t p = 0;
  std::int64_t q = 1;
  std::vector<std::pair<double, double>> points;  // (Theta, Phi)

  /// The Phi -> -Phi branch of the same curve.
  StableCurve mirrored() const;
};

LambdaTilde lambda_tilde(const LoopParams& lp);

/// F_n(x) of P_{n+2} = x P_{n+1} + P_n with F_0 = 0, F_1 = 1.
Complex fib_eval(std::size_t n, Complex x);

/// E_n(x) = F_{n-1}(x), with E_0 = 1.
Complex fib_e_eval(std::size_t n, Complex x);

/// U^n = i^n (F_n(l) U~ + E_n(l) I) with U~ = -i U and l = lambda_tilde.
Su2Matrix un_closed_form(const LoopParams& lp, std::size_t n);

/// |(U^n)_12| = |F_n(lambda_tilde)| sin(Theta/2).
double off_diagonal_magnitude(const LoopParams& lp, std::size_t n);

StabilityVerdict classify(const LoopParams& lp, std::size_t n_max,
                          double tol = kDefaultStabilityTol);

/// Smallest N >= 1 with N p = 0 (mod 2q): the order of a rotation by
/// p pi / q.
std::size_t rational_rotation_order(std::int64_t p, std::int64_t q);

/// Throws std::invalid_argument unless gcd(|p|, q) = 1 and resolution >= 2,
/// EmptyCurve unless 0 < p/q < 2.
StableCurve stable_curve(std::int64_t p, std::int64_t q, std::size_t resolution);

struct PhaseDiagramSpec {
  std::size_t theta_cells = 100;
  std::size_t phi_cells = 100;
  std::size_t n_max = 200;
  double tol = kDefaultStabilityTol;
  /// Adds the rows Theta in {0, pi} and columns Phi = +-pi/2 around the
  /// half-cell interior grid.
  bool include_boundary = true;
  unsigned threads = 1;
};

/// Verdicts on a (Theta, Phi) grid, row-major in Theta.
///
/// Interior samples sit at half-cell centres, Theta_i = (i + 1/2) pi / T and
/// Phi_j = -pi/2 + (j + 1/2) pi / P, so they never land on the boundary
/// stable lines.
struct PhaseDiagram {
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<StabilityVerdict> cells;
  bool has_boundary = false;

  const StabilityVerdict& at(std::size_t row, std::size_t col) const {
    return cells[row * phi.size() + col];
  }
  bool is_boundary(std::size_t row, std::size_t col) const;
  /// Fraction of stable points among the non-boundary samples.
  double interior_stable_fraction() const;
};

PhaseDiagram phase_diagram(const PhaseDiagramSpec& spec);

}  // namespace geopump
