#pragma once

#include <stdexcept>
#include <string>

namespace geopump {

/// Rotation is +-I, so its axis (and the trajectory angle) is undefined.
class IdentityRotation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Z2 index requested at B_z = 0.
class ZeroField : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Winding number requested for a gapless Bloch circle.
class GapClosed : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EmptyCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geopump
