#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sdcluster {

// Ambient points and vectors are stored padded to three components; for
// d = 2 the z entry is identically zero. Keeping a single fixed-size type
// avoids templating every container on the ambient dimension.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using index_t = std::int32_t;

inline double det2(const Vec3& a, const Vec3& b) { return a.x() * b.y() - a.y() * b.x(); }

// Fixed wedge convention in the plane: rot_{-90}(a,b) = (b,-a). All 2d
// normal/orientation signs in the library derive from this single choice.
inline Vec3 rot_minus90(const Vec3& a) { return Vec3(a.y(), -a.x(), 0.0); }
inline Vec3 rot_plus90(const Vec3& a) { return Vec3(-a.y(), a.x(), 0.0); }

// Formats a double with 17 significant digits (round-trip exact).
inline std::string format_float17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace sdcluster
