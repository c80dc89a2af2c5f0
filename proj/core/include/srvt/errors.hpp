#pragma once

#include <stdexcept>
#include <string>

namespace srvt {

/// Matrix logarithm requested for a rotation whose angle is within the branch
/// tolerance of pi, where the log has no preferred branch.  Callers holding a
/// sampled curve should refine the grid until consecutive increments shrink.
class AngleNearPiError : public std::runtime_error {
 public:
  explicit AngleNearPiError(double angle, int segment = -1);

  /// Rotation angle (radians) that triggered the error.
  double angle() const noexcept { return angle_; }
  /// Grid subinterval the offending increment belongs to, or -1 if the log
  /// was not taken as part of a curve operation.
  int segment() const noexcept { return segment_; }

 private:
  double angle_;
  int segment_;
};

/// A point left the domain on which the reference-point geometry is valid:
/// it is too close to the cut locus of the reference point (sphere) or
/// outside the chart domain guard.
class CutLocusError : public std::runtime_error {
 public:
  explicit CutLocusError(const std::string& what, int index = -1);

  /// Grid index of the offending point, or -1 when not tied to a curve.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A numerically integrated geodesic or transport path left the chart domain.
class ChartDomainError : public std::runtime_error {
 public:
  explicit ChartDomainError(const std::string& what, int index = -1);

  /// Grid index of the subinterval where the path left the chart, or -1.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A curve/warp file failed to parse or violated a format invariant.  The
/// message names the file and, where applicable, the grid index.
class CurveFileError : public std::runtime_error {
 public:
  explicit CurveFileError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srvt
