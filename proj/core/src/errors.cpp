#include "srvt/errors.hpp"

namespace srvt {
namespace {

std::string angle_message(double angle, int segment) {
  std::string msg = "rotation angle " + std::to_string(angle) +
                    " rad is within the branch tolerance of pi";
  if (segment >= 0) msg += " on subinterval " + std::to_string(segment);
  return msg;
}

std::string indexed_message(const std::string& what, int index) {
  if (index < 0) return what;
  return what + " at grid index " + std::to_string(index);
}

}  // namespace

AngleNearPiError::AngleNearPiError(double angle, int segment)
    : std::runtime_error(angle_message(angle, segment)),
      angle_(angle),
      segment_(segment) {}

CutLocusError::CutLocusError(const std::string& what, int index)
    : std::runtime_error(indexed_message(what, index)), index_(index) {}

ChartDomainError::ChartDomainError(const std::string& what, int index)
    : std::runtime_error(indexed_message(what, index)), index_(index) {}

}  // namespace srvt
