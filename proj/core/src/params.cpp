#include "optomech/params.hpp"

#include <cmath>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

void SystemParams::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(omega_c) || !finite(omega_m) || !finite(g0) || !finite(g1) ||
      !finite(Omega) || !finite(omega_d)) {
    throw ParameterError("system parameters must be finite");
  }
  if (omega_c <= 0.0) {
    throw ParameterError("omega_c must be positive, got " + std::to_string(omega_c));
  }
  if (omega_m <= 0.0) {
    throw ParameterError("omega_m must be positive, got " + std::to_string(omega_m));
  }
  if (g0 < 0.0 || g1 < 0.0) {
    throw ParameterError("couplings g0, g1 must be non-negative");
  }
  if (Omega < 0.0) {
    throw ParameterError("drive amplitude Omega must be non-negative");
  }
  if (omega_d < 0.0) {
    throw ParameterError("drive frequency omega_d must be non-negative");
  }
}

}  // namespace optomech
