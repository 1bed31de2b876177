#pragma once

namespace optomech {

/// Physical parameters of the driven optomechanical system
///
///   H/hbar = (wc + g1 wm) n̂ + wm N̂ + 2 g1 wm n̂ N̂
///            - g0 wm n̂ (b + b†) + g1 wm n̂ (b² + b†²)
///            + Omega cos(wd t) (a + a†)
///
/// with n̂ = a†a the photon number and N̂ = b†b the phonon number.
/// g0 and g1 are the dimensionless linear and quadratic coupling strengths.
struct SystemParams {
  double omega_c = 10.0;  ///< cavity frequency wc
  double omega_m = 1.0;   ///< mechanical frequency wm
  double g0 = 0.0;        ///< linear coupling (dimensionless)
  double g1 = 0.0;        ///< quadratic coupling (dimensionless)
  double Omega = 0.0;     ///< drive amplitude
  double omega_d = 0.0;   ///< drive frequency

  /// Coupling-shifted cavity frequency wc' = wc + g1 wm. Always recomputed so
  /// it can never go stale when g1 or wm change.
  double omega_c_prime() const { return omega_c + g1 * omega_m; }

  /// Linear coupling rate G0 = g0 wm.
  double coupling_linear() const { return g0 * omega_m; }
  /// Quadratic coupling rate G1 = g1 wm.
  double coupling_quadratic() const { return g1 * omega_m; }

  /// Throws ParameterError if frequencies are non-positive or couplings /
  /// drive amplitude are negative.
  void validate() const;
};

}  // namespace optomech
