#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "optomech/fock.hpp"
#include "optomech/ode.hpp"
#include "optomech/params.hpp"

namespace optomech {

/// Which factored propagator a coefficient trajectory belongs to.
enum class CouplingScenario {
  quadratic,  ///< four factors exp(b1 b†²) exp(b2 N) exp(b3 b²) exp(b4)
  linquad,    ///< six factors exp(a1 b†²) exp(a2 b†) exp(a3 N) exp(a4 b) exp(a5 b²) exp(a6),
              ///< coefficients taken in the frame rotating at wm N̂
  forced      ///< same six factors for the driven system with n̂ -> n_mean(t)
};

/// Sampled solution of one of the coefficient ODE systems on a fixed grid.
/// Row k holds the coefficients at t[k]; row 0 is exactly zero. Slot meaning:
/// quadratic uses slots 0..3 as (b†², N, b², I); the six-function scenarios
/// use slots 0..5 as (b†², b†, N, b, b², I).
struct CoefficientTrajectory {
  CouplingScenario scenario = CouplingScenario::quadratic;
  SystemParams params;
  int n = 0;  ///< photon sector (initial photon number for forced)
  int width = 4;
  std::vector<double> t;
  std::vector<std::array<Complex, 6>> coeffs;

  /// Grid index of time `time` (must coincide with a node within 1e-9).
  size_t index_of(double time) const;
  const std::array<Complex, 6>& at_time(double time) const { return coeffs[index_of(time)]; }
};

// ----- linear coupling (closed form, no ODE) -----

/// Mechanical displacement d(n, t) = g0 (1 - e^{-i wm t}) n accumulated by the
/// linear coupling; the phonon mean for initial |n> x |Gamma> is
/// |Gamma e^{-i wm t} + d|².
Complex linear_displacement(const SystemParams& params, int n, double t);

/// Closed-form coefficients of the five-factor propagator for the purely
/// linear coupling,
///   U = exp(a1 n̂) exp(a2 N̂) exp(a3 n̂ b†) exp(a4 n̂ b) exp(a5 n̂²),
/// with a1 = -i wc t, a2 = -i wm t, a3 = g0 (e^{i wm t} - 1), a4 = -conj(a3),
/// and a5 = i g0² (wm t - sin wm t) - |a3|²/2 so the product is unitary
/// (a5 + |a3|²/2 purely imaginary).
struct LinearAlphaCoeffs {
  Complex alpha1, alpha2, alpha3, alpha4, alpha5;
};
LinearAlphaCoeffs linear_alpha_coeffs(const SystemParams& params, double t);

// ----- quadratic coupling -----

/// Coefficients of H^{(n)} = F1 b†² + F2 N + F3 b² + F4 for the quadratic
/// scenario: F1 = F3 = g1 wm, F2 = wm (1 + 2 g1 n), F4 = (wc + g1 wm) n.
std::array<double, 4> quadratic_hamiltonian_coeffs(const SystemParams& params, int n);

/// Integrate the four coupled coefficient ODEs
///   b1' = -i (F1 + 4 b1² F3 + 2 b1 F2)
///   b2' = -i (F2 + 4 b1 F3)
///   b3' = -i F3 e^{2 b2}
///   b4' = -i (F4 + 2 b1 F3)
/// from b(0) = 0 over t_grid (t_grid[0] must be 0).
CoefficientTrajectory quadratic_coefficients(const SystemParams& params, int n,
                                             std::span<const double> t_grid,
                                             const OdeOptions& opts = {});

// ----- generic six-function system -----

/// Time-dependent coefficients (h1..h6) of a Hamiltonian
/// H(t) = h1 b†² + h2 b† + h3 N + h4 b + h5 b² + h6 on the mechanical mode.
using MechHamiltonianCoeffs = std::function<std::array<Complex, 6>(double t)>;

/// Coefficient ODEs for U = exp(a1 b†²) exp(a2 b†) exp(a3 N) exp(a4 b)
/// exp(a5 b²) exp(a6) solving i dU/dt = H(t) U:
///   a1' = -i (h1 + 2 a1 h3 + 4 a1² h5)
///   a2' = -i (h2 + a2 h3 + 2 a1 h4 + 4 a1 a2 h5)
///   a3' = -i (h3 + 4 a1 h5)
///   a4' = -i e^{a3} (h4 + 2 a2 h5)
///   a5' = -i e^{2 a3} h5
///   a6' = -i (h6 + a2 h4 + (a2² + 2 a1) h5)
void six_function_rhs(const std::array<Complex, 6>& a, std::array<Complex, 6>& dadt,
                      const std::array<Complex, 6>& h);

/// H(t) coefficients of the combined-coupling sector Hamiltonian in the frame
/// rotating at wm N̂, for photon sector n (or time-dependent photon mean):
///   h1 = g1 wm n e^{2i wm t},  h2 = -g0 wm n e^{i wm t},  h3 = 2 g1 wm n,
///   h4 = conj(h2), h5 = conj(h1), h6 = (wc + g1 wm) n (0 for the driven case).
MechHamiltonianCoeffs linquad_hamiltonian_coeffs(const SystemParams& params, int n);

/// Six-function trajectory for photon sector n of the combined linear +
/// quadratic coupling (no drive).
CoefficientTrajectory linquad_coefficients(const SystemParams& params, int n,
                                           std::span<const double> t_grid,
                                           const OdeOptions& opts = {});

// ----- coherent drive on the field mode -----

/// Displacement coefficients of the drive propagator factor
/// exp(alpha1 a†) exp(alpha2 a) exp(alpha3): alpha1 is closed form,
/// alpha2 = -conj(alpha1), and alpha3 is the cumulative quadrature of
/// alpha1 * alpha2', tabulated once up to the horizon t_max and interpolated
/// on demand. Unitarity fixes Re(alpha3) = -|alpha1|²/2.
class DriveAlphas {
 public:
  /// Valid for 0 <= t <= t_max. Construction integrates alpha3 once.
  DriveAlphas(const SystemParams& params, double t_max);

  Complex alpha1(double t) const;
  Complex alpha2(double t) const;
  Complex alpha3(double t) const;
  double t_max() const { return t_max_; }
  const SystemParams& params() const { return params_; }

 private:
  Complex alpha2_dot(double t) const;

  SystemParams params_;
  double t_max_ = 0.0;
  double dt_ = 0.0;                // node spacing of the alpha3 table
  std::vector<Complex> alpha3_;    // cumulative values at k * dt_
};

/// Guard distance to the cavity resonance: |wc' - wd| must exceed 1e-3 wc'.
DriveAlphas drive_alphas(const SystemParams& params, double t_max);

/// Photon mean n0 + |alpha1(t)|² in the constant-photon-operator
/// approximation. Warns when the validity conditions wd << wc' or
/// Omega < wm are not met.
double mean_photon_forced(const SystemParams& params, double n0, double t);

/// Six-function trajectory for the driven interaction Hamiltonian with the
/// photon operator replaced by n_mean(t). Generators and slot order are the
/// same as linquad_coefficients; h6 = 0 because the sector constant moved into
/// the free propagator.
CoefficientTrajectory forced_interaction_coefficients(
    const SystemParams& params, const std::function<double(double)>& n_mean,
    std::span<const double> t_grid, const OdeOptions& opts = {});

/// All coefficient families of the driven propagator
/// U = U_free * [drive factor] * [six-function factor] on one shared grid,
/// with n_mean(t) = n0 + |alpha1(t)|².
struct FullPropagatorCoeffs {
  DriveAlphas drive;
  CoefficientTrajectory mech;
};
FullPropagatorCoeffs full_propagator_coeffs(const SystemParams& params, int n0,
                                            std::span<const double> t_grid,
                                            const OdeOptions& opts = {});

}  // namespace optomech
