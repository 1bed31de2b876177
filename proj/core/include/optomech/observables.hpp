#pragma once

#include <string>
#include <utility>
#include <vector>

#include "optomech/heisenberg.hpp"
#include "optomech/params.hpp"
#include "optomech/propagators.hpp"

namespace optomech {

/// Products of Heisenberg-map coefficients entering the phonon-number
/// expansion N̂(t) = Ψ0 N̂ + Ψ1 𝕀 + Ψ2 b̂†² + Ψ3 b̂² + Ψ4 b̂† + Ψ5 b̂.
struct PsiCoeffs {
  Complex psi0, psi1, psi2, psi3, psi4, psi5;
};
PsiCoeffs psi_coeffs(const HeisenbergCoeffs& f);

/// ⟨N̂(t)⟩ for a mechanical coherent state |Gamma>:
/// Ψ0|Γ|² + Ψ1 + Ψ2 Γ*² + Ψ3 Γ² + Ψ4 Γ* + Ψ5 Γ.
/// Throws a consistency error if the imaginary part exceeds 1e-8.
double phonon_mean(const HeisenbergCoeffs& f, Complex Gamma);

/// ⟨N̂²(t)⟩ - ⟨N̂(t)⟩² for a mechanical coherent state, from the same
/// coefficient products (the conjugate-symmetric grouping; see docs).
double phonon_variance(const HeisenbergCoeffs& f, Complex Gamma);

/// Mandel parameter Q = variance / mean. Throws when the mean is below
/// 1e-12 (Q undefined).
double mandel_q(const HeisenbergCoeffs& f, Complex Gamma);

/// Quadrature means and dispersions for a mechanical coherent state, with
/// X = (b̂+b̂†)/√2, P = i(b̂†−b̂)/√2 and coherent-state dispersions 1/√2.
/// dX = √(½(f1+f5)(f2+f4)), dP = √(½(f4−f2)(f1−f5)); both radicands are
/// checked to be real and nonnegative within 1e-8 before the square root.
struct Quadratures {
  double x_mean, p_mean, dx, dp;
  double uncertainty_product() const { return dx * dp; }
};
Quadratures quadratures(const HeisenbergCoeffs& f, Complex Gamma);

/// Smallest K whose cumulative Poisson weight for mean `abs_alpha_sq`
/// reaches 1 - tail_tol (sector sums truncate at K).
int poisson_cutoff(double abs_alpha_sq, double tail_tol = 1e-8);

/// Poisson weight e^{-|α|²} |α|^{2k} / k! evaluated in log space.
double poisson_weight(double abs_alpha_sq, int k);

/// Per-photon-sector coefficient trajectories on one shared grid, with the
/// Poisson weights of a coherent field state; the building block of every
/// coherent-field observable (each sector evolves independently because the
/// propagator is diagonal in photon number).
class SectorTable {
 public:
  /// Undriven couplings: sectors 0..K from the quadratic system when g0 = 0,
  /// otherwise from the six-function system.
  SectorTable(const SystemParams& params, Complex alpha, std::span<const double> t_grid,
              const OdeOptions& opts = {});
  /// Driven couplings: sector k evolves under n_mean_k(t) = k + |alpha1(t)|².
  SectorTable(const SystemParams& params, Complex alpha, const DriveAlphas& drive,
              std::span<const double> t_grid, const OdeOptions& opts = {});

  int cutoff() const { return static_cast<int>(sectors_.size()) - 1; }
  const std::vector<double>& grid() const { return grid_; }
  const CoefficientTrajectory& sector(int k) const { return sectors_[static_cast<size_t>(k)]; }
  double weight(int k) const { return weights_[static_cast<size_t>(k)]; }

  /// Poisson-weighted ⟨N̂⟩ at grid node `idx`.
  double phonon_mean_at(Complex Gamma, size_t idx) const;
  /// Poisson-weighted quadrature means at grid node `idx`.
  std::pair<double, double> quadrature_means_at(Complex Gamma, size_t idx) const;
  /// Poisson-weighted dispersions at grid node `idx` (the dispersions
  /// themselves are averaged, not the variances).
  std::pair<double, double> dispersions_at(Complex Gamma, size_t idx) const;
  /// Mandel Q of the weighted mechanical mixture at grid node `idx`; the
  /// variance includes the spread of the per-sector means. Throws when the
  /// mixture mean vanishes.
  double mandel_at(Complex Gamma, size_t idx) const;

 private:
  std::vector<CoefficientTrajectory> sectors_;
  std::vector<double> weights_;
  std::vector<double> grid_;
};

/// ⟨N̂(t)⟩ for initial |α⟩⊗|Γ⟩: Poisson-weighted sum of per-sector means,
/// truncated where the neglected weight is below 1e-8.
double phonon_mean_coherent_field(const SystemParams& params, Complex alpha, Complex Gamma,
                                  double t);

/// (ΔX, ΔP) for initial |α⟩⊗|Γ⟩ as Poisson-weighted sums of the per-sector
/// dispersions.
std::pair<double, double> dispersion_coherent_field(const SystemParams& params, Complex alpha,
                                                    Complex Gamma, double t);

// ----- labeled real time series -----

enum class ObservableLabel {
  phonon_mean,
  photon_mean,
  x_mean,
  p_mean,
  dx,
  dp,
  mandel_q,
  uncertainty_product
};

enum class Provenance { analytic, oracle };

std::string to_string(ObservableLabel label);
std::string to_string(Provenance provenance);
/// Throws a parameter error for an unknown label name.
ObservableLabel label_from_string(const std::string& name);

/// A real observable sampled on a time grid, tagged with what it is and
/// which route produced it.
struct ObservableSeries {
  ObservableLabel label = ObservableLabel::phonon_mean;
  Provenance provenance = Provenance::analytic;
  std::vector<double> t;
  std::vector<double> values;
};

}  // namespace optomech
