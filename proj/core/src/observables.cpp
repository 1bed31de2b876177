#include "optomech/observables.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

/// Reduce a should-be-real complex value, failing loudly if it is not.
double require_real(Complex z, double tol, const char* what) {
  if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z))) {
    char detail[64];
    std::snprintf(detail, sizeof(detail), " has imaginary part %.3e", z.imag());
    throw ConsistencyError(std::string(what) + detail + ", expected real within tolerance");
  }
  return z.real();
}

double sqrt_nonneg(double radicand, const char* what) {
  if (radicand < -1e-12)
    throw ConsistencyError(std::string(what) + " radicand is negative: " +
                           std::to_string(radicand));
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

PsiCoeffs psi_coeffs(const HeisenbergCoeffs& f) {
  return {f.f1 * f.f4 + f.f2 * f.f5, f.f2 * f.f5 + f.f3 * f.f6, f.f1 * f.f5,
          f.f2 * f.f4,               f.f1 * f.f6 + f.f3 * f.f5, f.f2 * f.f6 + f.f3 * f.f4};
}

double phonon_mean(const HeisenbergCoeffs& f, Complex Gamma) {
  const PsiCoeffs p = psi_coeffs(f);
  const Complex g = Gamma, gc = std::conj(Gamma);
  const Complex mean =
      p.psi0 * std::norm(g) + p.psi1 + p.psi2 * gc * gc + p.psi3 * g * g + p.psi4 * gc +
      p.psi5 * g;
  return require_real(mean, 1e-8, "phonon mean");
}

double phonon_variance(const HeisenbergCoeffs& f, Complex Gamma) {
  const PsiCoeffs p = psi_coeffs(f);
  const Complex g = Gamma, gc = std::conj(Gamma);
  const Complex var = (p.psi0 * p.psi0 + 4.0 * p.psi2 * p.psi3) * std::norm(g) +
                      2.0 * p.psi0 * p.psi2 * gc * gc + 2.0 * p.psi0 * p.psi3 * g * g +
                      (p.psi0 * p.psi4 + 2.0 * p.psi5 * p.psi2) * gc +
                      (p.psi0 * p.psi5 + 2.0 * p.psi4 * p.psi3) * g +
                      2.0 * p.psi3 * p.psi2 + p.psi5 * p.psi4;
  return require_real(var, 1e-8, "phonon variance");
}

double mandel_q(const HeisenbergCoeffs& f, Complex Gamma) {
  const double mean = phonon_mean(f, Gamma);
  if (mean <= 1e-12)
    throw ParameterError("Mandel Q undefined: phonon mean " + std::to_string(mean) +
                         " vanishes");
  return phonon_variance(f, Gamma) / mean;
}

Quadratures quadratures(const HeisenbergCoeffs& f, Complex Gamma) {
  const Complex g = Gamma, gc = std::conj(Gamma);
  const Complex b_mean = f.f4 * g + f.f5 * gc + f.f6;       // <b(t)>
  const Complex bdag_mean = f.f1 * gc + f.f2 * g + f.f3;    // <b†(t)>
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  Quadratures q;
  q.x_mean = require_real((b_mean + bdag_mean) * inv_sqrt2, 1e-8, "X mean");
  q.p_mean = require_real(Complex{0.0, 1.0} * (bdag_mean - b_mean) * inv_sqrt2, 1e-8, "P mean");
  const Complex rx = 0.5 * (f.f1 + f.f5) * (f.f2 + f.f4);
  const Complex rp = 0.5 * (f.f4 - f.f2) * (f.f1 - f.f5);
  q.dx = sqrt_nonneg(require_real(rx, 1e-8, "X dispersion"), "X dispersion");
  q.dp = sqrt_nonneg(require_real(rp, 1e-8, "P dispersion"), "P dispersion");
  return q;
}

double poisson_weight(double abs_alpha_sq, int k) {
  if (abs_alpha_sq == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(abs_alpha_sq) - abs_alpha_sq - std::lgamma(k + 1.0));
}

int poisson_cutoff(double abs_alpha_sq, double tail_tol) {
  double cumulative = 0.0;
  for (int k = 0; k <= 400; ++k) {
    cumulative += poisson_weight(abs_alpha_sq, k);
    if (cumulative >= 1.0 - tail_tol) return k;
  }
  throw ParameterError("Poisson cutoff exceeds 400 for mean " + std::to_string(abs_alpha_sq));
}

SectorTable::SectorTable(const SystemParams& params, Complex alpha,
                         std::span<const double> t_grid, const OdeOptions& opts)
    : grid_(t_grid.begin(), t_grid.end()) {
  const int k_max = poisson_cutoff(std::norm(alpha));
  sectors_.reserve(static_cast<size_t>(k_max) + 1);
  weights_.reserve(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    sectors_.push_back(params.g0 == 0.0 ? quadratic_coefficients(params, k, t_grid, opts)
                                        : linquad_coefficients(params, k, t_grid, opts));
    weights_.push_back(poisson_weight(std::norm(alpha), k));
  }
}

SectorTable::SectorTable(const SystemParams& params, Complex alpha, const DriveAlphas& drive,
                         std::span<const double> t_grid, const OdeOptions& opts)
    : grid_(t_grid.begin(), t_grid.end()) {
  const int k_max = poisson_cutoff(std::norm(alpha));
  sectors_.reserve(static_cast<size_t>(k_max) + 1);
  weights_.reserve(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    auto n_mean = [&drive, k](double t) { return k + std::norm(drive.alpha1(t)); };
    sectors_.push_back(forced_interaction_coefficients(params, n_mean, t_grid, opts));
    weights_.push_back(poisson_weight(std::norm(alpha), k));
  }
}

double SectorTable::phonon_mean_at(Complex Gamma, size_t idx) const {
  double acc = 0.0;
  for (size_t k = 0; k < sectors_.size(); ++k)
    acc += weights_[k] * phonon_mean(heisenberg_coeffs(sectors_[k], idx), Gamma);
  return acc;
}

std::pair<double, double> SectorTable::quadrature_means_at(Complex Gamma, size_t idx) const {
  double x = 0.0, p = 0.0;
  for (size_t k = 0; k < sectors_.size(); ++k) {
    const Quadratures q = quadratures(heisenberg_coeffs(sectors_[k], idx), Gamma);
    x += weights_[k] * q.x_mean;
    p += weights_[k] * q.p_mean;
  }
  return {x, p};
}

std::pair<double, double> SectorTable::dispersions_at(Complex Gamma, size_t idx) const {
  double dx = 0.0, dp = 0.0;
  for (size_t k = 0; k < sectors_.size(); ++k) {
    const Quadratures q = quadratures(heisenberg_coeffs(sectors_[k], idx), Gamma);
    dx += weights_[k] * q.dx;
    dp += weights_[k] * q.dp;
  }
  return {dx, dp};
}

double SectorTable::mandel_at(Complex Gamma, size_t idx) const {
  double mean = 0.0, second = 0.0;
  for (size_t k = 0; k < sectors_.size(); ++k) {
    const HeisenbergCoeffs f = heisenberg_coeffs(sectors_[k], idx);
    const double m = phonon_mean(f, Gamma);
    mean += weights_[k] * m;
    second += weights_[k] * (phonon_variance(f, Gamma) + m * m);
  }
  if (mean <= 1e-12)
    throw ParameterError("Mandel Q undefined: phonon mean of the mixture vanishes");
  return (second - mean * mean) / mean;
}

namespace {

SectorTable table_for_single_time(const SystemParams& params, Complex alpha, double t) {
  if (t == 0.0) {
    const double grid[] = {0.0};
    return SectorTable(params, alpha, std::span<const double>(grid, 1));
  }
  const double grid[] = {0.0, t};
  return SectorTable(params, alpha, std::span<const double>(grid, 2));
}

}  // namespace

double phonon_mean_coherent_field(const SystemParams& params, Complex alpha, Complex Gamma,
                                  double t) {
  const SectorTable table = table_for_single_time(params, alpha, t);
  return table.phonon_mean_at(Gamma, t == 0.0 ? 0 : 1);
}

std::pair<double, double> dispersion_coherent_field(const SystemParams& params, Complex alpha,
                                                    Complex Gamma, double t) {
  const SectorTable table = table_for_single_time(params, alpha, t);
  return table.dispersions_at(Gamma, t == 0.0 ? 0 : 1);
}

std::string to_string(ObservableLabel label) {
  switch (label) {
    case ObservableLabel::phonon_mean: return "phonon_mean";
    case ObservableLabel::photon_mean: return "photon_mean";
    case ObservableLabel::x_mean: return "X_mean";
    case ObservableLabel::p_mean: return "P_mean";
    case ObservableLabel::dx: return "dX";
    case ObservableLabel::dp: return "dP";
    case ObservableLabel::mandel_q: return "mandel_Q";
    case ObservableLabel::uncertainty_product: return "uncertainty_product";
  }
  throw ParameterError("unhandled observable label");
}

std::string to_string(Provenance provenance) {
  return provenance == Provenance::analytic ? "analytic" : "oracle";
}

ObservableLabel label_from_string(const std::string& name) {
  for (ObservableLabel label :
       {ObservableLabel::phonon_mean, ObservableLabel::photon_mean, ObservableLabel::x_mean,
        ObservableLabel::p_mean, ObservableLabel::dx, ObservableLabel::dp,
        ObservableLabel::mandel_q, ObservableLabel::uncertainty_product}) {
    if (to_string(label) == name) return label;
  }
  throw ParameterError("unknown observable label: " + name);
}

}  // namespace optomech
