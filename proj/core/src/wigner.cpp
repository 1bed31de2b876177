#include "optomech/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "optomech/errors.hpp"
#include "optomech/warnings.hpp"

namespace optomech {

std::vector<double> uniform_axis(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) throw ParameterError("axis needs count >= 2 and hi > lo");
  std::vector<double> axis(static_cast<size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int k = 0; k < count; ++k) axis[static_cast<size_t>(k)] = lo + k * step;
  return axis;
}

namespace {

void check_uniform(std::span<const double> axis, const char* name) {
  if (axis.size() < 2) throw ParameterError(std::string(name) + " axis needs >= 2 points");
  const double step = axis[1] - axis[0];
  if (!(step > 0.0)) throw ParameterError(std::string(name) + " axis must increase");
  for (size_t k = 2; k < axis.size(); ++k)
    if (std::abs((axis[k] - axis[k - 1]) - step) > 1e-9 * std::abs(step))
      throw ParameterError(std::string(name) + " axis must be uniform");
}

/// √(j! / (j+k)!) for j = 0..rows-1, computed in log space.
std::vector<double> factorial_ratios(int k, int rows) {
  std::vector<double> out(static_cast<size_t>(rows));
  for (int j = 0; j < rows; ++j)
    out[static_cast<size_t>(j)] =
        std::exp(0.5 * (std::lgamma(j + 1.0) - std::lgamma(j + k + 1.0)));
  return out;
}

/// One Wigner value via W = (1/π) Σ_{m,n} ρ_{mn} (-1)^m <n|D(γ)|m>.
/// Writing n = m+k and using hermiticity, the k>0 shells contribute twice
/// their real part, so only the upper diagonals of ρ are visited.
double wigner_point(const ComplexMatrix& rho, Complex gamma,
                    const std::vector<std::vector<double>>& ratios) {
  const int dim = static_cast<int>(rho.rows());
  const double z = std::norm(gamma);
  const double damp = std::exp(-0.5 * z);

  // diagonal shell: Σ_m ρ_mm (-1)^m L_m(z)
  double diag = 0.0;
  {
    double lprev = 0.0, lcur = 1.0;  // L_{-1}, L_0
    double sign = 1.0;
    for (int m = 0; m < dim; ++m) {
      diag += sign * rho(m, m).real() * lcur;
      const double lnext = ((2.0 * m + 1.0 - z) * lcur - m * lprev) / (m + 1.0);
      lprev = lcur;
      lcur = lnext;
      sign = -sign;
    }
  }

  Complex off{0.0, 0.0};
  Complex gamma_pow = gamma;
  for (int k = 1; k < dim; ++k, gamma_pow *= gamma) {
    const int rows = dim - k;
    const std::vector<double>& fac = ratios[static_cast<size_t>(k)];
    Complex shell{0.0, 0.0};
    double lprev = 0.0, lcur = 1.0;  // L_j^{(k)}, upward in j
    double sign = 1.0;
    for (int j = 0; j < rows; ++j) {
      shell += sign * rho(j, j + k) * fac[static_cast<size_t>(j)] * lcur;
      const double lnext = ((2.0 * j + 1.0 + k - z) * lcur - (j + k) * lprev) / (j + 1.0);
      lprev = lcur;
      lcur = lnext;
      sign = -sign;
    }
    off += gamma_pow * shell;
  }

  return damp * (diag + 2.0 * off.real()) / std::numbers::pi;
}

}  // namespace

WignerGrid wigner(const DensityMatrix& rho, std::span<const double> x_axis,
                  std::span<const double> p_axis) {
  check_uniform(x_axis, "x");
  check_uniform(p_axis, "p");
  const int dim = rho.dim;
  std::vector<std::vector<double>> ratios(static_cast<size_t>(dim));
  for (int k = 1; k < dim; ++k) ratios[static_cast<size_t>(k)] = factorial_ratios(k, dim - k);

  WignerGrid grid;
  grid.x_axis.assign(x_axis.begin(), x_axis.end());
  grid.p_axis.assign(p_axis.begin(), p_axis.end());
  grid.cell_area = (x_axis[1] - x_axis[0]) * (p_axis[1] - p_axis[0]);
  grid.values.resize(static_cast<Eigen::Index>(x_axis.size()),
                     static_cast<Eigen::Index>(p_axis.size()));

  constexpr double sqrt2 = 1.41421356237309504880;
  for (size_t i = 0; i < x_axis.size(); ++i)
    for (size_t j = 0; j < p_axis.size(); ++j) {
      const Complex gamma = sqrt2 * Complex{x_axis[i], p_axis[j]};
      grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          wigner_point(rho.matrix, gamma, ratios);
    }

  const double target = rho.trace_real();
  if (std::abs(grid.integral() - target) > 2e-2)
    warn("Wigner grid integral " + std::to_string(grid.integral()) +
         " misses the state trace " + std::to_string(target) +
         "; enlarge or refine the grid");
  return grid;
}

std::vector<double> position_density(const DensityMatrix& rho, std::span<const double> x_axis) {
  const int dim = rho.dim;
  std::vector<double> density(x_axis.size(), 0.0);
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  std::vector<double> phi(static_cast<size_t>(dim));
  for (size_t ix = 0; ix < x_axis.size(); ++ix) {
    const double x = x_axis[ix];
    phi[0] = norm0 * std::exp(-0.5 * x * x);
    if (dim > 1) phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int n = 1; n + 1 < dim; ++n)
      phi[static_cast<size_t>(n) + 1] =
          std::sqrt(2.0 / (n + 1.0)) * x * phi[static_cast<size_t>(n)] -
          std::sqrt(n / (n + 1.0)) * phi[static_cast<size_t>(n) - 1];
    double acc = 0.0;
    for (int m = 0; m < dim; ++m) {
      acc += rho.matrix(m, m).real() * phi[static_cast<size_t>(m)] * phi[static_cast<size_t>(m)];
      for (int n = m + 1; n < dim; ++n)
        acc += 2.0 * rho.matrix(m, n).real() * phi[static_cast<size_t>(m)] *
               phi[static_cast<size_t>(n)];
    }
    density[ix] = acc;
  }
  return density;
}

}  // namespace optomech
