#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "optomech/errors.hpp"
#include "optomech/ode.hpp"

using namespace optomech;

namespace {

const Complex kI{0.0, 1.0};

// x' = -i x, solution x(t) = x0 e^{-it}
void rotate_rhs(const CVec& x, CVec& dxdt, double) {
  dxdt[0] = -kI * x[0];
}

}  // namespace

TEST_CASE("adaptive integration reproduces the phase rotation") {
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.5 * k);

  std::vector<Complex> seen(times.size());
  size_t count = 0;
  integrate_at_times(rotate_rhs, {Complex{1.0, 0.0}},
                     times, [&](const CVec& x, double) { seen[count++] = x[0]; });

  REQUIRE(count == times.size());
  for (size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(seen[k] - std::exp(-kI * times[k])) < 1e-8);
  }
}

TEST_CASE("dense output hits interior sample times the stepper flew over") {
  // A tolerance this loose lets single steps span many sample points, so the
  // interpolant is what actually fills the grid.
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(0.05 * k);
  OdeOptions opts;
  opts.abs_tol = opts.rel_tol = 1e-6;

  std::vector<double> emitted;
  integrate_at_times(rotate_rhs, {Complex{1.0, 0.0}}, times,
                     [&](const CVec& x, double t) {
                       emitted.push_back(t);
                       CHECK(std::abs(x[0] - std::exp(-kI * t)) < 1e-4);
                     },
                     opts);
  REQUIRE(emitted.size() == times.size());
  for (size_t k = 0; k < times.size(); ++k) CHECK(emitted[k] == times[k]);
}

TEST_CASE("sample times must increase strictly") {
  std::vector<double> bad = {0.0, 1.0, 1.0, 2.0};
  CHECK_THROWS_AS(
      integrate_at_times(rotate_rhs, {Complex{1.0, 0.0}}, bad, nullptr),
      ParameterError);
}

TEST_CASE("non-finite states abort with a diagnostic") {
  auto poisoned = [](const CVec& x, CVec& dxdt, double t) {
    dxdt[0] = (t > 0.5) ? Complex{std::nan(""), 0.0} : -kI * x[0];
  };
  std::vector<double> times = {0.0, 2.0};
  CHECK_THROWS_AS(
      integrate_at_times(poisoned, {Complex{1.0, 0.0}}, times, nullptr),
      IntegrationError);
}

TEST_CASE("post-step hook can rewrite the live state and count steps") {
  std::vector<double> times = {0.0, 5.0, 10.0};
  int calls = 0;
  OdeOptions opts;
  opts.post_step = [&](CVec& x, double) {
    ++calls;
    const double n = std::abs(x[0]);
    x[0] /= n;  // harmless here: the flow already preserves the modulus
    return true;
  };
  Complex final_val;
  integrate_at_times(rotate_rhs, {Complex{1.0, 0.0}}, times,
                     [&](const CVec& x, double) { final_val = x[0]; }, opts);
  CHECK(calls > 0);
  CHECK(std::abs(final_val - std::exp(-kI * 10.0)) < 1e-7);
}

TEST_CASE("high-order stepper lands on every sample time with full accuracy") {
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.25 * k);
  OdeOptions opts;
  opts.stepper = StepperKind::rkf78;
  opts.abs_tol = opts.rel_tol = 1e-12;

  std::vector<double> emitted;
  integrate_at_times(rotate_rhs, {Complex{1.0, 0.0}}, times,
                     [&](const CVec& x, double t) {
                       emitted.push_back(t);
                       CHECK(std::abs(x[0] - std::exp(-kI * t)) < 1e-11);
                     },
                     opts);
  REQUIRE(emitted.size() == times.size());
  for (size_t k = 0; k < times.size(); ++k) CHECK(emitted[k] == times[k]);

  SUBCASE("post-step hook fires and the result survives it") {
    int calls = 0;
    OdeOptions hooked = opts;
    hooked.post_step = [&](CVec& x, double) {
      ++calls;
      x[0] /= std::abs(x[0]);
      return true;
    };
    Complex final_val;
    std::vector<double> two = {0.0, 10.0};
    integrate_at_times(rotate_rhs, {Complex{1.0, 0.0}}, two,
                       [&](const CVec& x, double) { final_val = x[0]; }, hooked);
    CHECK(calls > 0);
    CHECK(std::abs(final_val - std::exp(-kI * 10.0)) < 1e-10);
  }

  SUBCASE("non-finite states abort") {
    auto poisoned = [](const CVec& x, CVec& dxdt, double t) {
      dxdt[0] = (t > 0.5) ? Complex{std::nan(""), 0.0} : -kI * x[0];
    };
    std::vector<double> two = {0.0, 2.0};
    CHECK_THROWS_AS(integrate_at_times(poisoned, {Complex{1.0, 0.0}}, two, nullptr, opts),
                    IntegrationError);
  }
}

TEST_CASE("fixed-step RK4 shows fourth-order convergence") {
  auto run = [](double h) {
    CVec state = {Complex{1.0, 0.0}};
    integrate_fixed_rk4(rotate_rhs, state, 0.0, 1.0, h);
    return std::abs(state[0] - std::exp(-kI * 1.0));
  };
  const double coarse = run(0.05);
  const double fine = run(0.025);
  CHECK(fine < 1e-8);
  CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.25));

  CVec state = {Complex{1.0, 0.0}};
  CHECK_THROWS_AS(integrate_fixed_rk4(rotate_rhs, state, 0.0, 1.0, -0.1),
                  ParameterError);
}
