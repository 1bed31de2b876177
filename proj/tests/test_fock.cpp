#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "doctest.h"
#include "optomech/errors.hpp"
#include "optomech/fock.hpp"
#include "optomech/warnings.hpp"

using namespace optomech;

TEST_CASE("ladder operator entries follow the sqrt rule") {
  const FockOperator a2 = make_ladder(2);
  CHECK(a2.matrix(0, 1) == Complex{1.0, 0.0});
  CHECK(a2.matrix(0, 0) == Complex{0.0, 0.0});
  CHECK(a2.matrix(1, 0) == Complex{0.0, 0.0});
  CHECK(a2.matrix(1, 1) == Complex{0.0, 0.0});

  const FockOperator a3 = make_ladder(3);
  CHECK(a3.matrix(0, 1).real() == doctest::Approx(1.0));
  CHECK(a3.matrix(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a3.matrix(2, 1) == Complex{0.0, 0.0});

  CHECK_THROWS_AS(make_ladder(1), StructureError);
}

TEST_CASE("ladder commutator is identity except the truncation corner") {
  const FockOperator a = make_ladder(8);
  const ComplexMatrix comm =
      a.matrix * a.adjoint().matrix - a.adjoint().matrix * a.matrix;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Complex expected = (i == j) ? (i == 7 ? Complex{-7.0, 0.0} : Complex{1.0, 0.0})
                                        : Complex{0.0, 0.0};
      CHECK(std::abs(comm(i, j) - expected) < 1e-12);
    }
}

TEST_CASE("number operator and hermiticity of builders") {
  const FockOperator n = number_operator(6);
  for (int k = 0; k < 6; ++k) CHECK(n.matrix(k, k).real() == doctest::Approx(double(k)));
  CHECK((n.matrix - n.adjoint().matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coherent state moments and tail warning") {
  const StateVector psi = coherent_state(Complex{2.0, 0.0}, 32);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const FockOperator n = number_operator(32);
  CHECK(expectation(psi, n).real() == doctest::Approx(4.0).epsilon(1e-6));

  SUBCASE("vacuum") {
    const StateVector vac = coherent_state(Complex{0.0, 0.0}, 4);
    CHECK(std::abs(vac.amplitudes(0) - Complex{1.0, 0.0}) < 1e-15);
  }

  SUBCASE("truncating too hard warns") {
    std::vector<std::string> captured;
    auto previous = set_warning_sink([&](const std::string& msg) { captured.push_back(msg); });
    (void)coherent_state(Complex{2.0, 0.0}, 6);
    set_warning_sink(previous);
    REQUIRE(captured.size() == 1);
    CHECK(captured[0].find("neglected weight") != std::string::npos);
  }
}

TEST_CASE("tensor products use the field-major convention") {
  const FockOperator i2 = identity_operator(2);
  const FockOperator i3 = identity_operator(3);
  const FockOperator i6 = tensor(i2, i3);
  CHECK(i6.dim() == 6);
  CHECK((i6.matrix - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);

  const FockOperator nf = tensor(number_operator(3), identity_operator(2));
  const double expected[] = {0.0, 0.0, 1.0, 1.0, 2.0, 2.0};
  for (int k = 0; k < 6; ++k) CHECK(nf.matrix(k, k).real() == doctest::Approx(expected[k]));

  SUBCASE("trace is multiplicative") {
    ComplexMatrix ma = ComplexMatrix::Random(3, 3);
    ma = (ma + ma.adjoint().eval()) / 2.0;
    ComplexMatrix mb = ComplexMatrix::Random(4, 4);
    mb = (mb + mb.adjoint().eval()) / 2.0;
    const FockOperator A{3, 1, ma}, B{4, 1, mb};
    const Complex lhs = tensor(A, B).matrix.trace();
    const Complex rhs = ma.trace() * mb.trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }

  SUBCASE("associative up to exact equality") {
    const FockOperator A = number_operator(2), B = make_ladder(3), C = identity_operator(2);
    const ComplexMatrix lhs = tensor(tensor(A, B), C).matrix;
    const ComplexMatrix rhs = tensor(A, tensor(B, C)).matrix;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("partial trace of product and entangled states") {
  const StateVector product = tensor(number_state(4, 6), coherent_state({2.0, 0.0}, 32));
  const DensityMatrix mech = partial_trace(product, Keep::mech);
  CHECK(mech.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mech.purity() == doctest::Approx(1.0).epsilon(1e-10));
  const DensityMatrix field = partial_trace(product, Keep::field);
  CHECK(field.purity() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(field.matrix(4, 4).real() == doctest::Approx(1.0).epsilon(1e-10));

  SUBCASE("maximally entangled two-qubit state reduces to the flat mixture") {
    StateVector bell{2, 2, ComplexVector::Zero(4)};
    bell.amplitudes(0) = 1.0 / std::sqrt(2.0);  // |0,0>
    bell.amplitudes(3) = 1.0 / std::sqrt(2.0);  // |1,1>
    const DensityMatrix r = partial_trace(bell, Keep::field);
    CHECK(r.matrix(0, 0).real() == doctest::Approx(0.5));
    CHECK(r.matrix(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(r.matrix(0, 1)) < 1e-14);
  }

  SUBCASE("random normalized state keeps unit trace") {
    ComplexVector amps = ComplexVector::Random(12);
    amps /= amps.norm();
    const StateVector psi{3, 4, amps};
    CHECK(partial_trace(psi, Keep::mech).trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("single-mode input is refused") {
    const StateVector single = coherent_state({1.0, 0.0}, 24);
    CHECK_THROWS_AS(partial_trace(single, Keep::field), StructureError);
  }

  SUBCASE("reducing a density matrix again is the identity in effect") {
    const DensityMatrix r = partial_trace(product, Keep::mech);
    // embed as rho ⊗ |0><0| on a 2-level ancilla, trace the ancilla out
    FockOperator lift{r.dim, 1, r.matrix};
    ComplexMatrix vac = ComplexMatrix::Zero(2, 2);
    vac(0, 0) = 1.0;
    const FockOperator emb = tensor(lift, FockOperator{2, 1, vac});
    const DensityMatrix back = partial_trace(DensityMatrix{64, emb.matrix}, r.dim, 2,
                                             Keep::field);
    CHECK((back.matrix - r.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("expectation values on states and density matrices") {
  const StateVector vac = coherent_state({0.0, 0.0}, 8);
  CHECK(std::abs(expectation(vac, number_operator(8))) < 1e-14);

  const StateVector psi = tensor(number_state(4, 6), coherent_state({2.0, 0.0}, 32));
  const FockOperator n_field = tensor(number_operator(6), identity_operator(32));
  CHECK(expectation(psi, n_field).real() == doctest::Approx(4.0));
  const FockOperator n_mech = tensor(identity_operator(6), number_operator(32));
  CHECK(expectation(psi, n_mech).real() == doctest::Approx(4.0).epsilon(1e-6));

  const DensityMatrix rho = partial_trace(psi, Keep::mech);
  CHECK(expectation(rho, number_operator(32)).real() == doctest::Approx(4.0).epsilon(1e-6));

  CHECK_THROWS_AS(expectation(vac, number_operator(9)), StructureError);
}
