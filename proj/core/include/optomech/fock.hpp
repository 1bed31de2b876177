#pragma once

#include <Eigen/Dense>
#include <complex>

namespace optomech {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense operator on a truncated Fock space. Two-mode operators live on the
/// tensor product with the field factor leftmost: flat index
/// k = k_field * dim_mech + k_mech. Single-mode operators have dim_mech == 1.
struct FockOperator {
  int dim_field = 0;
  int dim_mech = 1;
  ComplexMatrix matrix;

  int dim() const { return dim_field * dim_mech; }
  bool single_mode() const { return dim_mech == 1; }

  FockOperator adjoint() const { return {dim_field, dim_mech, matrix.adjoint()}; }
};

/// Pure state on a truncated Fock space, same index convention as FockOperator.
/// Builders return unit-norm states.
struct StateVector {
  int dim_field = 0;
  int dim_mech = 1;
  ComplexVector amplitudes;

  int dim() const { return dim_field * dim_mech; }
  bool single_mode() const { return dim_mech == 1; }
  double norm() const { return amplitudes.norm(); }
};

/// Single-mode mixed state (what partial_trace produces).
struct DensityMatrix {
  int dim = 0;
  ComplexMatrix matrix;

  double trace_real() const { return matrix.trace().real(); }
  /// Tr[rho^2], equals 1 for pure states.
  double purity() const;
};

enum class Keep { field, mech };

// ----- operator builders (single-mode) -----

/// Annihilation operator: matrix[k-1, k] = sqrt(k). Requires dim >= 2.
FockOperator make_ladder(int dim);
/// Creation operator, adjoint of make_ladder.
FockOperator make_ladder_dagger(int dim);
/// Number operator diag(0, 1, ..., dim-1).
FockOperator number_operator(int dim);
FockOperator identity_operator(int dim);

// ----- state builders -----

/// Fock state |n> on a space of dimension dim (requires n < dim).
StateVector number_state(int n, int dim);

/// Truncated coherent state, renormalized to unit norm. Warns through the
/// warning sink when the neglected Poisson weight beyond dim-1 is >= 1e-8.
StateVector coherent_state(Complex amplitude, int dim);

/// Poisson weight sum_{k >= dim} e^{-|a|^2} |a|^{2k}/k! lost to truncation.
double coherent_tail_weight(Complex amplitude, int dim);

// ----- composition and reduction -----

/// Kronecker product, left factor slowest (field-major convention).
FockOperator tensor(const FockOperator& lhs, const FockOperator& rhs);
StateVector tensor(const StateVector& lhs, const StateVector& rhs);

/// Reduce a two-mode pure state to the kept mode. Throws StructureError for
/// single-mode input.
DensityMatrix partial_trace(const StateVector& state, Keep keep);
/// Same for a two-mode density matrix; the factor dims must be supplied since
/// DensityMatrix does not carry them. Requires dim_field * dim_mech == rho.dim
/// and both factors > 1.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_field, int dim_mech,
                            Keep keep);

// ----- expectation values -----

Complex expectation(const StateVector& state, const FockOperator& op);
Complex expectation(const DensityMatrix& rho, const FockOperator& op);

}  // namespace optomech
