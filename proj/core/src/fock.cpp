#include "optomech/fock.hpp"

#include <cmath>
#include <string>

#include "optomech/errors.hpp"
#include "optomech/warnings.hpp"

namespace optomech {

double DensityMatrix::purity() const {
  return (matrix * matrix).trace().real();
}

// ----- operator builders -----

FockOperator make_ladder(int dim) {
  if (dim < 2) {
    throw StructureError("ladder operator needs dim >= 2, got " + std::to_string(dim));
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    m(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return {dim, 1, std::move(m)};
}

FockOperator make_ladder_dagger(int dim) { return make_ladder(dim).adjoint(); }

FockOperator number_operator(int dim) {
  if (dim < 1) {
    throw StructureError("number operator needs dim >= 1");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    m(k, k) = static_cast<double>(k);
  }
  return {dim, 1, std::move(m)};
}

FockOperator identity_operator(int dim) {
  if (dim < 1) {
    throw StructureError("identity needs dim >= 1");
  }
  return {dim, 1, ComplexMatrix::Identity(dim, dim)};
}

// ----- state builders -----

StateVector number_state(int n, int dim) {
  if (dim < 1 || n < 0 || n >= dim) {
    throw StructureError("number state |" + std::to_string(n) + "> does not fit in dim " +
                         std::to_string(dim));
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(n) = 1.0;
  return {dim, 1, std::move(v)};
}

double coherent_tail_weight(Complex amplitude, int dim) {
  // 1 - cumulative Poisson(|a|^2) weight below dim, summed in log space.
  const double mu = std::norm(amplitude);
  if (mu == 0.0) return 0.0;
  double kept = 0.0;
  double log_term = -mu;  // log of e^{-mu} mu^0 / 0!
  for (int k = 0; k < dim; ++k) {
    kept += std::exp(log_term);
    log_term += std::log(mu) - std::log(static_cast<double>(k + 1));
  }
  return std::max(0.0, 1.0 - kept);
}

StateVector coherent_state(Complex amplitude, int dim) {
  if (dim < 1) {
    throw StructureError("coherent state needs dim >= 1");
  }
  const double tail = coherent_tail_weight(amplitude, dim);
  if (tail >= 1e-8) {
    warn("coherent state |alpha|=" + std::to_string(std::abs(amplitude)) +
         " truncated at dim " + std::to_string(dim) + ": neglected weight " +
         std::to_string(tail));
  }
  ComplexVector v(dim);
  v(0) = 1.0;
  for (int k = 1; k < dim; ++k) {
    v(k) = v(k - 1) * amplitude / std::sqrt(static_cast<double>(k));
  }
  v.normalize();
  return {dim, 1, std::move(v)};
}

// ----- composition -----

FockOperator tensor(const FockOperator& lhs, const FockOperator& rhs) {
  const int dl = lhs.dim();
  const int dr = rhs.dim();
  ComplexMatrix m(dl * dr, dl * dr);
  for (int i = 0; i < dl; ++i) {
    for (int j = 0; j < dl; ++j) {
      m.block(i * dr, j * dr, dr, dr) = lhs.matrix(i, j) * rhs.matrix;
    }
  }
  return {dl, dr, std::move(m)};
}

StateVector tensor(const StateVector& lhs, const StateVector& rhs) {
  const int dl = lhs.dim();
  const int dr = rhs.dim();
  ComplexVector v(dl * dr);
  for (int i = 0; i < dl; ++i) {
    v.segment(i * dr, dr) = lhs.amplitudes(i) * rhs.amplitudes;
  }
  return {dl, dr, std::move(v)};
}

// ----- reduction -----

DensityMatrix partial_trace(const StateVector& state, Keep keep) {
  if (state.single_mode() || state.dim_field < 2) {
    throw StructureError("partial trace needs a two-mode state");
  }
  const int df = state.dim_field;
  const int dm = state.dim_mech;
  const auto& a = state.amplitudes;
  if (keep == Keep::mech) {
    ComplexMatrix rho = ComplexMatrix::Zero(dm, dm);
    for (int f = 0; f < df; ++f) {
      rho.noalias() += a.segment(f * dm, dm) * a.segment(f * dm, dm).adjoint();
    }
    return {dm, std::move(rho)};
  }
  ComplexMatrix rho = ComplexMatrix::Zero(df, df);
  for (int i = 0; i < df; ++i) {
    for (int j = 0; j < df; ++j) {
      rho(i, j) = a.segment(i * dm, dm).dot(a.segment(j * dm, dm));
      // Eigen's dot conjugates the left argument; we want sum_m a_i,m a_j,m^*
      rho(i, j) = std::conj(rho(i, j));
    }
  }
  return {df, std::move(rho)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_field, int dim_mech,
                            Keep keep) {
  if (dim_field < 2 || dim_mech < 2) {
    throw StructureError("partial trace needs two non-trivial factors");
  }
  if (dim_field * dim_mech != rho.dim) {
    throw StructureError("factor dims " + std::to_string(dim_field) + "x" +
                         std::to_string(dim_mech) + " do not match rho dim " +
                         std::to_string(rho.dim));
  }
  if (keep == Keep::mech) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_mech, dim_mech);
    for (int f = 0; f < dim_field; ++f) {
      out += rho.matrix.block(f * dim_mech, f * dim_mech, dim_mech, dim_mech);
    }
    return {dim_mech, std::move(out)};
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_field, dim_field);
  for (int i = 0; i < dim_field; ++i) {
    for (int j = 0; j < dim_field; ++j) {
      out(i, j) = rho.matrix.block(i * dim_mech, j * dim_mech, dim_mech, dim_mech)
                      .trace();
    }
  }
  return {dim_field, std::move(out)};
}

// ----- expectation values -----

Complex expectation(const StateVector& state, const FockOperator& op) {
  if (state.dim() != op.dim()) {
    throw StructureError("state dim " + std::to_string(state.dim()) +
                         " vs operator dim " + std::to_string(op.dim()));
  }
  return state.amplitudes.dot(op.matrix * state.amplitudes);
}

Complex expectation(const DensityMatrix& rho, const FockOperator& op) {
  if (rho.dim != op.dim()) {
    throw StructureError("rho dim " + std::to_string(rho.dim) + " vs operator dim " +
                         std::to_string(op.dim()));
  }
  return (rho.matrix * op.matrix).trace();
}

}  // namespace optomech
