#pragma once

#include <Eigen/Dense>

#include <optional>

#include "slinky/fock.hpp"

namespace slinky {

/// Eigenpairs in ascending order; vectors are unit-norm columns.
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;

  Eigen::Index size() const { return values.size(); }
};

struct EigenOptions {
  Eigen::Index dense_limit = 4000;
  /// Target energy of the iterative path.
  std::optional<double> shift;
  /// Eigenpairs nearest `shift` wanted on the iterative path.
  Eigen::Index count = 0;
  double tolerance = 1e-9;
  bool force_iterative = false;
};

/// Dense diagonalization up to `dense_limit`, shift-invert Lanczos above it.
Spectrum eigensolve(const SparseHermitianOperator& h, const EigenOptions& options = {});

Spectrum denseEigensolve(const SparseHermitianOperator& h);

/// `count` eigenpairs nearest `shift`, via Lanczos on (H - shift)^-1 with
/// full reorthogonalization. Throws SolverFailure when residuals do not
/// reach `tolerance` (relative to max(1, |E|)).
Spectrum shiftInvertEigensolve(const SparseHermitianOperator& h, double shift, Eigen::Index count,
                               double tolerance = 1e-9);

/// exp(-i H t) psi by short Lanczos steps; each step is accepted once the
/// a-posteriori error estimate is below `tolerance`.
Eigen::VectorXcd krylovPropagate(const SparseHermitianOperator& h, const Eigen::VectorXcd& psi,
                                 double t, double tolerance = 1e-10, int max_krylov = 40);

}  // namespace slinky
