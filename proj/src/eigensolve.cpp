#include "slinky/eigensolve.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace slinky {

Spectrum denseEigensolve(const SparseHermitianOperator& h) {
  Spectrum out;
  if (h.isReal()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(h.realPart()));
    if (solver.info() != Eigen::Success) throw SolverFailure("dense diagonalization failed");
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
    if (solver.info() != Eigen::Success) throw SolverFailure("dense diagonalization failed");
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

namespace {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Vec<Scalar> startVector(Eigen::Index n) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Vec<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<Scalar, double>)
      v(i) = gauss(rng);
    else
      v(i) = Scalar(gauss(rng), gauss(rng));
  }
  return v.normalized();
}

template <typename Scalar>
Spectrum shiftInvertImpl(const Eigen::SparseMatrix<Scalar>& H, double shift, Eigen::Index count,
                         double tolerance) {
  using Sparse = Eigen::SparseMatrix<Scalar>;
  const Eigen::Index n = H.rows();
  Sparse identity(n, n);
  identity.setIdentity();
  Sparse shifted = H - Scalar(shift) * identity;
  Eigen::SparseLU<Sparse, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) throw SolverFailure("factorization of H - shift failed");

  Eigen::Index m = std::min(n, std::max<Eigen::Index>(2 * count + 20, count + 60));
  for (;;) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> V(n, m);
    std::vector<double> alpha, beta;
    V.col(0) = startVector<Scalar>(n);
    Eigen::Index steps = m;
    for (Eigen::Index j = 0; j < m; ++j) {
      Vec<Scalar> w = lu.solve(V.col(j));
      if (lu.info() != Eigen::Success) throw SolverFailure("shift-invert solve failed");
      alpha.push_back(std::real(V.col(j).dot(w)));
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        Vec<Scalar> coeffs = V.leftCols(j + 1).adjoint() * w;
        w -= V.leftCols(j + 1) * coeffs;
      }
      const double b = w.norm();
      if (j + 1 == m) break;
      if (b < 1e-12) {
        steps = j + 1;
        break;
      }
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
    for (Eigen::Index j = 0; j < steps; ++j) {
      T(j, j) = alpha[static_cast<std::size_t>(j)];
      if (j + 1 < steps) T(j, j + 1) = T(j + 1, j) = beta[static_cast<std::size_t>(j)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(T);
    const Eigen::VectorXd theta = tri.eigenvalues();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(steps));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return std::abs(theta(a)) > std::abs(theta(b)); });
    const Eigen::Index want = std::min(count, steps);

    std::vector<std::pair<double, Vec<Scalar>>> pairs;
    bool converged = true;
    for (Eigen::Index r = 0; r < want; ++r) {
      const Eigen::Index c = order[static_cast<std::size_t>(r)];
      const double lambda = shift + 1.0 / theta(c);
      Vec<Scalar> x = V.leftCols(steps) * tri.eigenvectors().col(c).template cast<Scalar>();
      x.normalize();
      const double residual = (H * x - Scalar(lambda) * x).norm();
      if (residual > tolerance * std::max(1.0, std::abs(lambda))) converged = false;
      pairs.emplace_back(lambda, std::move(x));
    }
    if (converged || steps < m || m == n) {
      if (!converged) throw SolverFailure("shift-invert Lanczos did not converge");
      std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      Spectrum out;
      out.values.resize(want);
      out.vectors.resize(n, want);
      for (Eigen::Index r = 0; r < want; ++r) {
        out.values(r) = pairs[static_cast<std::size_t>(r)].first;
        out.vectors.col(r) = pairs[static_cast<std::size_t>(r)].second.template cast<std::complex<double>>();
      }
      return out;
    }
    m = std::min(n, 2 * m);
  }
}

}  // namespace

Spectrum shiftInvertEigensolve(const SparseHermitianOperator& h, double shift, Eigen::Index count,
                               double tolerance) {
  if (count < 1) throw InvalidParams("need at least one eigenpair");
  if (h.isReal()) return shiftInvertImpl<double>(h.realPart(), shift, count, tolerance);
  return shiftInvertImpl<std::complex<double>>(h.matrix(), shift, count, tolerance);
}

Spectrum eigensolve(const SparseHermitianOperator& h, const EigenOptions& options) {
  if (!options.force_iterative && h.dimension() <= options.dense_limit) return denseEigensolve(h);
  if (!options.shift)
    throw SolverFailure("dimension " + std::to_string(h.dimension()) +
                        " needs the iterative solver, but no target shift was given");
  const Eigen::Index count = options.count > 0 ? options.count : std::min<Eigen::Index>(h.dimension(), 100);
  return shiftInvertEigensolve(h, *options.shift, count, options.tolerance);
}

Eigen::VectorXcd krylovPropagate(const SparseHermitianOperator& h, const Eigen::VectorXcd& psi,
                                 double t, double tolerance, int max_krylov) {
  using cd = std::complex<double>;
  const auto& H = h.matrix();
  const Eigen::Index n = h.dimension();
  const int kmax = static_cast<int>(std::min<Eigen::Index>(max_krylov, n));
  Eigen::VectorXcd state = psi;
  double remaining = t;
  double step = t;
  int halvings = 0;

  while (std::abs(remaining) > 0.0) {
    if (std::abs(step) > std::abs(remaining)) step = remaining;
    const double norm = state.norm();
    Eigen::MatrixXcd V(n, kmax);
    V.col(0) = state / norm;
    std::vector<double> alpha, beta;
    bool accepted = false;
    Eigen::VectorXcd y;

    for (int j = 0; j < kmax; ++j) {
      Eigen::VectorXcd w = H * V.col(j);
      alpha.push_back(std::real(V.col(j).dot(w)));
      for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
      const double b = w.norm();

      const int d = j + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
      for (int i = 0; i < d; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < d) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(T);
      Eigen::VectorXcd phases(d);
      for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, -tri.eigenvalues()(i) * step);
      const Eigen::MatrixXcd Q = tri.eigenvectors().cast<cd>();
      y = Q * phases.cwiseProduct(Q.row(0).adjoint());
      // Exact invariant subspace, or last-coefficient error estimate.
      if (b < 1e-14 || b * std::abs(y(d - 1)) < tolerance || d == n) {
        state = norm * (V.leftCols(d) * y);
        accepted = true;
        break;
      }
      if (j + 1 == kmax) break;
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    if (!accepted) {
      if (++halvings > 60) throw SolverFailure("Krylov propagation failed to converge");
      step *= 0.5;
      continue;
    }
    remaining -= step;
  }
  return state;
}

}  // namespace slinky
