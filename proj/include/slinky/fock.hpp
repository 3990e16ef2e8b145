#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slinky/errors.hpp"

namespace slinky {

enum class Boundary { ring, open };

std::string_view toString(Boundary b);
Boundary parseBoundary(std::string_view s);

/// Extended Bose-Hubbard chain in a fixed-number sector.
///
/// Cutoffs, when present, add W * prod_{l=0..cutoff} (n_j - l) on the first
/// (left) or last (right) site, which penalises occupations above the cutoff.
struct ModelParams {
  double kappa = 1.0;
  double U = 0.0;
  double V = 0.0;
  double W = 0.0;
  int sites = 2;
  int bosons = 1;
  Boundary boundary = Boundary::ring;
  std::optional<int> left_cutoff;
  std::optional<int> right_cutoff;

  /// U == V exactly.
  bool resonant() const { return U == V; }
  /// Throws InvalidParams.
  void validate() const;
};

/// Impurity cutoffs realizing the open effective chain with unit-cell type mu.
struct ImpurityPattern {
  std::optional<int> left;
  std::optional<int> right;
};

ImpurityPattern chainImpurities(int n, int mu);

/// Number of effective unit cells retained by the impurity-terminated chain.
int chainCells(int sites, int mu);

/// Open resonant chain (U = V) with the impurity pattern of (n, mu).
ModelParams chainParams(int n, int mu, int sites, double U, double W, double kappa = 1.0);

/// Soft checks on the parameter regime; empty when nothing to report.
std::vector<std::string> modelWarnings(const ModelParams& p);

struct FockState {
  std::vector<int> occupations;

  int total() const;
  auto operator<=>(const FockState&) const = default;
};

struct OccupationHash {
  std::size_t operator()(const std::vector<int>& occ) const noexcept;
};

/// Ordered set of Fock states with reverse lookup. States are kept in
/// descending lexicographic order of their occupation vectors.
class Basis {
 public:
  using Index = Eigen::Index;

  Basis(int sites, std::vector<FockState> states);

  Index size() const { return static_cast<Index>(states_.size()); }
  int sites() const { return sites_; }
  int bosons() const { return bosons_; }

  const FockState& operator[](Index i) const { return states_[static_cast<std::size_t>(i)]; }
  std::optional<Index> find(const std::vector<int>& occupations) const;
  Index indexOf(const std::vector<int>& occupations) const;

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  int sites_;
  int bosons_ = 0;
  std::vector<FockState> states_;
  std::unordered_map<std::vector<int>, Index, OccupationHash> index_;
};

struct BasisLimits {
  std::size_t max_nonzeros = 20'000'000;
};

/// Nearest-neighbour links of the lattice as 0-based (j, j+1) pairs. A ring
/// of two sites has a single link.
std::vector<std::pair<int, int>> latticeLinks(int sites, Boundary boundary);

/// Slinky state with 0-based label `ell`: n - lambda bosons on site ell / n and
/// lambda on the next site, lambda = ell % n.
FockState slinkyState(int sites, int n, int ell);

/// Slinky manifold ordered by label; nN states on a ring of N > 2 sites,
/// (N-1)n + 1 on an open chain.
std::vector<FockState> slinkyStates(const ModelParams& p);

Basis enumerateFullBasis(const ModelParams& p, const BasisLimits& limits = {});

/// Slinky manifold closed under at most `depth` single-boson hops.
Basis enumerateTruncatedBasis(const ModelParams& p, int depth = 2,
                              const BasisLimits& limits = {});

class SparseHermitianOperator {
 public:
  using Scalar = std::complex<double>;
  using Matrix = Eigen::SparseMatrix<Scalar>;
  using Index = Eigen::Index;

  explicit SparseHermitianOperator(Matrix m);

  Index dimension() const { return matrix_.rows(); }
  Index nonZeros() const { return matrix_.nonZeros(); }
  const Matrix& matrix() const { return matrix_; }
  Scalar entry(Index i, Index j) const { return matrix_.coeff(i, j); }

  /// max |A - A^dagger|
  double hermiticityDefect() const;
  bool isReal() const;
  Eigen::SparseMatrix<double> realPart() const { return matrix_.real(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }

  template <typename Derived>
  Eigen::VectorXcd operator*(const Eigen::MatrixBase<Derived>& v) const {
    return matrix_ * v.template cast<Scalar>();
  }

 private:
  Matrix matrix_;
};

/// Impurity energy W * prod_{l=0..cutoff}(occupation - l), evaluated exactly.
double impurityEnergy(double W, int cutoff, int occupation);

/// Diagonal part of H plus impurities for one configuration.
double diagonalEnergy(const ModelParams& p, const std::vector<int>& occupations);

SparseHermitianOperator buildHamiltonian(const ModelParams& p, const Basis& basis,
                                         const BasisLimits& limits = {});

namespace detail {
void requireNormalized(double norm);
}

/// <psi| n_site |psi> with a 0-based site index.
template <typename Derived>
double numberExpectation(const Basis& basis, const Eigen::MatrixBase<Derived>& state, int site) {
  if (state.size() != basis.size()) throw InvalidParams("state size does not match basis");
  if (site < 0 || site >= basis.sites()) throw InvalidParams("site out of range");
  detail::requireNormalized(state.norm());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i)
    acc += std::norm(std::complex<double>(state(i))) * basis[i].occupations[site];
  return acc;
}

/// <psi| n_j + n_{j+1} |psi> for the 0-based bond j (wrapping on the last site).
template <typename Derived>
double dimerNumberExpectation(const Basis& basis, const Eigen::MatrixBase<Derived>& state,
                              int bond) {
  return numberExpectation(basis, state, bond) +
         numberExpectation(basis, state, (bond + 1) % basis.sites());
}

/// All site occupations at once; length = basis.sites().
template <typename Derived>
Eigen::VectorXd siteOccupations(const Basis& basis, const Eigen::MatrixBase<Derived>& state) {
  if (state.size() != basis.size()) throw InvalidParams("state size does not match basis");
  detail::requireNormalized(state.norm());
  Eigen::VectorXd profile = Eigen::VectorXd::Zero(basis.sites());
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const double w = std::norm(std::complex<double>(state(i)));
    const auto& occ = basis[i].occupations;
    for (int j = 0; j < basis.sites(); ++j) profile(j) += w * occ[j];
  }
  return profile;
}

}  // namespace slinky
