#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "slinky/errors.hpp"

namespace slinky {

/// Adjacent bands closer than this at any grid point are treated as touching.
inline constexpr double kBandTouchingTolerance = 1e-8;

/// n x n Bloch matrix of the slinky chain for unit-cell type mu. The (0, n-1)
/// element carries the wrapped inter-cell amplitude times exp(-ik). For n = 1
/// both wrapped couplings land on the diagonal.
Eigen::MatrixXcd blochMatrix(int n, int mu, double k);

/// k -> Hermitian matrix, periodic in 2 pi.
class BlochFamily {
 public:
  using Evaluator = std::function<Eigen::MatrixXcd(double)>;

  BlochFamily(int bands, Evaluator evaluator, int mu = 0);
  static BlochFamily slinky(int n, int mu);

  int bands() const { return bands_; }
  int mu() const { return mu_; }
  Eigen::MatrixXcd operator()(double k) const { return evaluator_(k); }

 private:
  int bands_;
  int mu_;
  Evaluator evaluator_;
};

struct BandStructure {
  Eigen::VectorXd k;                            // M momenta 2 pi m / M
  Eigen::MatrixXd energies;                     // M x bands, ascending per row
  std::vector<Eigen::MatrixXcd> eigenvectors;   // per k; column b is band b
  Eigen::VectorXd gaps;                         // min_k E_{b+1} - max_k E_b
  Eigen::VectorXd direct_gaps;                  // min_k (E_{b+1} - E_b)
  std::vector<std::optional<double>> zak;       // empty for non-isolated bands

  int bands() const { return static_cast<int>(energies.cols()); }
  int points() const { return static_cast<int>(energies.rows()); }
  bool gapClosed(int gap) const { return direct_gaps(gap) < kBandTouchingTolerance; }
  bool isolated(int band) const;
};

/// Diagonalizes -kappa h(k) on M uniform momenta. Throws BandTouching when no
/// band is separated from its neighbours; individual touching bands are
/// flagged and left without a Zak phase.
BandStructure bandStructure(const BlochFamily& family, int M, double kappa = 1.0);

/// Same diagonalization without the touching check; used where only the
/// energies matter.
BandStructure bandEnergies(const BlochFamily& family, int M, double kappa = 1.0);

/// Discrete Wilson loop gamma = -Im ln prod_i <u_i|u_{i+1}>, |u_M> = |u_0>,
/// reported in (-pi, pi]. Throws BandTouching for a non-isolated band.
double zakPhase(const BandStructure& bands, int band);

/// (max_k E_gap, min_k E_{gap+1}); the gap is open iff first < second.
std::pair<double, double> gapEdges(const BandStructure& bands, int gap);

/// Maps into (-pi, pi], sending -pi to pi.
double normalizePhase(double phase);
/// Distance on the circle.
double phaseDistance(double a, double b);
/// Within tol of 0 or pi.
bool isQuantized(double phase, double tol = 1e-2);

}  // namespace slinky
