#include "slinky/bloch.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "slinky/effective.hpp"

namespace slinky {

namespace {
constexpr double kPi = std::numbers::pi;
}

Eigen::MatrixXcd blochMatrix(int n, int mu, double k) {
  if (n < 1) throw InvalidParams("n must be positive");
  const auto a = rotatedAmplitudes(n, mu);
  const std::complex<double> phase = std::polar(1.0, -k);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int v = 0; v + 1 < n; ++v) {
    h(v, v + 1) = a[static_cast<std::size_t>(v)];
    h(v + 1, v) = a[static_cast<std::size_t>(v)];
  }
  h(0, n - 1) += a.back() * phase;
  h(n - 1, 0) += a.back() * std::conj(phase);
  return h;
}

BlochFamily::BlochFamily(int bands, Evaluator evaluator, int mu)
    : bands_(bands), mu_(mu), evaluator_(std::move(evaluator)) {
  if (bands_ < 1) throw InvalidParams("need at least one band");
}

BlochFamily BlochFamily::slinky(int n, int mu) {
  if (mu < 1 || mu > n) throw InvalidMu("mu must lie in [1, n]");
  return BlochFamily(n, [n, mu](double k) { return blochMatrix(n, mu, k); }, mu);
}

bool BandStructure::isolated(int band) const {
  if (band > 0 && gapClosed(band - 1)) return false;
  if (band + 1 < bands() && gapClosed(band)) return false;
  return true;
}

BandStructure bandEnergies(const BlochFamily& family, int M, double kappa) {
  if (M < 8) throw InvalidParams("grid needs at least 8 momenta");
  const int nb = family.bands();
  BandStructure bs;
  bs.k.resize(M);
  bs.energies.resize(M, nb);
  bs.eigenvectors.reserve(static_cast<std::size_t>(M));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  for (int i = 0; i < M; ++i) {
    const double k = 2.0 * kPi * i / M;
    bs.k(i) = k;
    const Eigen::MatrixXcd h = family(k);
    if (h.rows() != nb || h.cols() != nb) throw InvalidParams("Bloch evaluator returned the wrong shape");
    solver.compute(-kappa * h);
    if (solver.info() != Eigen::Success) throw SolverFailure("Bloch diagonalization failed");
    bs.energies.row(i) = solver.eigenvalues().transpose();
    bs.eigenvectors.push_back(solver.eigenvectors());
  }
  bs.gaps.resize(std::max(nb - 1, 0));
  bs.direct_gaps.resize(std::max(nb - 1, 0));
  for (int g = 0; g + 1 < nb; ++g) {
    bs.gaps(g) = bs.energies.col(g + 1).minCoeff() - bs.energies.col(g).maxCoeff();
    bs.direct_gaps(g) = (bs.energies.col(g + 1) - bs.energies.col(g)).minCoeff();
  }
  bs.zak.assign(static_cast<std::size_t>(nb), std::nullopt);
  return bs;
}

BandStructure bandStructure(const BlochFamily& family, int M, double kappa) {
  BandStructure bs = bandEnergies(family, M, kappa);
  bool any = false;
  for (int b = 0; b < bs.bands(); ++b) {
    if (!bs.isolated(b)) continue;
    any = true;
    bs.zak[static_cast<std::size_t>(b)] = zakPhase(bs, b);
  }
  if (!any) throw BandTouching("no isolated band: adjacent bands touch on the grid");
  return bs;
}

double zakPhase(const BandStructure& bs, int band) {
  if (band < 0 || band >= bs.bands()) throw InvalidParams("band index out of range");
  if (!bs.isolated(band))
    throw BandTouching("band " + std::to_string(band) + " touches a neighbour; Zak phase undefined");
  const int M = bs.points();
  std::complex<double> loop = 1.0;
  for (int i = 0; i < M; ++i) {
    const auto& u = bs.eigenvectors[static_cast<std::size_t>(i)].col(band);
    const auto& v = bs.eigenvectors[static_cast<std::size_t>((i + 1) % M)].col(band);
    loop *= u.dot(v);
  }
  return normalizePhase(-std::arg(loop));
}

std::pair<double, double> gapEdges(const BandStructure& bs, int gap) {
  if (gap < 0 || gap + 1 >= bs.bands()) throw InvalidParams("gap index out of range");
  return {bs.energies.col(gap).maxCoeff(), bs.energies.col(gap + 1).minCoeff()};
}

double normalizePhase(double phase) {
  double p = std::remainder(phase, 2.0 * kPi);  // [-pi, pi]
  if (p <= -kPi + 1e-12) p = kPi;
  return p;
}

double phaseDistance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

bool isQuantized(double phase, double tol) {
  return phaseDistance(phase, 0.0) < tol || phaseDistance(phase, kPi) < tol;
}

}  // namespace slinky
