#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "golden.hpp"
#include "cli.hpp"
#include "slinky/bloch.hpp"
#include "slinky/dynamics.hpp"
#include "slinky/effective.hpp"

namespace slinky::cli {

using nlohmann::json;

namespace {

json check(const std::string& name, double value, double threshold) {
  return {{"name", name}, {"pass", value < threshold}, {"value", value}, {"threshold", threshold}};
}

double goldenDefect() {
  double worst = 0.0;
  for (const auto& l : golden::listings()) {
    for (double k : {0.0, std::numbers::pi / 3.0, std::numbers::pi}) {
      Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(l.n, l.n);
      for (const auto& e : l.upper) {
        expected(e.row, e.col) = std::sqrt(double(e.squared)) * std::polar(1.0, e.phase * k);
        expected(e.col, e.row) = std::conj(expected(e.row, e.col));
      }
      worst = std::max(worst, (blochMatrix(l.n, l.mu, k) - expected).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double amplitudeDefect() {
  const std::vector<std::vector<int>> squares = {{2, 2}, {3, 4, 3}, {4, 6, 6, 4}, {5, 8, 9, 8, 5}};
  double worst = 0.0;
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const auto a = slinkyAmplitudes(static_cast<int>(i) + 2);
    if (a.size() != squares[i].size()) return 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] * a[j] - squares[i][j]));
  }
  return worst;
}

double fullVersusEffective() {
  ModelParams p;
  p.U = p.V = 100.0;
  p.sites = 6;
  p.bosons = 3;
  const auto basis = enumerateFullBasis(p);
  const auto full = denseEigensolve(buildHamiltonian(p, basis));
  const double shift = 3.0 * p.U;
  std::vector<double> near(full.values.data(), full.values.data() + full.size());
  std::sort(near.begin(), near.end(),
            [&](double a, double b) { return std::abs(a - shift) < std::abs(b - shift); });
  near.resize(18);
  std::sort(near.begin(), near.end());

  const auto chain = withResonantShift(buildEffectiveChain(3, 6, Boundary::ring), p.U);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eff(denseMatrix(chain));
  double worst = 0.0;
  for (int i = 0; i < 18; ++i) worst = std::max(worst, std::abs(near[i] - eff.eigenvalues()(i)));
  return worst;
}

double isospectrality(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uk(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const double k = uk(rng);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(blochMatrix(n, 1, k), Eigen::EigenvaluesOnly);
      for (int mu = 2; mu <= n; ++mu) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(blochMatrix(n, mu, k), Eigen::EigenvaluesOnly);
        worst = std::max(worst, (s.eigenvalues() - ref.eigenvalues()).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double hermiticity() {
  ModelParams ring;
  ring.U = ring.V = 7.0;
  ring.sites = 6;
  ring.bosons = 3;
  double worst = buildHamiltonian(ring, enumerateFullBasis(ring)).hermiticityDefect();
  const auto open = chainParams(4, 3, 10, 9.0, 30.0);
  worst = std::max(worst, buildHamiltonian(open, enumerateTruncatedBasis(open, 2)).hermiticityDefect());
  return worst;
}

double zakGauge(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}}) {
    Eigen::VectorXcd d(n);
    for (int i = 0; i < n; ++i) d(i) = std::polar(1.0, phase(rng));
    const BlochFamily dressed(n, [n, mu, d](double k) {
      return Eigen::MatrixXcd(d.asDiagonal() * blochMatrix(n, mu, k) * d.conjugate().asDiagonal());
    });
    const auto a = bandStructure(BlochFamily::slinky(n, mu), 200);
    const auto b = bandStructure(dressed, 200);
    for (int band = 0; band < n; ++band)
      if (a.zak[band] && b.zak[band]) worst = std::max(worst, phaseDistance(*a.zak[band], *b.zak[band]));
  }
  return worst;
}

double chiralDefect() {
  double worst = 0.0;
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(denseMatrix(buildEffectiveChain(n, 20, Boundary::open, mu)),
                                                     Eigen::EigenvaluesOnly);
    const auto& e = s.eigenvalues();
    worst = std::max(worst, (e + e.reverse()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double truncationDefect() {
  double worst = 0.0;
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{4, 3}}) {
    const auto p = chainParams(n, mu, 6, 10.0, 30.0);
    const auto small = enumerateTruncatedBasis(p, 2);
    const auto full = enumerateFullBasis(p);
    const Eigen::MatrixXcd hs = buildHamiltonian(p, small).dense();
    const Eigen::MatrixXcd hf = buildHamiltonian(p, full).dense();
    for (Basis::Index i = 0; i < small.size(); ++i)
      for (Basis::Index j = 0; j < small.size(); ++j) {
        const auto fi = full.indexOf(small[i].occupations);
        const auto fj = full.indexOf(small[j].occupations);
        worst = std::max(worst, std::abs(hs(i, j) - hf(fi, fj)));
      }
  }
  return worst;
}

std::pair<double, double> unitarity() {
  const auto p = chainParams(3, 3, 9, 13.5, 30.0);
  const Basis basis = enumerateTruncatedBasis(p, 2);
  const auto h = buildHamiltonian(p, basis);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  psi(basis.indexOf(slinkyState(p.sites, 3, 1).occupations)) = 1.0;
  const auto trace = evolve(h, basis, psi, 20.0, 0.1);
  const double drift = trace.norm_drift.maxCoeff();
  const double number = (trace.distribution.rowwise().sum().array() - p.bosons).abs().maxCoeff();
  return {drift, number};
}

}  // namespace

json runValidation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  json out = json::array();
  out.push_back(check("golden_bloch_matrices", goldenDefect(), 1e-12));
  out.push_back(check("amplitude_law", amplitudeDefect(), 1e-12));
  out.push_back(check("full_vs_effective_ring", fullVersusEffective(), 0.05));
  out.push_back(check("isospectrality_across_mu", isospectrality(rng), 1e-10));
  out.push_back(check("hermiticity", hermiticity(), 1e-12));
  out.push_back(check("zak_gauge_invariance", zakGauge(rng), 1e-10));
  out.push_back(check("chiral_pairing", chiralDefect(), 1e-10));
  out.push_back(check("truncated_matches_full", truncationDefect(), 1e-12));
  const auto [drift, number] = unitarity();
  out.push_back(check("norm_drift", drift, 1e-8));
  out.push_back(check("number_conservation", number, 1e-6));
  return out;
}

}  // namespace slinky::cli
