#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "slinky/diagnostics.hpp"

using namespace slinky;

namespace {

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("in-gap states per gap") {
  auto counts = [](int n, int mu) {
    return openChainSpectrum(buildEffectiveChain(n, 40, Boundary::open, mu)).inGapCounts();
  };
  CHECK(counts(3, 3) == std::vector<int>{2, 2});
  CHECK(counts(4, 3) == std::vector<int>{1, 0, 1});
  CHECK(counts(2, 1) == std::vector<int>{0});
  CHECK(counts(3, 1) == std::vector<int>{0, 0});
  CHECK(openChainSpectrum(buildEffectiveChain(1, 40, Boundary::open)).gaps.empty());
}

TEST_CASE("report agrees with a direct diagonalization") {
  const auto chain = withResonantShift(buildEffectiveChain(3, 12, Boundary::open, 3), 4.0);
  const auto r = openChainSpectrum(chain, 1.0, 3);
  Eigen::MatrixXd ref = oracle::slinkyChain(3, 36, false, 2);
  ref.diagonal().array() += 12.0;
  const Eigen::VectorXd e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ref).eigenvalues();
  CHECK((r.energies - e).cwiseAbs().maxCoeff() < 1e-10);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const auto v = r.states.col(i);
    CHECK(r.edge_weight(i) == doctest::Approx(v.head(9).squaredNorm() + v.tail(9).squaredNorm()));
  }
}

TEST_CASE("edge pairs of the palindromic chains") {
  const auto r = openChainSpectrum(buildEffectiveChain(3, 40, Boundary::open, 3));
  const auto sel = selectEdgeStates(r, 0.5);
  CHECK(sel.indices.size() == 4);
  CHECK(sel.pairs.size() == 2);
  for (auto i : sel.indices) CHECK(r.edge_weight(i) > 0.9);

  const auto five = openChainSpectrum(buildEffectiveChain(5, 40, Boundary::open, 4));
  const auto s5 = selectEdgeStates(five, 0.5);
  CHECK(s5.pairs.size() == 2);
}

TEST_CASE("no edge states without gaps") {
  const auto r = openChainSpectrum(buildEffectiveChain(2, 40, Boundary::open, 2));
  CHECK_THROWS_AS(selectEdgeStates(r, 0.5), NoEdgeStates);
  const auto three = openChainSpectrum(buildEffectiveChain(3, 40, Boundary::open, 3));
  CHECK_THROWS_AS(selectEdgeStates(three, 1.0 + 1e-9), NoEdgeStates);
}

TEST_CASE("chiral pairing for odd n") {
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}, std::pair{3, 1}, std::pair{5, 2}}) {
    const auto e = openChainSpectrum(buildEffectiveChain(n, 25, Boundary::open, mu)).energies;
    CHECK((e + e.reverse()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("mirror symmetry and exponentially small pair splitting") {
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}}) {
    std::vector<double> cells, logs;
    for (int c = 20; c <= 40; c += 4) {
      const auto chain = buildEffectiveChain(n, c, Boundary::open, mu);
      const auto r = openChainSpectrum(chain, 1.0, c / 3, 400);
      const auto sel = selectEdgeStates(r, 0.5);
      REQUIRE_FALSE(sel.pairs.empty());
      cells.push_back(c);
      logs.push_back(std::log(sel.pairs.front().splitting));

      const Eigen::MatrixXd m = denseMatrix(chain);
      const Eigen::MatrixXd mirrored = m.reverse();
      CHECK((m - mirrored).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK(correlation(cells, logs) < -0.99);
  }
}

TEST_CASE("edge boson number") {
  ModelParams p;
  p.sites = 12;
  p.bosons = 3;
  p.boundary = Boundary::open;
  const auto basis = enumerateTruncatedBasis(p, 1);

  Spectrum fock;
  fock.values = Eigen::VectorXd::Zero(1);
  fock.vectors = Eigen::MatrixXcd::Zero(basis.size(), 1);
  fock.vectors(basis.indexOf({3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}), 0) = 1.0;
  CHECK(edgeBosonNumber(fock, basis, 3).points[0].edge_number == doctest::Approx(3.0));

  // One boson in a plane wave is spread uniformly.
  ModelParams single;
  single.sites = 20;
  single.bosons = 1;
  const auto b1 = enumerateFullBasis(single);
  Spectrum wave;
  wave.values = Eigen::VectorXd::Zero(1);
  wave.vectors.resize(b1.size(), 1);
  for (Basis::Index i = 0; i < b1.size(); ++i) {
    const int j = static_cast<int>(std::find(b1[i].occupations.begin(), b1[i].occupations.end(), 1) -
                                   b1[i].occupations.begin());
    wave.vectors(i, 0) = std::polar(1.0 / std::sqrt(20.0), 2.0 * std::numbers::pi * 3 * j / 20.0);
  }
  CHECK(edgeBosonNumber(wave, b1, 4).points[0].edge_number == doctest::Approx(2.0 * 4 / 20.0));

  CHECK_THROWS_AS(edgeBosonNumber(fock, basis, 6), InvalidParams);
  CHECK_THROWS_AS(edgeBosonNumber(fock, basis, 0), InvalidParams);
}

TEST_CASE("edge number curve peaks near n") {
  const auto p = chainParams(3, 3, 24, 13.5, 30.0);
  const auto basis = enumerateTruncatedBasis(p, 2);
  const auto h = buildHamiltonian(p, basis);
  const auto curve = edgeBosonNumber(h, basis, defaultEdgeWidth(24));
  CHECK(curve.points.size() == static_cast<std::size_t>(basis.size()));
  for (std::size_t i = 1; i < curve.points.size(); ++i) CHECK(curve.points[i - 1].energy <= curve.points[i].energy);

  const auto bands = bandEnergies(BlochFamily::slinky(3, 3), 400);
  const auto peaks = edgePeaks(curve, bands, 3.0 * 13.5, perturbativeMargin(1.0, 13.5));
  REQUIRE(peaks.size() == 2);
  double best = 0.0;
  for (const auto& g : peaks) best = std::max(best, g.edge_number);
  CHECK(best == doctest::Approx(3.0).epsilon(0.1));
  CHECK(selectEdgeStates(curve, 2.5).indices.size() >= 1);
}

TEST_CASE("impurity-terminated model matches the effective chain in the gaps") {
  const double U = 60.0;
  const int N = 10;
  const auto p = chainParams(3, 3, N, U, 2000.0);
  const auto basis = enumerateFullBasis(p);
  const auto full = denseEigensolve(buildHamiltonian(p, basis));

  const auto chain = withResonantShift(buildEffectiveChain(3, chainCells(N, 3), Boundary::open, 3), U);
  const auto r = openChainSpectrum(chain, 1.0, 0, 400);
  int checked = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (!r.inGap(i)) continue;
    ++checked;
    CHECK((full.values.array() - r.energies(i)).abs().minCoeff() < perturbativeMargin(1.0, U));
  }
  CHECK(checked >= 2);
}

}
