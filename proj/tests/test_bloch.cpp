#include <doctest.h>

#include <numbers>
#include <random>

#include "golden.hpp"
#include "oracles.hpp"
#include "slinky/bloch.hpp"

using namespace slinky;
using std::numbers::pi;

namespace {

Eigen::MatrixXcd listed(const golden::Listing& l, double k) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(l.n, l.n);
  for (const auto& e : l.upper) {
    m(e.row, e.col) = std::sqrt(double(e.squared)) * std::polar(1.0, e.phase * k);
    m(e.col, e.row) = std::conj(m(e.row, e.col));
  }
  return m;
}

BlochFamily ssh(double t1, double t2) {
  return BlochFamily(2, [t1, t2](double k) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 1) = t1 + t2 * std::polar(1.0, -k);
    h(1, 0) = std::conj(h(0, 1));
    return h;
  });
}

}  // namespace

TEST_SUITE("bloch") {

TEST_CASE("listed matrices are reproduced") {
  for (const auto& l : golden::listings())
    for (double k : {0.0, pi / 3.0, pi, 1.234}) {
      CHECK((blochMatrix(l.n, l.mu, k) - listed(l, k)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((blochMatrix(l.n, l.mu, k) - oracle::bloch(l.n, l.mu - 1, k)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("single-band matrix") {
  CHECK(blochMatrix(1, 1, 0.3)(0, 0).real() == doctest::Approx(2.0 * std::cos(0.3)));
}

TEST_CASE("zero-momentum energies") {
  const auto b = bandStructure(BlochFamily::slinky(3, 3), 64);
  CHECK(b.energies(0, 0) == doctest::Approx(-(1.0 + std::sqrt(7.0))));
  CHECK(b.energies(0, 1) == doctest::Approx(std::sqrt(7.0) - 1.0));
  CHECK(b.energies(0, 2) == doctest::Approx(2.0));
}

TEST_CASE("band count and energies against a direct diagonalization") {
  for (int n = 3; n <= 5; ++n)
    for (int mu = 1; mu <= n; ++mu) {
      const auto b = bandEnergies(BlochFamily::slinky(n, mu), 50, 0.7);
      CHECK(b.bands() == n);
      const auto ref = oracle::bands([&](double k) { return oracle::bloch(n, mu - 1, k); }, n, 50, 0.7);
      CHECK((b.energies - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("uniform chain bands touch") {
  CHECK_THROWS_AS(bandStructure(BlochFamily::slinky(2, 1), 100), BandTouching);
  const auto b = bandEnergies(BlochFamily::slinky(2, 1), 100);
  CHECK(b.gapClosed(0));
  CHECK(b.direct_gaps(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("zak phase of simple families") {
  const auto one = bandStructure(BlochFamily::slinky(1, 1), 64);
  REQUIRE(one.zak[0].has_value());
  CHECK(std::abs(*one.zak[0]) < 1e-12);

  const auto topo = bandStructure(ssh(0.5, 1.0), 200);
  const auto triv = bandStructure(ssh(1.0, 0.5), 200);
  for (int band = 0; band < 2; ++band) {
    CHECK(phaseDistance(*topo.zak[band], pi) < 1e-8);
    CHECK(phaseDistance(*triv.zak[band], 0.0) < 1e-8);
  }
}

TEST_CASE("zak phases against a direct Wilson loop") {
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}, std::pair{4, 3}, std::pair{4, 1}}) {
    const auto b = bandStructure(BlochFamily::slinky(n, mu), 400);
    for (int band = 0; band < n; ++band) {
      if (!b.isolated(band)) {
        CHECK_THROWS_AS(zakPhase(b, band), BandTouching);
        continue;
      }
      const double ref = oracle::wilson([&](double k) { return oracle::bloch(n, mu - 1, k); }, band, 400);
      CHECK(phaseDistance(*b.zak[band], ref) < 1e-9);
    }
  }
}

TEST_CASE("quantized and non-quantized patterns") {
  const auto three = bandStructure(BlochFamily::slinky(3, 3), 400);
  int nonzero = 0;
  for (const auto& z : three.zak) {
    REQUIRE(z.has_value());
    CHECK(isQuantized(*z));
    if (phaseDistance(*z, pi) < 1e-2) ++nonzero;
  }
  CHECK(nonzero == 2);

  const auto four = bandStructure(BlochFamily::slinky(4, 3), 400);
  bool offLattice = false;
  for (const auto& z : four.zak)
    if (z && !isQuantized(*z, 0.1)) offLattice = true;
  CHECK(offLattice);
  CHECK_FALSE(four.isolated(1));
  CHECK_FALSE(four.isolated(2));
}

TEST_CASE("grid convergence") {
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}, std::pair{4, 3}}) {
    const auto a = bandStructure(BlochFamily::slinky(n, mu), 400);
    const auto b = bandStructure(BlochFamily::slinky(n, mu), 800);
    for (int band = 0; band < n; ++band)
      if (a.zak[band]) CHECK(phaseDistance(*a.zak[band], *b.zak[band]) < 1e-3);
  }
}

TEST_CASE("gauge invariance under constant phase dressing") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (auto [n, mu] : {std::pair{3, 3}, std::pair{5, 4}, std::pair{4, 3}}) {
    Eigen::VectorXcd d(n);
    for (auto& x : d) x = std::polar(1.0, u(rng));
    const BlochFamily dressed(n, [n, mu, d](double k) {
      return Eigen::MatrixXcd(d.asDiagonal() * blochMatrix(n, mu, k) * d.conjugate().asDiagonal());
    });
    const auto a = bandStructure(BlochFamily::slinky(n, mu), 300);
    const auto b = bandStructure(dressed, 300);
    for (int band = 0; band < n; ++band)
      if (a.zak[band]) CHECK(phaseDistance(*a.zak[band], *b.zak[band]) < 1e-10);
  }
}

TEST_CASE("isospectral across unit-cell types") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int n = 2; n <= 5; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      const double k = u(rng);
      const Eigen::VectorXd ref =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(blochMatrix(n, 1, k), Eigen::EigenvaluesOnly).eigenvalues();
      for (int mu = 2; mu <= n; ++mu) {
        const Eigen::VectorXd e =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(blochMatrix(n, mu, k), Eigen::EigenvaluesOnly)
                .eigenvalues();
        CHECK((e - ref).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
}

TEST_CASE("gap edges") {
  const auto three = bandEnergies(BlochFamily::slinky(3, 3), 400);
  for (int g = 0; g < 2; ++g) {
    const auto [lo, hi] = gapEdges(three, g);
    CHECK(lo < hi);
  }
  for (int mu = 1; mu <= 3; ++mu) {
    const auto other = bandEnergies(BlochFamily::slinky(3, mu), 400);
    for (int g = 0; g < 2; ++g) {
      CHECK(gapEdges(other, g).first == doctest::Approx(gapEdges(three, g).first).epsilon(1e-10));
      CHECK(gapEdges(other, g).second == doctest::Approx(gapEdges(three, g).second).epsilon(1e-10));
    }
  }
  const auto two = bandEnergies(BlochFamily::slinky(2, 1), 400);
  const auto [lo, hi] = gapEdges(two, 0);
  CHECK(hi - lo == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("phase helpers") {
  CHECK(normalizePhase(-pi) == doctest::Approx(pi));
  CHECK(normalizePhase(3.0 * pi) == doctest::Approx(pi));
  CHECK(normalizePhase(2.0 * pi + 0.1) == doctest::Approx(0.1));
  CHECK(phaseDistance(pi - 0.01, -pi + 0.01) == doctest::Approx(0.02));
  CHECK(isQuantized(pi + 0.005));
  CHECK_FALSE(isQuantized(1.0));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(blochMatrix(3, 0, 0.0), InvalidMu);
  CHECK_THROWS_AS(bandEnergies(BlochFamily::slinky(3, 1), 4), InvalidParams);
}

}
