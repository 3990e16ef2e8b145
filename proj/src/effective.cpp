#include "slinky/effective.hpp"

#include <algorithm>
#include <cmath>

namespace slinky {

std::vector<double> slinkyAmplitudes(int n) {
  if (n < 1) throw InvalidParams("n must be positive");
  std::vector<double> a;
  a.reserve(static_cast<std::size_t>(n));
  for (int l = 1; l < n; ++l) a.push_back(std::sqrt(double((n - l + 1) * l)));
  a.push_back(std::sqrt(double(n)));
  return a;
}

std::vector<double> rotatedAmplitudes(int n, int mu) {
  if (mu < 1 || mu > n) throw InvalidMu("mu must lie in [1, n]");
  auto a = slinkyAmplitudes(n);
  std::rotate(a.begin(), a.begin() + (mu - 1), a.end());
  return a;
}

EffectiveChain buildEffectiveChain(int n, int cells, Boundary boundary, int mu) {
  if (n < 1) throw InvalidParams("n must be positive");
  if (mu < 1 || mu > n) throw InvalidMu("mu must lie in [1, n]");
  if (cells < 2) throw InvalidParams("chain needs at least two unit cells");

  EffectiveChain chain;
  chain.bosons = n;
  chain.cells = cells;
  chain.boundary = boundary;
  chain.mu = mu;
  const auto period = rotatedAmplitudes(n, mu);
  for (int c = 0; c < cells; ++c) chain.amplitudes.insert(chain.amplitudes.end(), period.begin(), period.end());
  if (boundary == Boundary::open) chain.amplitudes.pop_back();
  return chain;
}

EffectiveChain withResonantShift(EffectiveChain chain, double U) {
  chain.onsite_shift = U * chain.bosons * (chain.bosons - 1) / 2.0;
  return chain;
}

Eigen::MatrixXd denseMatrix(const EffectiveChain& chain, double kappa) {
  const int L = chain.sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(L, L) * chain.onsite_shift;
  for (int b = 0; b + 1 < L; ++b) {
    h(b, b + 1) = -kappa * chain.amplitudes[static_cast<std::size_t>(b)];
    h(b + 1, b) = h(b, b + 1);
  }
  // A two-site ring closes onto the bond it already has.
  if (chain.boundary == Boundary::ring && L > 2) {
    h(L - 1, 0) = -kappa * chain.amplitudes.back();
    h(0, L - 1) = h(L - 1, 0);
  }
  return h;
}

}  // namespace slinky
