#pragma once

// Reference constructions written directly from the model definitions,
// without going through the library code paths they check.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Occ = std::vector<int>;

inline void compositions(int sites, int left, Occ& cur, std::vector<Occ>& out) {
  if (static_cast<int>(cur.size()) == sites - 1) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= left; ++k) {
    cur.push_back(k);
    compositions(sites, left - k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Occ> allStates(int sites, int bosons) {
  std::vector<Occ> out;
  Occ cur;
  compositions(sites, bosons, cur, out);
  return out;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Slinky label l = 0 .. n*sites-1: n - l%n bosons on site l/n, l%n on the next.
inline Occ slinky(int sites, int n, int l) {
  Occ o(sites, 0);
  const int j = l / n, lam = l % n;
  o[j] += n - lam;
  if (lam > 0) o[(j + 1) % sites] += lam;
  return o;
}

inline std::vector<std::pair<int, int>> links(int sites, bool ring) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j + 1 < sites; ++j) out.push_back({j, j + 1});
  if (ring && sites > 2) out.push_back({sites - 1, 0});
  return out;
}

struct Model {
  double kappa = 1.0, U = 0.0, V = 0.0, W = 0.0;
  int sites = 2;
  bool ring = true;
  int left = -1, right = -1;  // cutoffs, -1 for none
};

inline double impurity(double W, int cutoff, int occ) {
  if (cutoff < 0) return 0.0;
  double p = 1.0;
  for (int l = 0; l <= cutoff; ++l) p *= occ - l;
  return W * p;
}

inline double diagonal(const Model& m, const Occ& o) {
  double e = 0.0;
  for (int x : o) e += 0.5 * m.U * x * (x - 1);
  for (auto [a, b] : links(m.sites, m.ring)) e += m.V * o[a] * o[b];
  e += impurity(m.W, m.left, o.front()) + impurity(m.W, m.right, o.back());
  return e;
}

// <bra|H|ket> for arbitrary configurations.
inline double element(const Model& m, const Occ& bra, const Occ& ket) {
  if (bra == ket) return diagonal(m, ket);
  double acc = 0.0;
  for (auto [a, b] : links(m.sites, m.ring)) {
    for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
      if (ket[from] == 0) continue;
      Occ moved = ket;
      moved[from] -= 1;
      moved[to] += 1;
      if (moved == bra) acc += -m.kappa * std::sqrt(double(ket[from]) * (ket[to] + 1));
    }
  }
  return acc;
}

inline Eigen::MatrixXd denseHamiltonian(const Model& m, const std::vector<Occ>& states) {
  const auto d = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd h(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) h(i, j) = element(m, states[i], states[j]);
  return h;
}

// Hopping strengths of one period of the slinky chain, as squares.
inline std::vector<int> periodSquares(int n) {
  std::vector<int> sq;
  for (int lam = 1; lam < n; ++lam) sq.push_back((n - lam + 1) * lam);
  sq.push_back(n);
  return sq;
}

// Single-particle chain over slinky labels; bonds start at label `first`.
inline Eigen::MatrixXd slinkyChain(int n, int length, bool ring, int first = 0, double kappa = 1.0) {
  const auto sq = periodSquares(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(length, length);
  const int bonds = ring ? length : length - 1;
  for (int b = 0; b < bonds; ++b) {
    const double t = -kappa * std::sqrt(double(sq[(first + b) % n]));
    const int a = b, c = (b + 1) % length;
    h(a, c) += t;
    h(c, a) += t;
  }
  return h;
}

// Bloch matrix from one unit cell starting at label `first`.
inline Eigen::MatrixXcd bloch(int n, int first, double k) {
  const auto sq = periodSquares(n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int b = 0; b + 1 < n; ++b) h(b, b + 1) = h(b + 1, b) = std::sqrt(double(sq[(first + b) % n]));
  const std::complex<double> wrap = std::sqrt(double(sq[(first + n - 1) % n])) * std::polar(1.0, -k);
  h(0, n - 1) += wrap;
  h(n - 1, 0) += std::conj(wrap);
  return h;
}

// -kappa h(k) bands on M points, M x n.
template <typename F>
Eigen::MatrixXd bands(F&& h, int n, int M, double kappa = 1.0) {
  Eigen::MatrixXd e(M, n);
  for (int m = 0; m < M; ++m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(-kappa * h(2.0 * M_PI * m / M), Eigen::EigenvaluesOnly);
    e.row(m) = s.eigenvalues().transpose();
  }
  return e;
}

// Zak phase of band b by a plain Wilson loop, in (-pi, pi].
template <typename F>
double wilson(F&& h, int b, int M) {
  std::vector<Eigen::VectorXcd> u;
  for (int m = 0; m < M; ++m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(-h(2.0 * M_PI * m / M));
    u.push_back(s.eigenvectors().col(b));
  }
  std::complex<double> prod = 1.0;
  for (int m = 0; m < M; ++m) prod *= u[m].dot(u[(m + 1) % M]);
  double g = -std::arg(prod);
  if (g <= -M_PI) g += 2.0 * M_PI;
  return g;
}

inline double circleDistance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d);
}

}  // namespace oracle
