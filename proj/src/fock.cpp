#include "slinky/fock.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_set>

namespace slinky {

std::string_view toString(Boundary b) { return b == Boundary::ring ? "ring" : "open"; }

Boundary parseBoundary(std::string_view s) {
  if (s == "ring" || s == "periodic") return Boundary::ring;
  if (s == "open") return Boundary::open;
  throw InvalidParams("unknown boundary '" + std::string(s) + "'");
}

void ModelParams::validate() const {
  if (sites < 2) throw InvalidParams("need at least two sites");
  if (bosons < 1) throw InvalidParams("need at least one boson");
  if (!(kappa > 0.0)) throw InvalidParams("kappa must be positive");
  if (boundary == Boundary::ring && (left_cutoff || right_cutoff))
    throw InvalidParams("impurity cutoffs require an open chain");
  if ((left_cutoff && *left_cutoff < 0) || (right_cutoff && *right_cutoff < 0))
    throw InvalidParams("impurity cutoffs must be nonnegative");
}

ImpurityPattern chainImpurities(int n, int mu) {
  if (n < 1) throw InvalidParams("n must be positive");
  if (mu < 1 || mu > n) throw InvalidMu("mu must lie in [1, n]");
  // The open chain starts at slinky label mu on bond (1,2): n+1-mu bosons
  // remain on site 1. It ends at label mu-1 on bond (N-1,N), leaving mu-2
  // bosons on site N; mu = 1 ends one label earlier and mu = 2 ends on the
  // fully occupied last site, which needs no impurity.
  ImpurityPattern p;
  if (mu >= 2) p.left = n + 1 - mu;
  if (mu == 1)
    p.right = n - 1;
  else if (mu >= 3)
    p.right = mu - 2;
  return p;
}

int chainCells(int sites, int mu) { return mu >= 3 ? sites - 2 : sites - 1; }

ModelParams chainParams(int n, int mu, int sites, double U, double W, double kappa) {
  const auto pattern = chainImpurities(n, mu);
  ModelParams p;
  p.kappa = kappa;
  p.U = U;
  p.V = U;
  p.W = W;
  p.sites = sites;
  p.bosons = n;
  p.boundary = Boundary::open;
  p.left_cutoff = pattern.left;
  p.right_cutoff = pattern.right;
  p.validate();
  return p;
}

std::vector<std::string> modelWarnings(const ModelParams& p) {
  std::vector<std::string> out;
  if (!p.resonant()) out.emplace_back("NotResonant: U != V, the slinky manifold is not degenerate");
  const bool impurities = p.left_cutoff || p.right_cutoff;
  if (impurities && p.W == 0.0) {
    out.emplace_back("EdgeStatesNotProtected: W = 0, impurity terms vanish");
  } else if (impurities) {
    const double ev = p.U * p.bosons * (p.bosons - 1) / 2.0;
    if (!(p.W > 2.0 * ev))
      out.emplace_back("WeakImpurity: W <= 2 U n(n-1)/2, impurity termination is only approximate");
  }
  return out;
}

int FockState::total() const {
  int s = 0;
  for (int x : occupations) s += x;
  return s;
}

std::size_t OccupationHash::operator()(const std::vector<int>& occ) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (int x : occ) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Basis::Basis(int sites, std::vector<FockState> states) : sites_(sites), states_(std::move(states)) {
  if (states_.empty()) throw InvalidParams("basis must not be empty");
  std::sort(states_.begin(), states_.end(), std::greater<>());
  states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
  bosons_ = states_.front().total();
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto& s = states_[i];
    if (static_cast<int>(s.occupations.size()) != sites_)
      throw InvalidParams("state has the wrong number of sites");
    if (s.total() != bosons_) throw InvalidParams("basis mixes boson-number sectors");
    index_.emplace(s.occupations, static_cast<Index>(i));
  }
}

std::optional<Basis::Index> Basis::find(const std::vector<int>& occupations) const {
  auto it = index_.find(occupations);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Basis::Index Basis::indexOf(const std::vector<int>& occupations) const {
  if (auto i = find(occupations)) return *i;
  throw InvalidParams("configuration not in basis");
}

std::vector<std::pair<int, int>> latticeLinks(int sites, Boundary boundary) {
  std::vector<std::pair<int, int>> links;
  for (int j = 0; j + 1 < sites; ++j) links.emplace_back(j, j + 1);
  if (boundary == Boundary::ring && sites > 2) links.emplace_back(sites - 1, 0);
  return links;
}

FockState slinkyState(int sites, int n, int ell) {
  if (ell < 0 || ell >= n * sites) throw InvalidParams("slinky label out of range");
  const int j = ell / n;
  const int lambda = ell % n;
  FockState s{std::vector<int>(static_cast<std::size_t>(sites), 0)};
  s.occupations[j] += n - lambda;
  s.occupations[(j + 1) % sites] += lambda;
  return s;
}

std::vector<FockState> slinkyStates(const ModelParams& p) {
  p.validate();
  const int n = p.bosons;
  const int count = p.boundary == Boundary::ring ? n * p.sites : (p.sites - 1) * n + 1;
  std::vector<FockState> out;
  std::unordered_set<std::vector<int>, OccupationHash> seen;
  for (int ell = 0; ell < count; ++ell) {
    auto s = slinkyState(p.sites, n, ell);
    if (seen.insert(s.occupations).second) out.push_back(std::move(s));
  }
  return out;
}

namespace {

long double binomial(int n, int k) {
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void enumerateRecursive(int site, int remaining, std::vector<int>& occ,
                        std::vector<FockState>& out) {
  const int sites = static_cast<int>(occ.size());
  if (site == sites - 1) {
    occ[site] = remaining;
    out.push_back(FockState{occ});
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    occ[site] = k;
    enumerateRecursive(site + 1, remaining - k, occ, out);
  }
  occ[site] = 0;
}

}  // namespace

Basis enumerateFullBasis(const ModelParams& p, const BasisLimits& limits) {
  p.validate();
  const long double dim = binomial(p.bosons + p.sites - 1, p.bosons);
  if (dim > static_cast<long double>(limits.max_nonzeros))
    throw DimensionOverflow("sector dimension " + std::to_string(static_cast<double>(dim)) +
                            " exceeds the configured cap");
  std::vector<FockState> states;
  states.reserve(static_cast<std::size_t>(dim));
  std::vector<int> occ(static_cast<std::size_t>(p.sites), 0);
  enumerateRecursive(0, p.bosons, occ, states);
  return Basis(p.sites, std::move(states));
}

Basis enumerateTruncatedBasis(const ModelParams& p, int depth, const BasisLimits& limits) {
  p.validate();
  if (depth < 0) throw InvalidParams("depth must be nonnegative");
  const auto links = latticeLinks(p.sites, p.boundary);

  std::unordered_set<std::vector<int>, OccupationHash> seen;
  std::vector<std::vector<int>> frontier;
  for (auto& s : slinkyStates(p))
    if (seen.insert(s.occupations).second) frontier.push_back(s.occupations);

  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<std::vector<int>> next;
    for (const auto& occ : frontier) {
      for (auto [a, b] : links) {
        for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
          if (occ[from] == 0) continue;
          auto hop = occ;
          --hop[from];
          ++hop[to];
          if (seen.insert(hop).second) next.push_back(std::move(hop));
        }
      }
    }
    if (seen.size() > limits.max_nonzeros)
      throw DimensionOverflow("truncated basis exceeds the configured cap");
    frontier = std::move(next);
  }

  std::vector<FockState> states;
  states.reserve(seen.size());
  for (const auto& occ : seen) states.push_back(FockState{occ});
  return Basis(p.sites, std::move(states));
}

SparseHermitianOperator::SparseHermitianOperator(Matrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) throw InvalidParams("operator must be square");
  matrix_.makeCompressed();
}

double SparseHermitianOperator::hermiticityDefect() const {
  Matrix diff = matrix_ - Matrix(matrix_.adjoint());
  double worst = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (Matrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

bool SparseHermitianOperator::isReal() const {
  for (Index k = 0; k < matrix_.outerSize(); ++k)
    for (Matrix::InnerIterator it(matrix_, k); it; ++it)
      if (it.value().imag() != 0.0) return false;
  return true;
}

double impurityEnergy(double W, int cutoff, int occupation) {
  if (occupation <= cutoff) return 0.0;
  long long prod = 1;
  for (int l = 0; l <= cutoff; ++l) prod *= occupation - l;
  return W * static_cast<double>(prod);
}

double diagonalEnergy(const ModelParams& p, const std::vector<int>& occ) {
  double e = 0.0;
  for (int x : occ) e += 0.5 * p.U * x * (x - 1);
  for (auto [a, b] : latticeLinks(p.sites, p.boundary)) e += p.V * occ[a] * occ[b];
  if (p.left_cutoff) e += impurityEnergy(p.W, *p.left_cutoff, occ.front());
  if (p.right_cutoff) e += impurityEnergy(p.W, *p.right_cutoff, occ.back());
  return e;
}

SparseHermitianOperator buildHamiltonian(const ModelParams& p, const Basis& basis,
                                         const BasisLimits& limits) {
  p.validate();
  if (basis.sites() != p.sites || basis.bosons() != p.bosons)
    throw InvalidParams("basis does not match model parameters");
  const auto links = latticeLinks(p.sites, p.boundary);
  using T = Eigen::Triplet<std::complex<double>>;
  std::vector<T> triplets;
  triplets.reserve(static_cast<std::size_t>(basis.size()) * (1 + 2 * links.size()));

  for (Basis::Index i = 0; i < basis.size(); ++i) {
    const auto& occ = basis[i].occupations;
    triplets.emplace_back(i, i, diagonalEnergy(p, occ));
    // Column i collects <k|H|i>.
    for (auto [a, b] : links) {
      for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
        if (occ[from] == 0) continue;
        auto hop = occ;
        --hop[from];
        ++hop[to];
        if (auto k = basis.find(hop)) {
          const double amp = -p.kappa * std::sqrt(double(occ[from]) * double(occ[to] + 1));
          triplets.emplace_back(*k, i, amp);
        }
      }
    }
    if (triplets.size() > limits.max_nonzeros)
      throw DimensionOverflow("Hamiltonian exceeds the configured nonzero cap");
  }

  SparseHermitianOperator::Matrix m(basis.size(), basis.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseHermitianOperator(std::move(m));
}

namespace detail {
void requireNormalized(double norm) {
  if (std::abs(norm - 1.0) > 1e-6)
    throw NotNormalized("state norm " + std::to_string(norm) + " deviates from 1");
}
}  // namespace detail

}  // namespace slinky
