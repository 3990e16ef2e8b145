#include "slinky/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slinky {

std::vector<int> SpectrumReport::inGapCounts() const {
  std::vector<int> counts(gaps.size(), 0);
  for (const auto& g : gap_index)
    if (g) ++counts[static_cast<std::size_t>(*g)];
  return counts;
}

int defaultEdgeCells(int cells) { return std::max(1, cells / 4); }
int defaultEdgeWidth(int sites) { return std::max(1, sites / 4); }

SpectrumReport openChainSpectrum(const EffectiveChain& chain, double kappa, int edge_cells, int grid) {
  if (chain.boundary != Boundary::open) throw InvalidParams("open-chain spectrum needs an open chain");
  if (edge_cells <= 0) edge_cells = defaultEdgeCells(chain.cells);
  if (2 * edge_cells > chain.cells) throw InvalidParams("edge region covers the whole chain");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(denseMatrix(chain, kappa));
  if (solver.info() != Eigen::Success) throw SolverFailure("chain diagonalization failed");

  SpectrumReport r;
  r.energies = solver.eigenvalues();
  r.states = solver.eigenvectors();
  r.bosons = chain.bosons;
  r.edge_cells = edge_cells;
  r.onsite_shift = chain.onsite_shift;

  const int L = chain.sites();
  const int w = edge_cells * chain.bosons;
  r.edge_weight.resize(L);
  for (int i = 0; i < L; ++i) {
    const auto col = r.states.col(i);
    r.edge_weight(i) = col.head(w).squaredNorm() + col.tail(w).squaredNorm();
  }

  r.gap_index.assign(static_cast<std::size_t>(L), std::nullopt);
  if (chain.bosons > 1) {
    const auto bands = bandEnergies(BlochFamily::slinky(chain.bosons, chain.mu), grid, kappa);
    // Finite-grid band extrema can miss the true ones by O((2 pi / grid)^2).
    const double tol = 1e-4;
    for (int g = 0; g + 1 < bands.bands(); ++g) {
      r.gaps.push_back(gapEdges(bands, g));
      if (bands.gapClosed(g)) continue;
      const auto [lo, hi] = r.gaps.back();
      for (int i = 0; i < L; ++i) {
        const double e = r.energies(i) - chain.onsite_shift;
        if (e > lo + tol && e < hi - tol) r.gap_index[static_cast<std::size_t>(i)] = g;
      }
    }
  }
  return r;
}

EdgeNumberCurve edgeBosonNumber(const Spectrum& spectrum, const Basis& basis, int edge_width) {
  const int N = basis.sites();
  if (edge_width < 1 || 2 * edge_width >= N) throw InvalidParams("edge width must satisfy 1 <= w < N/2");
  Eigen::VectorXd edgeCount(basis.size());
  for (Basis::Index i = 0; i < basis.size(); ++i) {
    const auto& occ = basis[i].occupations;
    int s = 0;
    for (int j = 0; j < edge_width; ++j) s += occ[j] + occ[N - 1 - j];
    edgeCount(i) = s;
  }
  EdgeNumberCurve curve;
  curve.bosons = basis.bosons();
  curve.edge_width = edge_width;
  curve.points.reserve(static_cast<std::size_t>(spectrum.size()));
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const double ne = spectrum.vectors.col(k).cwiseAbs2().dot(edgeCount);
    curve.points.push_back({spectrum.values(k), ne});
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const EdgePoint& a, const EdgePoint& b) { return a.energy < b.energy; });
  return curve;
}

EdgeNumberCurve edgeBosonNumber(const SparseHermitianOperator& h, const Basis& basis, int edge_width,
                                const EigenOptions& options) {
  return edgeBosonNumber(eigensolve(h, options), basis, edge_width);
}

EdgeSelection selectEdgeStates(const SpectrumReport& report, double threshold) {
  EdgeSelection sel;
  for (Eigen::Index i = 0; i < report.size(); ++i)
    if (report.inGap(i) && report.edge_weight(i) > threshold) sel.indices.push_back(i);
  if (sel.indices.empty()) throw NoEdgeStates("no in-gap state exceeds the edge-weight threshold");

  const Eigen::Index L = report.states.rows();
  const Eigen::Index half = L / 2;
  for (std::size_t a = 0; a + 1 < sel.indices.size(); ++a) {
    const auto i = sel.indices[a];
    const auto j = sel.indices[a + 1];
    if (report.gap_index[static_cast<std::size_t>(i)] != report.gap_index[static_cast<std::size_t>(j)])
      continue;
    const Eigen::VectorXd plus = (report.states.col(i) + report.states.col(j)) / std::sqrt(2.0);
    const Eigen::VectorXd minus = (report.states.col(i) - report.states.col(j)) / std::sqrt(2.0);
    const double lp = plus.head(half).squaredNorm();
    const double lm = minus.head(half).squaredNorm();
    if (std::max(lp, lm) > 0.9 && std::min(lp, lm) < 0.1) {
      sel.pairs.push_back({i, j, report.energies(j) - report.energies(i), lp, lm});
      ++a;
    }
  }
  return sel;
}

EdgeSelection selectEdgeStates(const EdgeNumberCurve& curve, double threshold) {
  EdgeSelection sel;
  for (std::size_t i = 0; i < curve.points.size(); ++i)
    if (curve.points[i].edge_number > threshold) sel.indices.push_back(static_cast<Eigen::Index>(i));
  if (sel.indices.empty()) throw NoEdgeStates("no eigenstate exceeds the edge-number threshold");
  return sel;
}

std::vector<GapPeak> edgePeaks(const EdgeNumberCurve& curve, const BandStructure& bands, double shift,
                               double margin) {
  std::vector<GapPeak> peaks;
  for (int g = 0; g + 1 < bands.bands(); ++g) {
    if (bands.gapClosed(g)) continue;
    const auto [lo, hi] = gapEdges(bands, g);
    GapPeak p{g, lo, hi, -1, 0.0, -1.0, 0};
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const double e = curve.points[i].energy - shift;
      if (e < lo - margin || e > hi + margin) continue;
      ++p.window_states;
      if (curve.points[i].edge_number > p.edge_number) {
        p.index = static_cast<Eigen::Index>(i);
        p.energy = curve.points[i].energy;
        p.edge_number = curve.points[i].edge_number;
      }
    }
    peaks.push_back(p);
  }
  return peaks;
}

double perturbativeMargin(double kappa, double U) { return 5.0 * kappa * kappa / U; }

}  // namespace slinky
