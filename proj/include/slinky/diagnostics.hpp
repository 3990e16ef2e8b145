#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "slinky/bloch.hpp"
#include "slinky/effective.hpp"
#include "slinky/eigensolve.hpp"
#include "slinky/fock.hpp"

namespace slinky {

/// Eigen-decomposition of an open effective chain with edge diagnostics.
struct SpectrumReport {
  Eigen::VectorXd energies;                  // ascending, onsite shift included
  Eigen::MatrixXd states;                    // column i pairs with energies(i)
  Eigen::VectorXd edge_weight;               // weight on the first and last edge_cells cells
  std::vector<std::optional<int>> gap_index; // set for in-gap states
  std::vector<std::pair<double, double>> gaps;  // Bloch gap edges, shift excluded
  int bosons = 1;
  int edge_cells = 1;
  double onsite_shift = 0.0;

  Eigen::Index size() const { return energies.size(); }
  bool inGap(Eigen::Index i) const { return gap_index[static_cast<std::size_t>(i)].has_value(); }
  /// In-gap states per gap.
  std::vector<int> inGapCounts() const;
};

/// Default edge region: a quarter of the lattice (at least one unit) per end.
int defaultEdgeCells(int cells);
int defaultEdgeWidth(int sites);

/// Full diagonalization of an open chain; in-gap flags use the gaps of the
/// Bloch family with the same (n, mu), computed on `grid` momenta.
SpectrumReport openChainSpectrum(const EffectiveChain& chain, double kappa = 1.0,
                                 int edge_cells = 0, int grid = 2048);

struct EdgePoint {
  double energy;
  double edge_number;
};

/// N_edge(E) for every computed eigenpair, sorted by energy.
struct EdgeNumberCurve {
  std::vector<EdgePoint> points;
  int bosons = 1;
  int edge_width = 1;
};

/// Occupation summed over sites [0, w) and [N - w, N) for each eigenvector.
EdgeNumberCurve edgeBosonNumber(const Spectrum& spectrum, const Basis& basis, int edge_width);
EdgeNumberCurve edgeBosonNumber(const SparseHermitianOperator& h, const Basis& basis,
                                int edge_width, const EigenOptions& options = {});

/// Two in-gap states of the same gap that recombine into states on opposite
/// ends. `left_plus` / `left_minus` are the left-half weights of
/// (a + b)/sqrt2 and (a - b)/sqrt2.
struct EdgePair {
  Eigen::Index first;
  Eigen::Index second;
  double splitting;
  double left_plus;
  double left_minus;
};

struct EdgeSelection {
  std::vector<Eigen::Index> indices;
  std::vector<EdgePair> pairs;
};

/// In-gap states with edge weight above `threshold`. Throws NoEdgeStates.
EdgeSelection selectEdgeStates(const SpectrumReport& report, double threshold);
/// Points with N_edge above `threshold`. Throws NoEdgeStates.
EdgeSelection selectEdgeStates(const EdgeNumberCurve& curve, double threshold);

/// Largest N_edge among eigenstates whose energy lies within `margin` of an
/// open Bloch gap shifted by `shift`.
struct GapPeak {
  int gap;
  double gap_low;
  double gap_high;
  Eigen::Index index;  // into curve.points; -1 when the window is empty
  double energy;
  double edge_number;
  int window_states;
};

std::vector<GapPeak> edgePeaks(const EdgeNumberCurve& curve, const BandStructure& bands,
                               double shift, double margin);

/// Second-order energy scale used to widen effective gaps: 5 kappa^2 / U.
double perturbativeMargin(double kappa, double U);

}  // namespace slinky
