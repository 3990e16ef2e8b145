#pragma once

#include <Eigen/Dense>

#include <optional>
#include <variant>

#include "slinky/diagnostics.hpp"
#include "slinky/eigensolve.hpp"
#include "slinky/fock.hpp"

namespace slinky {

/// p(j, t) sampled on a uniform time grid.
struct QuenchTrace {
  Eigen::VectorXd times;
  Eigen::MatrixXd distribution;  // times.size() x sites
  Eigen::VectorXd norm_drift;    // | ||psi(t)|| - 1 |
  Eigen::VectorXd energy;        // <psi(t)|H|psi(t)>
  int bosons = 0;

  Eigen::Index samples() const { return times.size(); }
  int sites() const { return static_cast<int>(distribution.cols()); }
};

enum class Propagation { automatic, eigen, krylov };

struct EvolveOptions {
  Propagation method = Propagation::automatic;
  Eigen::Index dense_limit = 4000;
  double krylov_tolerance = 1e-10;
  double max_norm_drift = 1e-8;
};

/// Samples t = 0, dt, 2 dt, ... up to t_max. Throws NormDriftExceeded when a
/// sample leaves the unit sphere by more than `max_norm_drift`.
QuenchTrace evolve(const SparseHermitianOperator& h, const Basis& basis, const Eigen::VectorXcd& initial,
                   double t_max, double dt, const EvolveOptions& options = {});

/// exp(-i H t) psi with the requested method.
Eigen::VectorXcd propagate(const SparseHermitianOperator& h, const Eigen::VectorXcd& psi, double t,
                           Propagation method = Propagation::automatic, Eigen::Index dense_limit = 4000);

/// Edge pair of the given effective gap (in units of the slinky band of the
/// (n, mu) family), recombined to sit on the left end of the lattice.
struct LeftEdgeState {
  int mu;
  int gap;
};

/// Index into the ascending source spectrum.
struct SourceEigenstate {
  Eigen::Index index;
};

using InitialSelector = std::variant<LeftEdgeState, SourceEigenstate, FockState>;

struct PrepareOptions {
  int depth = 2;
  int edge_width = 0;       // 0: a quarter of the source lattice
  double max_loss = 0.05;   // weight allowed to fall outside the quench lattice
  int bloch_grid = 400;
  EigenOptions eigen;
};

struct PreparedState {
  Basis basis;               // quench basis
  Eigen::VectorXcd vector;   // normalized, over `basis`
  double restriction_loss = 0.0;
  double source_energy = 0.0;  // energy expectation on the source lattice (NaN for Fock input)
};

/// Restricts a source-lattice state to configurations supported on the first
/// target.sites() sites that exist in `target`, then renormalizes. Throws
/// LeakyRestriction when the discarded weight reaches `max_loss`.
PreparedState restrictToPrefix(const Basis& source, const Eigen::VectorXcd& state, Basis target,
                               double max_loss);

PreparedState prepareInitialState(const ModelParams& source, const ModelParams& quench,
                                  const InitialSelector& which, const PrepareOptions& options = {});

/// The two eigenstates of `spectrum` carrying most of `initial`, and their splitting.
struct TwoLevelOverlap {
  Eigen::Index first;
  Eigen::Index second;
  double weight_first;
  double weight_second;
  double splitting;
};

TwoLevelOverlap dominantPair(const Spectrum& spectrum, const Eigen::VectorXcd& initial);

/// 4 beat periods when the splitting is known, else 200 / kappa.
double suggestedDuration(std::optional<double> splitting, double kappa = 1.0);

struct FrequencyOptions {
  int zero_padding = 8;
  double noise_factor = 3.0;
};

/// Dominant nonzero angular frequency of p(site, t): weighted-mean removal,
/// Hann window, zero-padded transform, parabolic peak interpolation.
/// Throws NoOscillation.
double oscillationFrequency(const QuenchTrace& trace, int site, const FrequencyOptions& options = {});
double oscillationFrequency(const Eigen::VectorXd& signal, double dt, const FrequencyOptions& options = {});

/// Site in [first, last) whose p(j, t) varies most.
int dominantSite(const QuenchTrace& trace, int first, int last);

}  // namespace slinky
