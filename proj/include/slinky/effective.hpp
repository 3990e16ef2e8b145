#pragma once

#include <Eigen/Dense>

#include <vector>

#include "slinky/fock.hpp"

namespace slinky {

/// Single-particle chain over slinky labels. Site ell of the chain is the
/// slinky state with label ell + mu - 1; amplitudes[b] couples sites b and
/// b + 1 (the last entry of a ring couples the final site back to site 0).
struct EffectiveChain {
  int bosons = 1;
  int cells = 2;
  Boundary boundary = Boundary::ring;
  int mu = 1;
  std::vector<double> amplitudes;
  double onsite_shift = 0.0;

  int sites() const { return bosons * cells; }
};

/// One period of hopping strengths: sqrt((n - l + 1) l) for l = 1..n-1, then sqrt(n).
std::vector<double> slinkyAmplitudes(int n);

/// Period rotated so that it starts at unit-cell type mu.
std::vector<double> rotatedAmplitudes(int n, int mu);

/// Open chains keep n * cells - 1 bonds: the period is rotated by mu - 1 and
/// the final inter-cell bond dropped.
EffectiveChain buildEffectiveChain(int n, int cells, Boundary boundary, int mu = 1);

/// Sets onsite_shift to U n(n-1)/2.
EffectiveChain withResonantShift(EffectiveChain chain, double U);

/// Off-diagonals -kappa * amplitude, diagonal onsite_shift.
Eigen::MatrixXd denseMatrix(const EffectiveChain& chain, double kappa = 1.0);

}  // namespace slinky
