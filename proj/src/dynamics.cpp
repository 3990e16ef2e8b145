#include "slinky/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "slinky/bloch.hpp"

namespace slinky {

namespace {

constexpr double kPi = std::numbers::pi;

void requireUnit(const Eigen::VectorXcd& v) {
  if (std::abs(v.norm() - 1.0) > 1e-8) throw NotNormalized("initial state is not normalized");
}

bool useEigen(Propagation method, Eigen::Index dim, Eigen::Index dense_limit) {
  if (method == Propagation::automatic) return dim <= dense_limit;
  return method == Propagation::eigen;
}

}  // namespace

Eigen::VectorXcd propagate(const SparseHermitianOperator& h, const Eigen::VectorXcd& psi, double t,
                           Propagation method, Eigen::Index dense_limit) {
  if (!useEigen(method, h.dimension(), dense_limit)) return krylovPropagate(h, psi, t);
  const auto spectrum = denseEigensolve(h);
  const Eigen::VectorXcd c = spectrum.vectors.adjoint() * psi;
  Eigen::VectorXcd phased(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) phased(i) = std::polar(1.0, -spectrum.values(i) * t) * c(i);
  return spectrum.vectors * phased;
}

QuenchTrace evolve(const SparseHermitianOperator& h, const Basis& basis, const Eigen::VectorXcd& initial,
                   double t_max, double dt, const EvolveOptions& options) {
  if (!(dt > 0.0)) throw InvalidParams("dt must be positive");
  if (t_max < 0.0) throw InvalidParams("t_max must be nonnegative");
  if (initial.size() != h.dimension() || h.dimension() != basis.size())
    throw InvalidParams("state, operator and basis dimensions disagree");
  requireUnit(initial);

  const auto samples = static_cast<Eigen::Index>(std::floor(t_max / dt + 1e-9)) + 1;
  QuenchTrace trace;
  trace.bosons = basis.bosons();
  trace.times.resize(samples);
  trace.distribution.resize(samples, basis.sites());
  trace.norm_drift.resize(samples);
  trace.energy.resize(samples);

  auto record = [&](Eigen::Index s, const Eigen::VectorXcd& psi) {
    const double norm = psi.norm();
    trace.norm_drift(s) = std::abs(norm - 1.0);
    if (trace.norm_drift(s) > options.max_norm_drift)
      throw NormDriftExceeded("norm drift " + std::to_string(trace.norm_drift(s)) + " at t = " +
                              std::to_string(trace.times(s)));
    trace.distribution.row(s) = siteOccupations(basis, psi / norm).transpose();
    trace.energy(s) = std::real(psi.dot(h * psi));
  };

  if (useEigen(options.method, h.dimension(), options.dense_limit)) {
    const auto spectrum = denseEigensolve(h);
    const Eigen::VectorXcd c = spectrum.vectors.adjoint() * initial;
    Eigen::VectorXcd phased(c.size());
    for (Eigen::Index s = 0; s < samples; ++s) {
      const double t = s * dt;
      trace.times(s) = t;
      for (Eigen::Index i = 0; i < c.size(); ++i) phased(i) = std::polar(1.0, -spectrum.values(i) * t) * c(i);
      record(s, spectrum.vectors * phased);
    }
  } else {
    Eigen::VectorXcd psi = initial;
    for (Eigen::Index s = 0; s < samples; ++s) {
      trace.times(s) = s * dt;
      if (s > 0) psi = krylovPropagate(h, psi, dt, options.krylov_tolerance);
      record(s, psi);
    }
  }
  return trace;
}

PreparedState restrictToPrefix(const Basis& source, const Eigen::VectorXcd& state, Basis target,
                               double max_loss) {
  if (state.size() != source.size()) throw InvalidParams("state does not match the source basis");
  const int keep = target.sites();
  if (keep > source.sites()) throw InvalidParams("target lattice is larger than the source");
  if (target.bosons() != source.bosons()) throw InvalidParams("boson numbers differ");

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(target.size());
  std::vector<int> prefix(static_cast<std::size_t>(keep));
  for (Basis::Index i = 0; i < source.size(); ++i) {
    const auto& occ = source[i].occupations;
    if (std::any_of(occ.begin() + keep, occ.end(), [](int x) { return x != 0; })) continue;
    std::copy(occ.begin(), occ.begin() + keep, prefix.begin());
    if (auto k = target.find(prefix)) out(*k) = state(i);
  }
  const double kept = out.squaredNorm() / state.squaredNorm();
  const double loss = 1.0 - kept;
  if (!(loss < max_loss))
    throw LeakyRestriction("restriction discards weight " + std::to_string(loss) + " (limit " +
                           std::to_string(max_loss) + ")");
  out /= out.norm();
  return PreparedState{std::move(target), std::move(out), loss, std::numeric_limits<double>::quiet_NaN()};
}

namespace {

Eigen::VectorXcd leftEdgeCombination(const ModelParams& source, const Basis& basis, const Spectrum& spectrum,
                                     const LeftEdgeState& sel, int edge_width, int grid) {
  const int n = source.bosons;
  const auto bands = bandEnergies(BlochFamily::slinky(n, sel.mu), grid, source.kappa);
  if (sel.gap < 0 || sel.gap + 1 >= bands.bands()) throw InvalidParams("gap index out of range");
  if (bands.gapClosed(sel.gap)) throw NoEdgeStates("requested gap is closed");
  const auto [lo, hi] = gapEdges(bands, sel.gap);
  const double shift = source.U * n * (n - 1) / 2.0;
  const double margin = perturbativeMargin(source.kappa, source.U);

  const int N = basis.sites();
  Eigen::VectorXd left(basis.size()), both(basis.size());
  for (Basis::Index i = 0; i < basis.size(); ++i) {
    const auto& occ = basis[i].occupations;
    int l = 0, r = 0;
    for (int j = 0; j < edge_width; ++j) {
      l += occ[j];
      r += occ[N - 1 - j];
    }
    left(i) = l;
    both(i) = l + r;
  }

  // The two most edge-bound states of the gap window.
  std::vector<std::pair<double, Eigen::Index>> candidates;
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const double e = spectrum.values(k) - shift;
    if (e < lo - margin || e > hi + margin) continue;
    candidates.emplace_back(spectrum.vectors.col(k).cwiseAbs2().dot(both), k);
  }
  if (candidates.empty()) throw NoEdgeStates("no eigenstates near the requested gap");
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  const std::size_t take = std::min<std::size_t>(2, candidates.size());

  Eigen::MatrixXcd P(basis.size(), static_cast<Eigen::Index>(take));
  for (std::size_t c = 0; c < take; ++c) P.col(static_cast<Eigen::Index>(c)) = spectrum.vectors.col(candidates[c].second);
  // Diagonalize the left-edge number inside the pair subspace.
  const Eigen::MatrixXcd leftNumber = P.adjoint() * left.cast<std::complex<double>>().asDiagonal() * P;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(leftNumber);
  Eigen::VectorXcd psi = P * solver.eigenvectors().col(solver.eigenvectors().cols() - 1);
  // Fix the global phase on the largest amplitude for reproducible output.
  Eigen::Index big;
  psi.cwiseAbs().maxCoeff(&big);
  psi *= std::polar(1.0, -std::arg(psi(big)));
  return psi.normalized();
}

}  // namespace

PreparedState prepareInitialState(const ModelParams& source, const ModelParams& quench,
                                  const InitialSelector& which, const PrepareOptions& options) {
  source.validate();
  quench.validate();
  if (source.sites <= quench.sites) throw InvalidParams("source lattice must be larger than the quench lattice");
  if (source.bosons != quench.bosons) throw InvalidParams("boson numbers differ");
  Basis target = enumerateTruncatedBasis(quench, options.depth);

  if (const auto* fock = std::get_if<FockState>(&which)) {
    if (static_cast<int>(fock->occupations.size()) != source.sites || fock->total() != source.bosons)
      throw InvalidParams("Fock state does not match the source lattice");
    Basis single(source.sites, {*fock});
    Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
    return restrictToPrefix(single, one, std::move(target), options.max_loss);
  }

  const Basis basis = enumerateTruncatedBasis(source, options.depth);
  const auto h = buildHamiltonian(source, basis);
  EigenOptions eig = options.eigen;
  if (!eig.shift) eig.shift = source.U * source.bosons * (source.bosons - 1) / 2.0;
  if (eig.count == 0) eig.count = std::min<Eigen::Index>(basis.size(), 2 * source.bosons * source.sites);
  const auto spectrum = eigensolve(h, eig);

  Eigen::VectorXcd psi;
  if (const auto* idx = std::get_if<SourceEigenstate>(&which)) {
    if (idx->index < 0 || idx->index >= spectrum.size()) throw InvalidParams("eigenstate index out of range");
    psi = spectrum.vectors.col(idx->index);
  } else {
    const int w = options.edge_width > 0 ? options.edge_width : defaultEdgeWidth(source.sites);
    psi = leftEdgeCombination(source, basis, spectrum, std::get<LeftEdgeState>(which), w, options.bloch_grid);
  }
  auto prepared = restrictToPrefix(basis, psi, std::move(target), options.max_loss);
  prepared.source_energy = std::real(psi.dot(h * psi));
  return prepared;
}

TwoLevelOverlap dominantPair(const Spectrum& spectrum, const Eigen::VectorXcd& initial) {
  if (spectrum.size() < 2) throw InvalidParams("need at least two eigenstates");
  const Eigen::VectorXd w = (spectrum.vectors.adjoint() * initial).cwiseAbs2();
  Eigen::Index a = 0, b = 1;
  if (w(b) > w(a)) std::swap(a, b);
  for (Eigen::Index i = 2; i < w.size(); ++i) {
    if (w(i) > w(a)) {
      b = a;
      a = i;
    } else if (w(i) > w(b)) {
      b = i;
    }
  }
  return {a, b, w(a), w(b), std::abs(spectrum.values(a) - spectrum.values(b))};
}

double suggestedDuration(std::optional<double> splitting, double kappa) {
  if (splitting && *splitting > 0.0) return 4.0 * 2.0 * kPi / *splitting;
  return 200.0 / kappa;
}

double oscillationFrequency(const Eigen::VectorXd& signal, double dt, const FrequencyOptions& options) {
  const Eigen::Index S = signal.size();
  if (S < 16) throw NoOscillation("too few samples");
  Eigen::VectorXd window(S);
  for (Eigen::Index i = 0; i < S; ++i) window(i) = 0.5 * (1.0 - std::cos(2.0 * kPi * i / double(S - 1)));
  const double mean = signal.dot(window) / window.sum();
  const Eigen::VectorXd x = (signal.array() - mean).matrix().cwiseProduct(window);

  const double base = 2.0 * kPi / (S * dt);  // native resolution
  const int Z = std::max(1, options.zero_padding);
  const Eigen::Index first = Z;              // skip below one native bin
  const Eigen::Index last = S * Z / 2;       // Nyquist
  Eigen::VectorXd mag(last + 1);
  mag.setZero();
  for (Eigen::Index k = first; k <= last; ++k) {
    const double omega = base * double(k) / Z;
    const std::complex<double> step = std::polar(1.0, -omega * dt);
    std::complex<double> phase = 1.0, acc = 0.0;
    for (Eigen::Index i = 0; i < S; ++i) {
      acc += x(i) * phase;
      phase *= step;
    }
    mag(k) = std::abs(acc);
  }

  Eigen::Index peak = first;
  for (Eigen::Index k = first; k <= last; ++k)
    if (mag(k) > mag(peak)) peak = k;

  std::vector<double> sorted(mag.data() + first, mag.data() + last + 1);
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double floor = sorted[sorted.size() / 2];
  const double scale = std::max(1.0, signal.cwiseAbs().maxCoeff());
  if (mag(peak) < options.noise_factor * floor || mag(peak) < 1e-9 * scale * S)
    throw NoOscillation("spectral peak does not rise above the noise floor");

  double offset = 0.0;
  if (peak > first && peak < last) {
    const double a = mag(peak - 1), b = mag(peak), c = mag(peak + 1);
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) offset = 0.5 * (a - c) / denom;
  }
  return base * (double(peak) + offset) / Z;
}

double oscillationFrequency(const QuenchTrace& trace, int site, const FrequencyOptions& options) {
  if (site < 0 || site >= trace.sites()) throw InvalidParams("site out of range");
  if (trace.samples() < 2) throw NoOscillation("trace too short");
  const double dt = trace.times(1) - trace.times(0);
  return oscillationFrequency(Eigen::VectorXd(trace.distribution.col(site)), dt, options);
}

int dominantSite(const QuenchTrace& trace, int first, int last) {
  if (first < 0 || last > trace.sites() || first >= last) throw InvalidParams("site range invalid");
  int best = first;
  double bestVar = -1.0;
  for (int j = first; j < last; ++j) {
    const auto col = trace.distribution.col(j);
    const double var = (col.array() - col.mean()).square().mean();
    if (var > bestVar) {
      bestVar = var;
      best = j;
    }
  }
  return best;
}

}  // namespace slinky
