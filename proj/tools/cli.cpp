#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "slinky/bloch.hpp"
#include "slinky/diagnostics.hpp"
#include "slinky/dynamics.hpp"
#include "slinky/effective.hpp"
#include "slinky/io.hpp"

namespace slinky::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exitCode(const Error& e) {
  const auto& c = e.code();
  if (c == "SolverFailure" || c == "NormDriftExceeded" || c == "NoOscillation") return 3;
  return 2;
}

void reportError(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

// Options that can come from the command line or from a JSON config file.
class Params {
 public:
  template <typename T>
  void add(CLI::App* app, const std::string& name, T& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, var, help);
    entries_.push_back({name, opt, [&var](const json& j) { var = j.get<T>(); }, [&var] { return json(var); }});
  }

  template <typename T>
  void add(CLI::App* app, const std::string& name, std::optional<T>& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, var, help);
    entries_.push_back({name, opt,
                        [&var](const json& j) {
                          if (j.is_null()) var.reset();
                          else var = j.get<T>();
                        },
                        [&var] { return var ? json(*var) : json(nullptr); }});
  }

  void flag(CLI::App* app, const std::string& name, bool& var, const std::string& help) {
    CLI::Option* opt = app->add_flag("--" + name, var, help);
    entries_.push_back({name, opt, [&var](const json& j) { var = j.get<bool>(); }, [&var] { return json(var); }});
  }

  // Config values apply only where the flag was not given.
  void overlay(const json& config) {
    for (auto& e : entries_) {
      if (e.option->count() > 0) continue;
      if (auto it = config.find(e.name); it != config.end()) e.load(*it);
    }
  }

  json resolved() const {
    json out = json::object();
    for (const auto& e : entries_) out[e.name] = e.dump();
    return out;
  }

 private:
  struct Entry {
    std::string name;
    CLI::Option* option;
    std::function<void(const json&)> load;
    std::function<json()> dump;
  };
  std::vector<Entry> entries_;
};

struct Common {
  std::string config;
  std::string out = "slinky-out";
  std::uint64_t seed = 1;
};

struct Context {
  std::string command;
  fs::path out;
  json parameters;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;

  void write(const std::string& name, const std::string& text) {
    writeText(out / name, text);
    outputs.push_back(name);
  }
  void warn(const std::string& w) {
    std::cerr << "warning: " << w << '\n';
    warnings.push_back(w);
  }
  void finish() {
    json manifest = {{"command", command}, {"parameters", parameters}, {"outputs", outputs},
                     {"warnings", warnings}};
    writeText(out / "manifest.json", manifest.dump(2) + "\n");
  }
};

json loadConfig(const std::string& path, const std::string& command) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw InvalidParams("cannot read config file " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParams("config must be a JSON object");
  // A section named after the command refines the top-level keys.
  json flat = json::object();
  for (auto& [k, v] : j.items())
    if (!v.is_object()) flat[k] = v;
  if (auto it = j.find(command); it != j.end() && it->is_object())
    for (auto& [k, v] : it->items()) flat[k] = v;
  return flat;
}

double resonantShift(int n, double U) { return U * n * (n - 1) / 2.0; }

template <typename F>
std::string csv(F&& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

// ---- bands

struct BandsCfg {
  int n = 3;
  int mu = 1;
  int grid = 400;
  double kappa = 1.0;
  double U = 0.0;
  bool with_shift = false;
};

int cmdBands(const BandsCfg& c, Context& ctx) {
  if (c.grid < 8) throw InvalidParams("grid must be at least 8");
  auto bands = bandStructure(BlochFamily::slinky(c.n, c.mu), c.grid, c.kappa);
  for (int b = 0; b < bands.bands(); ++b)
    if (!bands.isolated(b)) ctx.warn("BandTouching: band " + std::to_string(b + 1) + " touches a neighbour");
  if (c.with_shift) bands.energies.array() += resonantShift(c.n, c.U);

  ctx.write("bands.csv", csv([&](std::ostream& os) { writeBandsCsv(os, bands); }));
  const json zak = zakJson(bands);
  ctx.write("zak.json", zak.dump(2) + "\n");

  int quantizedNonzero = 0;
  for (const auto& z : bands.zak)
    if (z && isQuantized(*z) && phaseDistance(*z, 0.0) > 1e-2) ++quantizedNonzero;
  std::cout << "bands: " << bands.bands() << " bands on " << bands.points() << " momenta, " << quantizedNonzero
            << " quantized nonzero Zak phases\n";
  return 0;
}

// ---- edges

struct EdgesCfg {
  int n = 3;
  int mu = 1;
  int cells = 40;
  int grid = 2048;
  int edge_width = 0;
  double kappa = 1.0;
  double U = 0.0;
  double threshold = 0.5;
  bool with_shift = false;
};

int cmdEdges(const EdgesCfg& c, Context& ctx) {
  auto chain = buildEffectiveChain(c.n, c.cells, Boundary::open, c.mu);
  if (c.with_shift) chain = withResonantShift(chain, c.U);
  const auto report = openChainSpectrum(chain, c.kappa, c.edge_width, c.grid);

  json gaps = json::array();
  const auto bands = bandEnergies(BlochFamily::slinky(c.n, c.mu), c.grid, c.kappa);
  for (std::size_t g = 0; g < report.gaps.size(); ++g)
    gaps.push_back({{"gap", g},
                    {"low", report.gaps[g].first},
                    {"high", report.gaps[g].second},
                    {"closed", bands.gapClosed(static_cast<int>(g))}});

  json states = json::array();
  json pairs = json::array();
  try {
    const auto sel = selectEdgeStates(report, c.threshold);
    for (auto i : sel.indices)
      states.push_back({{"index", i},
                        {"energy", report.energies(i)},
                        {"edge_weight", report.edge_weight(i)},
                        {"gap", *report.gap_index[static_cast<std::size_t>(i)]}});
    for (const auto& p : sel.pairs)
      pairs.push_back({{"first", p.first}, {"second", p.second}, {"splitting", p.splitting}});
  } catch (const NoEdgeStates&) {
  }

  const json summary = {{"chain", toJson(chain)},
                        {"edge_cells", report.edge_cells},
                        {"in_gap_counts", report.inGapCounts()},
                        {"gaps", gaps},
                        {"edge_states", states},
                        {"pairs", pairs}};
  ctx.write("spectrum.csv", csv([&](std::ostream& os) { writeSpectrumCsv(os, report); }));
  ctx.write("edges.json", summary.dump(2) + "\n");
  std::cout << "edges: " << report.size() << " levels, " << states.size() << " edge states\n";
  return 0;
}

// ---- nedge

struct NedgeCfg {
  int n = 3;
  int mu = 1;
  int N = 40;
  int depth = 2;
  int edge_width = 0;
  int grid = 400;
  int count = 0;
  double kappa = 1.0;
  double U = 13.5;
  double W = 30.0;
};

int cmdNedge(const NedgeCfg& c, Context& ctx) {
  const auto p = chainParams(c.n, c.mu, c.N, c.U, c.W, c.kappa);
  for (const auto& w : modelWarnings(p)) ctx.warn(w);
  const int width = c.edge_width > 0 ? c.edge_width : defaultEdgeWidth(c.N);
  const auto basis = enumerateTruncatedBasis(p, c.depth);
  const auto h = buildHamiltonian(p, basis);

  EigenOptions eo;
  const double shift = resonantShift(c.n, c.U);
  eo.shift = shift;
  eo.count = c.count > 0 ? c.count : std::min<Eigen::Index>(basis.size(), 2 * c.N);
  const auto curve = edgeBosonNumber(eigensolve(h, eo), basis, width);

  const auto bands = bandEnergies(BlochFamily::slinky(c.n, c.mu), c.grid, c.kappa);
  json peaks = json::array();
  for (const auto& g : edgePeaks(curve, bands, shift, perturbativeMargin(c.kappa, c.U))) {
    json e = {{"gap", g.gap},
              {"low", g.gap_low + shift},
              {"high", g.gap_high + shift},
              {"window_states", g.window_states}};
    if (g.index >= 0) {
      e["energy"] = g.energy;
      e["edge_number"] = g.edge_number;
    }
    peaks.push_back(e);
  }
  ctx.write("nedge.csv", csv([&](std::ostream& os) { writeEdgeCurveCsv(os, curve); }));
  ctx.write("peaks.json", json{{"dimension", basis.size()}, {"edge_width", width}, {"peaks", peaks}}.dump(2) + "\n");
  std::cout << "nedge: dimension " << basis.size() << ", " << curve.points.size() << " eigenstates\n";
  return 0;
}

// ---- quench

struct QuenchCfg {
  int n = 3;
  int mu = 3;
  int Nquench = 30;
  int Nsource = 60;
  int gap = -1;
  int depth = 2;
  int edge_width = 0;
  int grid = 400;
  int samples = 2000;
  int site = 0;
  std::optional<int> source_index;
  std::optional<double> tmax;
  double kappa = 1.0;
  double U = 13.5;
  double W = 30.0;
  double max_leak = 0.05;
};

int cmdQuench(const QuenchCfg& c, Context& ctx) {
  if (c.samples < 16) throw InvalidParams("need at least 16 samples");
  const auto source = chainParams(c.n, c.mu, c.Nsource, c.U, c.W, c.kappa);
  const auto quench = chainParams(c.n, c.mu, c.Nquench, c.U, c.W, c.kappa);
  for (const auto& w : modelWarnings(quench)) ctx.warn(w);

  PrepareOptions po;
  po.depth = c.depth;
  po.edge_width = c.edge_width;
  po.max_loss = c.max_leak;
  po.bloch_grid = c.grid;
  InitialSelector which = LeftEdgeState{c.mu, c.gap >= 0 ? c.gap : c.n - 2};
  if (c.source_index) which = SourceEigenstate{*c.source_index};
  const auto prepared = prepareInitialState(source, quench, which, po);

  const auto h = buildHamiltonian(quench, prepared.basis);
  std::optional<double> splitting;
  const bool exact = h.dimension() <= EigenOptions{}.dense_limit;
  if (exact) splitting = dominantPair(denseEigensolve(h), prepared.vector).splitting;
  const double tMax = c.tmax ? *c.tmax : suggestedDuration(splitting, c.kappa);
  const double dt = tMax / (c.samples - 1);
  const auto trace = evolve(h, prepared.basis, prepared.vector, tMax, dt);

  if (c.site > trace.sites()) throw InvalidParams("site out of range");
  const int site = c.site > 0 ? c.site - 1 : dominantSite(trace, 0, trace.sites());
  const double frequency = oscillationFrequency(trace, site);

  json summary = {{"U", c.U},
                  {"frequency", frequency},
                  {"splitting", splitting ? json(*splitting) : json(nullptr)},
                  {"relative_error", splitting ? json(std::abs(frequency - *splitting) / *splitting) : json(nullptr)},
                  {"site", site + 1},
                  {"restriction_loss", prepared.restriction_loss},
                  {"dimension", prepared.basis.size()},
                  {"method", exact ? "eigen" : "krylov"},
                  {"t_max", tMax},
                  {"dt", dt},
                  {"max_norm_drift", trace.norm_drift.maxCoeff()}};
  ctx.write("heatmap.csv", csv([&](std::ostream& os) { writeHeatmapCsv(os, trace); }));
  ctx.write("summary.json", summary.dump(2) + "\n");
  std::cout << "quench: frequency " << formatReal(frequency) << " at site " << site + 1 << '\n';
  return 0;
}

// ---- validate

int cmdValidate(std::uint64_t seed, Context& ctx) {
  const json checks = runValidation(seed);
  bool ok = true;
  for (const auto& c : checks) {
    const bool pass = c["pass"].get<bool>();
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << c["name"].get<std::string>() << '\n';
  }
  ctx.write("validate.json", json{{"pass", ok}, {"checks", checks}}.dump(2) + "\n");
  return ok ? 0 : 2;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Slinky-state simulations of the resonant extended Bose-Hubbard chain"};
  app.require_subcommand(1);

  Common common;
  auto addCommon = [&](CLI::App* sub, Params& params) {
    sub->add_option("--config", common.config, "JSON config file; flags override its values");
    params.add(sub, "out", common.out, "output directory");
    params.add(sub, "seed", common.seed, "seed for randomized checks");
  };

  BandsCfg bc;
  Params bp;
  auto* bands = app.add_subcommand("bands", "Bloch bands and Zak phases");
  bp.add(bands, "n", bc.n, "bosons per slinky cluster");
  bp.add(bands, "mu", bc.mu, "unit-cell type");
  bp.add(bands, "grid", bc.grid, "momentum points");
  bp.add(bands, "kappa", bc.kappa, "hopping");
  bp.add(bands, "U", bc.U, "on-site interaction, used with --with-shift");
  bp.flag(bands, "with-shift", bc.with_shift, "add U n(n-1)/2 to the bands");
  addCommon(bands, bp);

  EdgesCfg ec;
  Params ep;
  auto* edges = app.add_subcommand("edges", "open effective chain spectrum");
  ep.add(edges, "n", ec.n, "bosons per slinky cluster");
  ep.add(edges, "mu", ec.mu, "unit-cell type");
  ep.add(edges, "cells", ec.cells, "unit cells");
  ep.add(edges, "grid", ec.grid, "momentum points for the gap reference");
  ep.add(edges, "edge-width", ec.edge_width, "edge cells per end (0: a quarter of the chain)");
  ep.add(edges, "kappa", ec.kappa, "hopping");
  ep.add(edges, "U", ec.U, "on-site interaction, used with --with-shift");
  ep.add(edges, "threshold", ec.threshold, "edge-weight threshold");
  ep.flag(edges, "with-shift", ec.with_shift, "include U n(n-1)/2 on the diagonal");
  addCommon(edges, ep);

  NedgeCfg nc;
  Params np;
  auto* nedge = app.add_subcommand("nedge", "edge boson number of the impurity-terminated chain");
  np.add(nedge, "n", nc.n, "bosons");
  np.add(nedge, "mu", nc.mu, "unit-cell type selecting the impurity pattern");
  np.add(nedge, "N", nc.N, "lattice sites");
  np.add(nedge, "depth", nc.depth, "hop depth of the truncated basis");
  np.add(nedge, "edge-width", nc.edge_width, "edge sites per end (0: a quarter of the lattice)");
  np.add(nedge, "grid", nc.grid, "momentum points for the gap reference");
  np.add(nedge, "count", nc.count, "eigenpairs for the iterative solver (0: 2N)");
  np.add(nedge, "kappa", nc.kappa, "hopping");
  np.add(nedge, "U", nc.U, "on-site interaction (V = U)");
  np.add(nedge, "W", nc.W, "impurity strength");
  addCommon(nedge, np);

  QuenchCfg qc;
  Params qp;
  auto* quench = app.add_subcommand("quench", "edge-state quench dynamics");
  qp.add(quench, "n", qc.n, "bosons");
  qp.add(quench, "mu", qc.mu, "unit-cell type selecting the impurity pattern");
  qp.add(quench, "Nquench", qc.Nquench, "sites of the quench lattice");
  qp.add(quench, "Nsource", qc.Nsource, "sites of the lattice the edge state is taken from");
  qp.add(quench, "gap", qc.gap, "effective gap hosting the edge state (-1: the highest)");
  qp.add(quench, "depth", qc.depth, "hop depth of the truncated basis");
  qp.add(quench, "edge-width", qc.edge_width, "edge sites per end (0: a quarter of the lattice)");
  qp.add(quench, "grid", qc.grid, "momentum points for the gap reference");
  qp.add(quench, "samples", qc.samples, "time samples");
  qp.add(quench, "site", qc.site, "1-based site for the frequency (0: most active)");
  qp.add(quench, "source-index", qc.source_index, "start from this source eigenstate instead");
  qp.add(quench, "tmax", qc.tmax, "duration (default: four beat periods)");
  qp.add(quench, "kappa", qc.kappa, "hopping");
  qp.add(quench, "U", qc.U, "on-site interaction (V = U)");
  qp.add(quench, "W", qc.W, "impurity strength");
  qp.add(quench, "max-leak", qc.max_leak, "largest weight the restriction may discard");
  addCommon(quench, qp);

  Params vp;
  auto* validate = app.add_subcommand("validate", "run the invariant checks");
  addCommon(validate, vp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  Context ctx;
  ctx.command = sub->get_name();
  Params* params = sub == bands ? &bp : sub == edges ? &ep : sub == nedge ? &np : sub == quench ? &qp : &vp;
  try {
    params->overlay(loadConfig(common.config, ctx.command));
    ctx.parameters = params->resolved();
    ctx.out = common.out;
    int code = 0;
    if (sub == bands) code = cmdBands(bc, ctx);
    else if (sub == edges) code = cmdEdges(ec, ctx);
    else if (sub == nedge) code = cmdNedge(nc, ctx);
    else if (sub == quench) code = cmdQuench(qc, ctx);
    else code = cmdValidate(common.seed, ctx);
    ctx.finish();
    return code;
  } catch (const Error& e) {
    reportError(e.code(), e.what());
    return exitCode(e);
  } catch (const json::exception& e) {
    reportError("InvalidParams", e.what());
    return 2;
  } catch (const std::exception& e) {
    reportError("Failure", e.what());
    return 3;
  }
}

}  // namespace

int run(int argc, char** argv) { return dispatch(argc, argv); }

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "slinky");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return dispatch(static_cast<int>(storage.size()), argv.data());
}

}  // namespace slinky::cli
