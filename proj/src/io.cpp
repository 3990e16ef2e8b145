#include "slinky/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace slinky {

std::string formatReal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Guard against a locale that swaps the decimal point.
  for (char* c = buf; *c; ++c)
    if (*c == ',') *c = '.';
  return buf;
}

void writeBandsCsv(std::ostream& os, const BandStructure& bands) {
  os << "k";
  for (int b = 0; b < bands.bands(); ++b) os << ",E_" << b + 1;
  os << "\r\n";
  for (int m = 0; m < bands.points(); ++m) {
    os << formatReal(bands.k(m));
    for (int b = 0; b < bands.bands(); ++b) os << ',' << formatReal(bands.energies(m, b));
    os << "\r\n";
  }
}

void writeSpectrumCsv(std::ostream& os, const SpectrumReport& report) {
  os << "index,E,edgeWeight,inGap,gapIndex\r\n";
  for (Eigen::Index i = 0; i < report.size(); ++i) {
    const auto& g = report.gap_index[static_cast<std::size_t>(i)];
    os << i << ',' << formatReal(report.energies(i)) << ',' << formatReal(report.edge_weight(i)) << ','
       << (g ? "true" : "false") << ',';
    if (g) os << *g;
    os << "\r\n";
  }
}

void writeEdgeCurveCsv(std::ostream& os, const EdgeNumberCurve& curve) {
  os << "E,N_edge\r\n";
  for (const auto& p : curve.points) os << formatReal(p.energy) << ',' << formatReal(p.edge_number) << "\r\n";
}

void writeHeatmapCsv(std::ostream& os, const QuenchTrace& trace) {
  os << "t";
  for (int j = 0; j < trace.sites(); ++j) os << ",p" << j + 1;
  os << "\r\n";
  for (Eigen::Index s = 0; s < trace.samples(); ++s) {
    os << formatReal(trace.times(s));
    for (int j = 0; j < trace.sites(); ++j) os << ',' << formatReal(trace.distribution(s, j));
    os << "\r\n";
  }
}

nlohmann::json toJson(const Basis& basis) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : basis) states.push_back(s.occupations);
  return {{"sites", basis.sites()}, {"bosons", basis.bosons()}, {"states", std::move(states)}};
}

nlohmann::json toJson(const SparseHermitianOperator& op) {
  nlohmann::json entries = nlohmann::json::array();
  const auto& m = op.matrix();
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseHermitianOperator::Matrix::InnerIterator it(m, c); it; ++it)
      entries.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
  return {{"dimension", op.dimension()}, {"entries", std::move(entries)}};
}

nlohmann::json toJson(const EffectiveChain& chain) {
  return {{"bosons", chain.bosons},
          {"cells", chain.cells},
          {"boundary", std::string(toString(chain.boundary))},
          {"mu", chain.mu},
          {"amplitudes", chain.amplitudes},
          {"onsite_shift", chain.onsite_shift}};
}

nlohmann::json toJson(const ModelParams& p) {
  nlohmann::json j = {{"kappa", p.kappa},   {"U", p.U},
                      {"V", p.V},           {"W", p.W},
                      {"sites", p.sites},   {"bosons", p.bosons},
                      {"boundary", std::string(toString(p.boundary))}};
  j["left_cutoff"] = p.left_cutoff ? nlohmann::json(*p.left_cutoff) : nlohmann::json(nullptr);
  j["right_cutoff"] = p.right_cutoff ? nlohmann::json(*p.right_cutoff) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json zakJson(const BandStructure& bands) {
  nlohmann::json out = nlohmann::json::array();
  for (int b = 0; b < bands.bands(); ++b) {
    const auto& z = bands.zak[static_cast<std::size_t>(b)];
    if (z)
      out.push_back({{"band", b + 1}, {"phase", *z}, {"quantized", isQuantized(*z)}});
    else
      out.push_back({{"band", b + 1}, {"phase", nullptr}, {"quantized", false}});
  }
  return out;
}

void writeText(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

}  // namespace slinky
