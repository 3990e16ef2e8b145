#pragma once

#include <json.hpp>

#include <filesystem>
#include <ostream>
#include <string>

#include "slinky/bloch.hpp"
#include "slinky/diagnostics.hpp"
#include "slinky/dynamics.hpp"
#include "slinky/effective.hpp"
#include "slinky/fock.hpp"

namespace slinky {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string formatReal(double x);

void writeBandsCsv(std::ostream& os, const BandStructure& bands);
void writeSpectrumCsv(std::ostream& os, const SpectrumReport& report);
void writeEdgeCurveCsv(std::ostream& os, const EdgeNumberCurve& curve);
/// One row per time: t, p1 .. pN.
void writeHeatmapCsv(std::ostream& os, const QuenchTrace& trace);

nlohmann::json toJson(const Basis& basis);
/// COO triples {row, col, re, im}.
nlohmann::json toJson(const SparseHermitianOperator& op);
nlohmann::json toJson(const EffectiveChain& chain);
nlohmann::json toJson(const ModelParams& p);
/// [{band, phase, quantized}], phase null for touching bands.
nlohmann::json zakJson(const BandStructure& bands);

void writeText(const std::filesystem::path& path, const std::string& text);

}  // namespace slinky
