#include <doctest.h>

#include <clocale>
#include <sstream>

#include "slinky/io.hpp"

using namespace slinky;

TEST_SUITE("io") {

TEST_CASE("reals keep 17 significant digits") {
  for (double x : {0.1, -1.0 / 3.0, 6.02214076e23, 1e-300, std::sqrt(2.0)}) {
    const auto s = formatReal(x);
    CHECK(std::stod(s) == x);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(formatReal(0.5) == "0.5");
}

TEST_CASE("band csv layout") {
  const auto b = bandEnergies(BlochFamily::slinky(3, 3), 8);
  std::ostringstream os;
  writeBandsCsv(os, b);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "k,E_1,E_2,E_3\r");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("spectrum csv layout") {
  const auto r = openChainSpectrum(buildEffectiveChain(3, 8, Boundary::open, 3), 1.0, 0, 200);
  std::ostringstream os;
  writeSpectrumCsv(os, r);
  const auto text = os.str();
  CHECK(text.rfind("index,E,edgeWeight,inGap,gapIndex\r\n", 0) == 0);
  CHECK(text.find(",true,") != std::string::npos);
  CHECK(text.find(",false,\r\n") != std::string::npos);
}

TEST_CASE("basis and operator round trip through json") {
  auto p = chainParams(3, 3, 5, 4.0, 30.0);
  const auto basis = enumerateTruncatedBasis(p, 1);
  const auto h = buildHamiltonian(p, basis);

  const auto jb = nlohmann::json::parse(toJson(basis).dump());
  std::vector<FockState> states;
  for (const auto& occ : jb["states"]) states.push_back({occ.get<std::vector<int>>()});
  const Basis again(jb["sites"].get<int>(), states);
  REQUIRE(again.size() == basis.size());
  for (Basis::Index i = 0; i < basis.size(); ++i) CHECK(again[i].occupations == basis[i].occupations);

  const auto jo = nlohmann::json::parse(toJson(h).dump());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(h.dimension(), h.dimension());
  for (const auto& e : jo["entries"]) m(e[0].get<int>(), e[1].get<int>()) = {e[2].get<double>(), e[3].get<double>()};
  CHECK((m - h.dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zak json") {
  const auto b = bandStructure(BlochFamily::slinky(4, 3), 100);
  const auto z = zakJson(b);
  REQUIRE(z.size() == 4);
  CHECK(z[1]["phase"].is_null());
  CHECK(z[0]["band"] == 1);
  CHECK(z[0]["quantized"] == false);
}

TEST_CASE("chain json") {
  const auto j = toJson(buildEffectiveChain(3, 2, Boundary::open, 3));
  CHECK(j["boundary"] == "open");
  CHECK(j["mu"] == 3);
  CHECK(j["amplitudes"].size() == 5);
}

}
