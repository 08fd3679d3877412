#include "spectraflow/commands.hpp"
#include "spectraflow/config.hpp"
#include "spectraflow/errors.hpp"
#include "spectraflow/outputs.hpp"
#include "spectraflow/svg.hpp"

#include <doctest.h>

#include <json.hpp>

#include <sstream>

using namespace spectraflow;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

} // namespace

TEST_CASE("config defaults") {
  const RunConfig cfg = parse_run_config("{}");
  CHECK(cfg.model == ModelKind::Rabi);
  CHECK(cfg.omega == 1.0);
  CHECK(cfg.model_params().omega0 == 1.0);
  CHECK(cfg.g_min == 0.0);
  CHECK(cfg.g_max == 1.5);
  CHECK(cfg.g_steps == 151);
  CHECK(cfg.levels == 50);
  CHECK_FALSE(cfg.n_cut.has_value());
  CHECK(cfg.histogram_g == 1.2);
  CHECK(cfg.n_bins == 25);
}

TEST_CASE("config parsing and validation") {
  const RunConfig cfg = parse_run_config(
      R"({"model": "asym_rabi", "omega": 2.0, "epsilon": 0.3, "n_cut": 64, "levels": 10, "output_dir": "x"})");
  CHECK(cfg.model == ModelKind::AsymmetricRabi);
  CHECK(cfg.model_params().omega0 == 2.0);
  CHECK(cfg.n_cut == 64u);
  CHECK(parse_run_config(R"({"n_cut": "auto"})").n_cut == std::nullopt);

  CHECK_THROWS_AS(parse_run_config(R"({"g_min": 1.0, "g_max": 1.0})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"g_steps": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"levels": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"levels": 20, "n_cut": 10})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"n_cut": "big"})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"model": "jc", "epsilon": 0.2})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"levles": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"omega": "one"})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("{"), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::sqrt(2.0) - 1.0) == "0.414213562373");
  CHECK(format_number(123456.7890123456) == "123456.789012");
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(ConfigError("x")) == 2);
  CHECK(exit_code_for(NumericalError("x")) == 3);
  CHECK(exit_code_for(ConvergenceError("x")) == 4);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("spectrum command for JC over {0, 0.5}") {
  const RunConfig cfg = parse_run_config(R"({"model": "jc", "g_min": 0, "g_max": 0.5, "g_steps": 2, "levels": 3})");
  const auto out = run_command(Command::Spectrum, cfg);
  REQUIRE(out.files.size() == 1);
  CHECK(out.files[0].first == "spectrum.csv");
  const auto rows = lines(out.files[0].second);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "g,line_id,sorted_index,energy,parity");
  CHECK(rows[1] == "0,0,0,-0.5,-1");
  // rows are g-major, then line id
  CHECK(rows[2].rfind("0,1,", 0) == 0);
  CHECK(rows[3].rfind("0,2,", 0) == 0);
  CHECK(rows[4].rfind("0.5,0,", 0) == 0);
  std::vector<std::string> energies;
  for (int r = 1; r <= 3; ++r) energies.push_back(rows[r].substr(rows[r].find(',', 4) + 1));
  CHECK(energies[1].rfind("0.5,", 0) == 0);
  CHECK(energies[2].rfind("0.5,", 0) == 0);
}

TEST_CASE("uncertainty and histogram commands") {
  const RunConfig cfg = parse_run_config(
      R"({"model": "rabi", "g_min": 0, "g_max": 0.4, "g_steps": 3, "levels": 4, "n_cut": 30, "histogram_g": 0.0})");
  const auto unc = run_command(Command::Uncertainty, cfg);
  const auto rows = lines(unc.files[0].second);
  CHECK(rows[0] == "g,eigen_index,sx,sz,dsx,dsy,delta");
  CHECK(rows.size() == 1 + 3 * 4);
  for (std::size_t r = 1; r <= 4; ++r) CHECK(rows[r].substr(rows[r].rfind(',') + 1) == "0.5");

  const auto hist = run_command(Command::Histogram, cfg);
  const auto hrows = lines(hist.files[0].second);
  CHECK(hrows[0] == "bin_lo,bin_hi,count,probability");
  CHECK(hrows.size() == 26);
  CHECK(hrows.back() == "0.48,0.5,4,1");
}

TEST_CASE("converge command prints one JSON object") {
  const RunConfig cfg = parse_run_config(R"({"g_min": 0, "g_max": 0.0001, "levels": 4})");
  const auto out = run_command(Command::Converge, cfg);
  CHECK(out.files.empty());
  const auto doc = nlohmann::json::parse(out.stdout_text);
  CHECK(doc.at("n_cut").get<int>() == 32);
  CHECK(doc.at("history").size() == 1);
  CHECK(doc.at("energies").size() == 4);
}

TEST_CASE("svg plots are rendered from the CSV text") {
  const RunConfig cfg = parse_run_config(R"({"model": "jc", "g_max": 0.5, "g_steps": 6, "levels": 3, "n_cut": 8})");
  CommandOptions with_svg;
  with_svg.svg = true;
  const auto plain = run_command(Command::Spectrum, cfg);
  const auto drawn = run_command(Command::Spectrum, cfg, with_svg);
  REQUIRE(drawn.files.size() == 2);
  CHECK(drawn.files[0] == plain.files[0]);
  CHECK(drawn.files[1].first == "spectrum.svg");
  CHECK(drawn.files[1].second == spectrum_svg(plain.files[0].second));
  CHECK(drawn.files[1].second.find("<polyline") != std::string::npos);

  const std::string hist = "bin_lo,bin_hi,count,probability\n0,0.25,1,0.25\n0.25,0.5,3,0.75\n";
  const std::string svg = histogram_svg(hist);
  CHECK(svg.find("<rect fill=\"#4c72b0\"") != std::string::npos);
  CHECK_THROWS_AS(histogram_svg("a,b\n1,2\n"), ConfigError);
}
