#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "hsieve/plot.hpp"
#include "support/oracles.hpp"

using namespace hsieve;

namespace {

std::set<std::uint64_t> marker_set(const FigureModel& model) {
  std::set<std::uint64_t> out;
  for (const auto& marker : model.markers) out.insert(marker.n);
  return out;
}

std::string golden_path(FigureId id) {
  return std::string(HSIEVE_GOLDEN_DIR) + "/figure_" +
         std::string(figure_id_name(id)) + ".svg";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("waveform zeros and extrema sit on the term's multiples") {
  CHECK(std::abs(waveform_value(SieveTerm{2, Variant::Full}, 4.0, 0.9)) <
        1e-12);
  CHECK(std::abs(waveform_value(SieveTerm{3, Variant::OddOnly}, 9.0, 0.9)) <
        1e-12);
  // Maximum magnitude at even multiples of an odd-only anchor.
  CHECK(std::abs(waveform_value(SieveTerm{3, Variant::OddOnly}, 6.0, 0.9)) ==
        Catch::Approx(0.9).epsilon(1e-9));
  CHECK(waveform_value(SieveTerm{5, Variant::Full}, 5.0, 0.9) ==
        Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("waveform zeros align with zero_cross for anchors up to 10^3") {
  for (std::uint64_t a = 2; a <= 1000; a = a < 60 ? a + 1 : a * 7 / 3) {
    const SieveTerm full{a, Variant::Full};
    for (std::uint64_t n = 2 * a; n <= 1000; n += a)
      CHECK(std::abs(waveform_value(full, static_cast<double>(n), 0.9)) <
            1e-9);
    if (a % 2 == 1) {
      const SieveTerm odd{a, Variant::OddOnly};
      for (std::uint64_t n = 3 * a; n <= 1000; n += 2 * a)
        CHECK(std::abs(waveform_value(odd, static_cast<double>(n), 0.9)) <
              1e-9);
    }
  }
}

TEST_CASE("figure markers come from exact crossings") {
  const auto odd3 = build_figure_model(
      figure_spec(FigureId::Odd3), figure_construction(FigureId::Odd3, 40));
  CHECK(marker_set(odd3) == std::set<std::uint64_t>{9, 15, 21, 27, 33, 39});

  const auto full2 = build_figure_model(
      figure_spec(FigureId::Full2), figure_construction(FigureId::Full2, 40));
  std::set<std::uint64_t> evens;
  for (std::uint64_t n = 4; n <= 40; n += 2) evens.insert(n);
  CHECK(marker_set(full2) == evens);

  for (FigureId id : kNamedFigures) {
    const auto construction = figure_construction(id, 40);
    const auto model = build_figure_model(figure_spec(id), construction);
    std::set<std::uint64_t> expected;
    for (std::uint64_t n = 2; n <= 40; ++n)
      if (!construction.crossers_of(n).empty()) expected.insert(n);
    CHECK(marker_set(model) == expected);
  }
}

TEST_CASE("progression markers single out the powers of two") {
  const auto model =
      build_figure_model(figure_spec(FigureId::Progression),
                         figure_construction(FigureId::Progression, 40));
  for (const auto& marker : model.markers) {
    const bool power_of_two =
        marker.n == 4 || marker.n == 8 || marker.n == 16 || marker.n == 32;
    CHECK(marker.stroke == (power_of_two ? "red" : "black"));
  }
}

TEST_CASE("wave coloring follows the figure catalog") {
  const auto full23 = build_figure_model(
      figure_spec(FigureId::Full23), figure_construction(FigureId::Full23, 40));
  REQUIRE(full23.waves.size() == 2);
  CHECK(full23.waves[0].color == "black");
  CHECK(full23.waves[1].color == "red");
  CHECK(full23.waves[1].label == "3 + sin(1/3)");

  const auto odd35 = build_figure_model(
      figure_spec(FigureId::Odd35), figure_construction(FigureId::Odd35, 40));
  CHECK(odd35.waves[1].color == "blue");
  CHECK(odd35.waves[1].label == "5 + sin(1/10)");

  const auto oddall = build_figure_model(
      figure_spec(FigureId::OddAll), figure_construction(FigureId::OddAll, 40));
  // Odd primes up to 40 plus the red anchor-2 context wave.
  REQUIRE(oddall.waves.size() == 12);
  CHECK(oddall.waves.back().term.anchor == 2);
  CHECK(oddall.waves.back().color == "red");
  CHECK(oddall.waves.front().color == "black");

  const auto progression =
      build_figure_model(figure_spec(FigureId::Progression),
                         figure_construction(FigureId::Progression, 40));
  CHECK(progression.waves.front().term.anchor == 2);
  CHECK(progression.waves.front().color == "red");
  CHECK(progression.waves[1].color == "black");
}

TEST_CASE("rendering is deterministic") {
  const auto spec = figure_spec(FigureId::Odd357);
  const auto construction = figure_construction(FigureId::Odd357, 40);
  CHECK(render_figure(spec, construction) ==
        render_figure(spec, construction));
}

TEST_CASE("an empty construction renders a bare number line") {
  PlotSpec spec;
  const auto construction = SieveConstruction::from_anchors(
      Variant::Full, SpawnRule::SurvivorsOnly, 40, false, {});
  const auto model = build_figure_model(spec, construction);
  CHECK(model.waves.empty());
  CHECK(model.markers.empty());
  const auto svg = render_svg(model);
  CHECK(svg.find("<path") == std::string::npos);
  CHECK(svg.find("<rect x=") == std::string::npos);
  CHECK(svg.find("<line") != std::string::npos);
}

TEST_CASE("plot specs validate their fields") {
  PlotSpec spec;
  spec.x_max = spec.x_min;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = PlotSpec{};
  spec.sample_step = 0.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = PlotSpec{};
  spec.amplitude = 1.5;
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  // Range/bound mismatch.
  CHECK_THROWS_AS(
      build_figure_model(PlotSpec{}, SieveConstruction::spawn(
                                         Variant::Full,
                                         SpawnRule::SurvivorsOnly, 20)),
      ConfigError);
}

TEST_CASE("rendered figures match the golden corpus byte for byte") {
  for (FigureId id : kNamedFigures) {
    const auto svg = render_named_figure(id, figure_spec(id));
    CHECK(svg == read_file(golden_path(id)));
  }
}
