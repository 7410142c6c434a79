#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsieve/core.hpp"
#include "hsieve/errors.hpp"
#include "hsieve/util.hpp"

namespace hsieve {

/// The figure catalog: the number-line progression, the Full-variant term
/// stack grown one prime at a time, the odd-only stack, and the odd-only
/// family over all odd primes in range.
enum class FigureId : std::uint8_t {
  Progression,
  Full2,
  Full23,
  Full235,
  Full2357,
  Full235711,
  Odd3,
  Odd35,
  Odd357,
  Odd35711,
  OddAll,
  Custom
};

inline constexpr FigureId kNamedFigures[] = {
    FigureId::Progression, FigureId::Full2,    FigureId::Full23,
    FigureId::Full235,     FigureId::Full2357, FigureId::Full235711,
    FigureId::Odd3,        FigureId::Odd35,    FigureId::Odd357,
    FigureId::Odd35711,    FigureId::OddAll};

inline std::string_view figure_id_name(FigureId id) {
  switch (id) {
    case FigureId::Progression: return "progression";
    case FigureId::Full2: return "full2";
    case FigureId::Full23: return "full23";
    case FigureId::Full235: return "full235";
    case FigureId::Full2357: return "full2357";
    case FigureId::Full235711: return "full235711";
    case FigureId::Odd3: return "odd3";
    case FigureId::Odd35: return "odd35";
    case FigureId::Odd357: return "odd357";
    case FigureId::Odd35711: return "odd35711";
    case FigureId::OddAll: return "oddall";
    default: return "custom";
  }
}

inline std::optional<FigureId> parse_figure_id(std::string_view name) {
  for (FigureId id : kNamedFigures)
    if (figure_id_name(id) == name) return id;
  if (name == "custom") return FigureId::Custom;
  return std::nullopt;
}

/// Rendering parameters. Color roles: "primary" (plain waves), "highlight"
/// (the newest term of a stack), "reference" (context wave outside the
/// construction), "axis", "marker_fill", "marker_stroke", "residue" (markers
/// crossed by the anchor-2 term alone).
struct PlotSpec {
  FigureId id = FigureId::Custom;
  double x_min = 0.0;
  double x_max = 40.0;
  double amplitude = 0.9;
  double sample_step = 0.01;
  std::map<std::string, std::string> colors;

  void validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
      throw ConfigError("x range must be finite with positive width");
    if (!(sample_step > 0)) throw ConfigError("sample step must be > 0");
    if (!(amplitude > 0) || amplitude > 1)
      throw ConfigError("amplitude must lie in (0, 1]");
  }

  std::string color(const std::string& role, const char* fallback) const {
    auto it = colors.find(role);
    return it != colors.end() ? it->second : std::string(fallback);
  }
};

/// Rendered value of a term's wave. Zeros land exactly on the term's
/// multiples (every multiple for Full, odd multiples for OddOnly); the exact
/// integer zero_cross test, never this value, decides markers.
inline double waveform_value(const SieveTerm& term, double x,
                             double amplitude) {
  const double a = static_cast<double>(term.anchor);
  const double denom = term.variant == Variant::Full ? a : 2.0 * a;
  return amplitude * std::sin(std::numbers::pi * (x - a) / denom);
}

struct FigureWave {
  SieveTerm term;
  std::string color;
  std::string label;
};

struct FigureMarker {
  std::uint64_t n;
  std::string stroke;
};

struct FigureModel {
  PlotSpec spec;
  std::vector<FigureWave> waves;
  std::vector<FigureMarker> markers;
};

namespace detail {

inline std::string wave_label(const SieveTerm& t) {
  return std::to_string(t.anchor) + " + sin(1/" +
         std::to_string(period_units(t)) + ")";
}

}  // namespace detail

inline PlotSpec figure_spec(FigureId id) {
  PlotSpec spec;
  spec.id = id;
  const auto name = figure_id_name(id);
  const bool odd_stack = name.starts_with("odd") && id != FigureId::OddAll;
  spec.colors["highlight"] = odd_stack ? "blue" : "red";
  return spec;
}

/// Terms drawn by a named figure, bounded by the plot's x extent.
inline SieveConstruction figure_construction(FigureId id,
                                             std::uint64_t bound) {
  using C = SieveConstruction;
  switch (id) {
    case FigureId::Progression:
      return C::spawn(Variant::Full, SpawnRule::SurvivorsOnly, bound);
    case FigureId::Full2:
      return C::from_anchors(Variant::Full, SpawnRule::SurvivorsOnly, bound,
                             false, {2});
    case FigureId::Full23:
      return C::from_anchors(Variant::Full, SpawnRule::SurvivorsOnly, bound,
                             false, {2, 3});
    case FigureId::Full235:
      return C::from_anchors(Variant::Full, SpawnRule::SurvivorsOnly, bound,
                             false, {2, 3, 5});
    case FigureId::Full2357:
      return C::from_anchors(Variant::Full, SpawnRule::SurvivorsOnly, bound,
                             false, {2, 3, 5, 7});
    case FigureId::Full235711:
      return C::from_anchors(Variant::Full, SpawnRule::SurvivorsOnly, bound,
                             false, {2, 3, 5, 7, 11});
    case FigureId::Odd3:
      return C::from_anchors(Variant::OddOnly, SpawnRule::SurvivorsOnly, bound,
                             false, {3});
    case FigureId::Odd35:
      return C::from_anchors(Variant::OddOnly, SpawnRule::SurvivorsOnly, bound,
                             false, {3, 5});
    case FigureId::Odd357:
      return C::from_anchors(Variant::OddOnly, SpawnRule::SurvivorsOnly, bound,
                             false, {3, 5, 7});
    case FigureId::Odd35711:
      return C::from_anchors(Variant::OddOnly, SpawnRule::SurvivorsOnly, bound,
                             false, {3, 5, 7, 11});
    case FigureId::OddAll:
      return C::spawn(Variant::OddOnly, SpawnRule::SurvivorsOnly, bound);
    default:
      throw ConfigError("custom figures need an explicit construction");
  }
}

/// Assembles waves and markers. Markers come from exact crossers_of over the
/// integers in range; the sampled sinusoids are drawing only.
inline FigureModel build_figure_model(const PlotSpec& spec,
                                      const SieveConstruction& construction) {
  spec.validate();
  const std::uint64_t x_end =
      static_cast<std::uint64_t>(std::ceil(spec.x_max));
  if (construction.bound() < x_end)
    throw ConfigError("construction bound is smaller than the x range end");

  FigureModel model;
  model.spec = spec;

  const std::string primary = spec.color("primary", "black");
  const std::string highlight =
      spec.color("highlight", spec.id == FigureId::Progression ||
                                      spec.id == FigureId::OddAll
                                  ? "red"
                                  : "black");
  const auto& anchors = construction.anchors();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const SieveTerm term = construction.term_at(i);
    std::string color = primary;
    switch (spec.id) {
      case FigureId::Progression:
        if (term.anchor == 2) color = highlight;
        break;
      case FigureId::Full2:
      case FigureId::Full23:
      case FigureId::Full235:
      case FigureId::Full2357:
      case FigureId::Full235711:
      case FigureId::Odd3:
      case FigureId::Odd35:
      case FigureId::Odd357:
      case FigureId::Odd35711:
        if (i + 1 == anchors.size()) color = highlight;
        break;
      default:
        break;
    }
    model.waves.push_back(FigureWave{term, color, detail::wave_label(term)});
  }
  // The odd-only family is drawn against the anchor-2 wave for context; it
  // contributes no markers since it is not part of the construction.
  if (spec.id == FigureId::OddAll)
    model.waves.push_back(
        FigureWave{SieveTerm{2, Variant::Full}, spec.color("reference", "red"),
                   detail::wave_label(SieveTerm{2, Variant::Full})});

  const std::string marker_stroke = spec.color("marker_stroke", "black");
  const std::string residue_stroke = spec.color("residue", "red");
  const std::uint64_t n_lo =
      spec.x_min <= 2.0 ? 2
                        : static_cast<std::uint64_t>(std::ceil(spec.x_min));
  const std::uint64_t n_hi = std::min<std::uint64_t>(
      construction.bound(), static_cast<std::uint64_t>(spec.x_max));
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const auto crossers = construction.crossers_of(n);
    if (crossers.empty()) continue;
    const bool two_alone = crossers.size() == 1 && crossers.front() == 2;
    model.markers.push_back(FigureMarker{
        n, spec.id == FigureId::Progression && two_alone ? residue_stroke
                                                         : marker_stroke});
  }
  return model;
}

namespace detail {

// Fixed pixel geometry; golden outputs depend on these.
inline constexpr double kPxPerUnit = 30.0;
inline constexpr double kMarginLeft = 20.0;
inline constexpr double kMarginRight = 20.0;
inline constexpr double kMarginTop = 46.0;
inline constexpr double kMarginBottom = 26.0;
inline constexpr double kWaveHalfBand = 40.0;  // pixels for amplitude 1.0

inline std::string px(double v) { return fmt_fixed(v, 2); }

}  // namespace detail

/// Serializes a model to a standalone SVG document. Output bytes depend only
/// on the model: fixed-precision locale-free numbers, no timestamps.
inline std::string render_svg(const FigureModel& model) {
  const PlotSpec& spec = model.spec;
  spec.validate();
  const double width = detail::kMarginLeft + detail::kMarginRight +
                       (spec.x_max - spec.x_min) * detail::kPxPerUnit;
  const double height =
      detail::kMarginTop + detail::kMarginBottom + 2 * detail::kWaveHalfBand;
  const double y0 = detail::kMarginTop + detail::kWaveHalfBand;
  const auto x_px = [&](double x) {
    return detail::kMarginLeft + (x - spec.x_min) * detail::kPxPerUnit;
  };
  const auto y_px = [&](double v) {
    return y0 - v * detail::kWaveHalfBand;
  };
  const std::string axis_color = spec.color("axis", "black");

  std::string out;
  out.reserve(1 << 16);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         detail::px(width) + "\" height=\"" + detail::px(height) +
         "\" viewBox=\"0 0 " + detail::px(width) + " " + detail::px(height) +
         "\">\n";
  out += "<title>figure_" + std::string(figure_id_name(spec.id)) +
         "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Number line with integer ticks; numerals every five units.
  out += "<g stroke=\"" + axis_color + "\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + detail::px(x_px(spec.x_min)) + "\" y1=\"" +
         detail::px(y0) + "\" x2=\"" + detail::px(x_px(spec.x_max)) +
         "\" y2=\"" + detail::px(y0) + "\"/>\n";
  const long long tick_lo = static_cast<long long>(std::ceil(spec.x_min));
  const long long tick_hi = static_cast<long long>(std::floor(spec.x_max));
  for (long long t = tick_lo; t <= tick_hi; ++t) {
    const std::string cx = detail::px(x_px(static_cast<double>(t)));
    out += "<line x1=\"" + cx + "\" y1=\"" + detail::px(y0) + "\" x2=\"" + cx +
           "\" y2=\"" + detail::px(y0 + 4.0) + "\"/>\n";
  }
  out += "</g>\n";
  for (long long t = tick_lo; t <= tick_hi; ++t) {
    if (t % 5 != 0) continue;
    out += "<text x=\"" + detail::px(x_px(static_cast<double>(t))) +
           "\" y=\"" + detail::px(y0 + 16.0) +
           "\" font-family=\"monospace\" font-size=\"9\" fill=\"" +
           axis_color + "\" text-anchor=\"middle\">" + std::to_string(t) +
           "</text>\n";
  }

  // One polyline per wave, clipped to start at its anchor.
  for (const FigureWave& wave : model.waves) {
    const double start =
        std::max(spec.x_min, static_cast<double>(wave.term.anchor));
    if (start >= spec.x_max) continue;
    std::string d;
    for (std::uint64_t i = 0;; ++i) {
      const double x = start + static_cast<double>(i) * spec.sample_step;
      if (x >= spec.x_max) break;
      d += (i == 0 ? "M" : " L") + detail::px(x_px(x)) + " " +
           detail::px(y_px(waveform_value(wave.term, x, spec.amplitude)));
    }
    d += " L" + detail::px(x_px(spec.x_max)) + " " +
         detail::px(
             y_px(waveform_value(wave.term, spec.x_max, spec.amplitude)));
    out += "<path fill=\"none\" stroke=\"" + wave.color +
           "\" stroke-width=\"1\" d=\"" + d + "\"/>\n";
  }

  // White squares over every zero-crossed integer, drawn above the waves.
  const std::string marker_fill = spec.color("marker_fill", "white");
  for (const FigureMarker& marker : model.markers) {
    const double cx = x_px(static_cast<double>(marker.n));
    out += "<rect x=\"" + detail::px(cx - 3.5) + "\" y=\"" +
           detail::px(y0 - 3.5) +
           "\" width=\"7\" height=\"7\" fill=\"" + marker_fill +
           "\" stroke=\"" + marker.stroke + "\" stroke-width=\"1\"/>\n";
  }

  // Per-wave legend labels near each anchor, alternating between two rows.
  for (std::size_t i = 0; i < model.waves.size(); ++i) {
    const FigureWave& wave = model.waves[i];
    const double ax = static_cast<double>(wave.term.anchor);
    if (ax < spec.x_min || ax > spec.x_max) continue;
    const double y = i % 2 == 0 ? 16.0 : 32.0;
    out += "<text x=\"" + detail::px(x_px(ax)) + "\" y=\"" + detail::px(y) +
           "\" font-family=\"monospace\" font-size=\"9\" fill=\"" +
           wave.color + "\">" + wave.label + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

inline std::string render_figure(const PlotSpec& spec,
                                 const SieveConstruction& construction) {
  return render_svg(build_figure_model(spec, construction));
}

/// Catalog figure rendered with its default construction.
inline std::string render_named_figure(FigureId id, const PlotSpec& spec) {
  if (id == FigureId::Custom)
    throw ConfigError("custom figures need an explicit construction");
  const std::uint64_t bound = std::max<std::uint64_t>(
      2, static_cast<std::uint64_t>(std::ceil(spec.x_max)));
  return render_figure(spec, figure_construction(id, bound));
}

}  // namespace hsieve
