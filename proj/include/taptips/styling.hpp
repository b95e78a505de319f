#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace taptips {

struct Srgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Srgb&, const Srgb&) = default;
};

// CIELAB, D65 reference white.
struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const Lab&, const Lab&) = default;
};

Lab to_lab(Srgb color);
// CIE76 colour difference (Euclidean distance in L*a*b*).
double delta_e(const Lab& x, const Lab& y);

std::string to_hex(Srgb color);
// Accepts "#RRGGBB" (either case). Throws StyleError(invalid_palette).
Srgb parse_hex(std::string_view text);

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Colour distribution of a wall image in CIELAB.
struct ColorStats {
  Lab mean;
  Matrix3 covariance{};  // population covariance, symmetric PSD
};

inline constexpr double kCovarianceRegularization = 1e-3;
inline constexpr double kDefaultMinDeltaE = 25.0;
inline constexpr std::size_t kMaxStatsSamples = 10'000;

// Mean and covariance of the samples in CIELAB. Throws StyleError(empty_samples).
ColorStats image_color_stats(std::span<const Srgb> pixels);

// Evenly strided subsample of at most `limit` pixels, first pixel included.
std::vector<Srgb> subsample(std::span<const Srgb> pixels, std::size_t limit = kMaxStatsSamples);

// Mahalanobis distance of the candidate from the image distribution, with
// the covariance regularized by kCovarianceRegularization * I.
double popout_score(Srgb candidate, const ColorStats& stats);

struct Palette {
  std::vector<Srgb> colors;
};

// Checks non-empty and distinct; throws StyleError(invalid_palette).
void validate(const Palette& palette);
// Parses {"palette": ["#RRGGBB", ...]}.
Palette parse_palette(std::string_view document);
std::string serialize_palette(const Palette& palette);
// 14 high-chroma hues around the circle plus black and white.
const Palette& default_palette();

struct OutlineStyle {
  Srgb unvisited;
  Srgb visited;
  double stroke_width = 2.0;

  friend bool operator==(const OutlineStyle&, const OutlineStyle&) = default;
};

// Picks the highest-popout colour for unvisited outlines and the best
// remaining colour at least `min_delta_e` away for visited ones. Only
// colours that have such a partner are eligible for the unvisited slot. Ties
// go to the lower palette index. Throws StyleError(infeasible_palette) when
// no pair is far enough apart.
OutlineStyle choose_outline_style(const ColorStats& stats, const Palette& palette,
                                  double min_delta_e = kDefaultMinDeltaE);

namespace detail {
// Selection core of choose_outline_style over precomputed scores; returns
// (unvisited index, visited index).
std::pair<std::size_t, std::size_t> choose_pair(std::span<const double> scores, std::span<const Lab> labs,
                                                double min_delta_e);
}  // namespace detail

}  // namespace taptips
