#include "taptips/styling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <json.hpp>

#include "taptips/error.hpp"

namespace taptips {
namespace {

double linearize(std::uint8_t channel) {
  const double c = channel / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

Eigen::Vector3d as_vector(const Lab& lab) { return {lab.l, lab.a, lab.b}; }

[[noreturn]] void invalid_palette(const std::string& what) {
  throw StyleError(StyleError::Kind::invalid_palette, what);
}

}  // namespace

Lab to_lab(Srgb color) {
  const double r = linearize(color.r);
  const double g = linearize(color.g);
  const double b = linearize(color.b);

  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  // D65 white.
  const double fx = lab_f(x / 0.95047);
  const double fy = lab_f(y / 1.00000);
  const double fz = lab_f(z / 1.08883);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e(const Lab& x, const Lab& y) { return (as_vector(x) - as_vector(y)).norm(); }

std::string to_hex(Srgb color) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", color.r, color.g, color.b);
  return buf;
}

Srgb parse_hex(std::string_view text) {
  if (text.size() != 7 || text.front() != '#') invalid_palette("expected #RRGGBB, got \"" + std::string(text) + "\"");
  std::array<std::uint8_t, 3> channels{};
  for (std::size_t i = 0; i < 3; ++i) {
    unsigned value = 0;
    for (char c : text.substr(1 + 2 * i, 2)) {
      value <<= 4;
      if (c >= '0' && c <= '9') {
        value |= static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        value |= static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        value |= static_cast<unsigned>(c - 'A' + 10);
      } else {
        invalid_palette("expected #RRGGBB, got \"" + std::string(text) + "\"");
      }
    }
    channels[i] = static_cast<std::uint8_t>(value);
  }
  return {channels[0], channels[1], channels[2]};
}

ColorStats image_color_stats(std::span<const Srgb> pixels) {
  if (pixels.empty()) throw StyleError(StyleError::Kind::empty_samples, "no pixel samples");

  std::vector<Eigen::Vector3d> labs;
  labs.reserve(pixels.size());
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (Srgb p : pixels) {
    labs.push_back(as_vector(to_lab(p)));
    mean += labs.back();
  }
  mean /= static_cast<double>(labs.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& v : labs) {
    const Eigen::Vector3d d = v - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(labs.size());

  ColorStats stats;
  stats.mean = {mean.x(), mean.y(), mean.z()};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) stats.covariance[i][j] = cov(i, j);
  }
  return stats;
}

std::vector<Srgb> subsample(std::span<const Srgb> pixels, std::size_t limit) {
  if (pixels.size() <= limit) return {pixels.begin(), pixels.end()};
  std::vector<Srgb> out;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.push_back(pixels[i * pixels.size() / limit]);
  return out;
}

double popout_score(Srgb candidate, const ColorStats& stats) {
  Eigen::Matrix3d sigma;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) sigma(i, j) = stats.covariance[i][j];
  }
  sigma += kCovarianceRegularization * Eigen::Matrix3d::Identity();
  const Eigen::Vector3d d = as_vector(to_lab(candidate)) - as_vector(stats.mean);

  const Eigen::LLT<Eigen::Matrix3d> llt(sigma);
  if (llt.info() == Eigen::Success) return llt.matrixL().solve(d).norm();
  // Only reachable for hand-built stats whose covariance is not PSD.
  return std::sqrt(std::max(0.0, d.dot(sigma.ldlt().solve(d))));
}

void validate(const Palette& palette) {
  if (palette.colors.empty()) invalid_palette("palette is empty");
  std::set<std::array<std::uint8_t, 3>> seen;
  for (Srgb c : palette.colors) {
    if (!seen.insert({c.r, c.g, c.b}).second) invalid_palette("palette repeats " + to_hex(c));
  }
}

Palette parse_palette(std::string_view document) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    invalid_palette(std::string("palette is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || root.size() != 1 || !root.contains("palette") || !root["palette"].is_array()) {
    invalid_palette("expected {\"palette\": [\"#RRGGBB\", ...]}");
  }
  Palette palette;
  for (const auto& entry : root["palette"]) {
    if (!entry.is_string()) invalid_palette("palette entries must be strings");
    palette.colors.push_back(parse_hex(entry.get<std::string>()));
  }
  validate(palette);
  return palette;
}

std::string serialize_palette(const Palette& palette) {
  nlohmann::ordered_json root;
  root["palette"] = nlohmann::ordered_json::array();
  for (Srgb c : palette.colors) root["palette"].push_back(to_hex(c));
  return root.dump(2) + "\n";
}

const Palette& default_palette() {
  static const Palette palette = [] {
    Palette p;
    for (const char* hex : {"#FF0000", "#FF6D00", "#FFDB00", "#B6FF00", "#49FF00", "#00FF24", "#00FF92", "#00FFFF",
                            "#0092FF", "#0024FF", "#4900FF", "#B600FF", "#FF00DB", "#FF006D", "#000000", "#FFFFFF"}) {
      p.colors.push_back(parse_hex(hex));
    }
    return p;
  }();
  return palette;
}

namespace detail {

std::pair<std::size_t, std::size_t> choose_pair(std::span<const double> scores, std::span<const Lab> labs,
                                                double min_delta_e) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable sort keeps lower indices first among equal scores.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  for (std::size_t u : order) {
    for (std::size_t v : order) {
      if (v != u && delta_e(labs[u], labs[v]) >= min_delta_e) return {u, v};
    }
  }
  throw StyleError(StyleError::Kind::infeasible_palette,
                   "no two palette colours are at least " + std::to_string(min_delta_e) + " apart in CIELAB");
}

}  // namespace detail

OutlineStyle choose_outline_style(const ColorStats& stats, const Palette& palette, double min_delta_e) {
  validate(palette);
  std::vector<double> scores;
  std::vector<Lab> labs;
  for (Srgb c : palette.colors) {
    scores.push_back(popout_score(c, stats));
    labs.push_back(to_lab(c));
  }
  const auto [u, v] = detail::choose_pair(scores, labs, min_delta_e);
  OutlineStyle style{palette.colors[u], palette.colors[v]};
  if (delta_e(labs[u], labs[v]) < min_delta_e) {
    throw StyleError(StyleError::Kind::infeasible_palette, "chosen outline colours are too similar");
  }
  return style;
}

}  // namespace taptips
