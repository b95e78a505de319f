#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "taptips/cli.hpp"
#include "taptips/error.hpp"
#include "taptips/image_io.hpp"
#include "taptips/styling.hpp"

namespace taptips {
namespace {

constexpr Srgb kGray{128, 128, 128};
constexpr Srgb kRed{255, 0, 0};
constexpr Srgb kBlack{0, 0, 0};
constexpr Srgb kWhite{255, 255, 255};

bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

TEST(Lab, MatchesReferenceOnGrid) {
  for (int r = 0; r < 256; r += 15) {
    for (int g = 0; g < 256; g += 15) {
      for (int b = 0; b < 256; b += 15) {
        const Srgb c{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
        const Lab got = to_lab(c);
        const Lab want = oracle::reference_lab(c);
        ASSERT_NEAR(got.l, want.l, 1e-9);
        ASSERT_NEAR(got.a, want.a, 1e-9);
        ASSERT_NEAR(got.b, want.b, 1e-9);
      }
    }
  }
}

TEST(Lab, Anchors) {
  EXPECT_NEAR(to_lab(kWhite).l, 100.0, 1e-3);
  EXPECT_NEAR(to_lab(kWhite).a, 0.0, 1e-2);
  EXPECT_NEAR(to_lab(kBlack).l, 0.0, 1e-12);
  // Published value for sRGB red under D65: L 53.24, a 80.09, b 67.20.
  EXPECT_NEAR(to_lab(kRed).l, 53.24, 0.01);
  EXPECT_NEAR(to_lab(kRed).a, 80.09, 0.01);
  EXPECT_NEAR(to_lab(kRed).b, 67.20, 0.01);
}

TEST(ColorStats, UniformImageHasZeroCovariance) {
  const std::vector<Srgb> pixels(100, kGray);
  const ColorStats s = image_color_stats(pixels);
  EXPECT_NEAR(s.mean.l, to_lab(kGray).l, 1e-12);
  EXPECT_NEAR(s.mean.a, to_lab(kGray).a, 1e-12);
  EXPECT_NEAR(s.mean.b, to_lab(kGray).b, 1e-12);
  for (const auto& row : s.covariance) {
    for (double v : row) EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST(ColorStats, BlackAndWhite) {
  const std::vector<Srgb> pixels = {kBlack, kWhite};
  const ColorStats s = image_color_stats(pixels);
  EXPECT_NEAR(s.mean.l, 50.0, 0.5);
  EXPECT_NEAR(s.mean.a, 0.0, 0.5);
  EXPECT_NEAR(s.mean.b, 0.0, 0.5);
  // Population variance of {0, 100} is 2500.
  EXPECT_NEAR(s.covariance[0][0], 2500.0, 1.0);
}

TEST(ColorStats, EmptyRejected) {
  try {
    image_color_stats(std::vector<Srgb>{});
    FAIL();
  } catch (const StyleError& e) {
    EXPECT_EQ(e.kind(), StyleError::Kind::empty_samples);
  }
}

TEST(Subsample, StrideAndPassThrough) {
  std::vector<Srgb> pixels;
  for (int i = 0; i < 250; ++i) pixels.push_back({static_cast<std::uint8_t>(i), 0, 0});
  EXPECT_EQ(subsample(pixels, 300).size(), 250u);
  const auto picked = subsample(pixels, 100);
  ASSERT_EQ(picked.size(), 100u);
  EXPECT_EQ(picked[0].r, 0);
  EXPECT_EQ(picked[1].r, 2);   // 1 * 250 / 100
  EXPECT_EQ(picked[99].r, 247);  // 99 * 250 / 100
}

TEST(Popout, ZeroAtTheMean) {
  const std::vector<Srgb> pixels(10, kGray);
  EXPECT_NEAR(popout_score(kGray, image_color_stats(pixels)), 0.0, 1e-12);
}

TEST(Popout, RedStandsOutOnGray) {
  std::vector<Srgb> pixels;
  for (int v = 100; v < 160; ++v) pixels.push_back({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v)});
  const ColorStats s = image_color_stats(pixels);
  EXPECT_GT(popout_score(kRed, s), popout_score({130, 130, 130}, s));
}

TEST(Popout, MatchesNaiveQuadraticForm) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const ColorStats s = oracle::random_stats(rng);
    for (Srgb c : oracle::random_palette(rng, 8).colors) {
      ASSERT_TRUE(close(popout_score(c, s), oracle::naive_popout(c, s)));
    }
  }
}

TEST(Popout, WiderSpreadNeverRaisesScore) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    ColorStats s = oracle::random_stats(rng);
    const Srgb c = oracle::random_palette(rng, 1).colors[0];
    const double base = popout_score(c, s);
    for (auto& row : s.covariance) {
      for (double& v : row) v *= 4.0;
    }
    const double wider = popout_score(c, s);
    ASSERT_LE(wider, base + 1e-9);
  }
}

TEST(Palette, ParseAndSerialize) {
  const Palette p = parse_palette(R"({"palette": ["#ff0000", "#00FF00"]})");
  ASSERT_EQ(p.colors.size(), 2u);
  EXPECT_EQ(p.colors[0], kRed);
  EXPECT_EQ(serialize_palette(p), "{\n  \"palette\": [\n    \"#FF0000\",\n    \"#00FF00\"\n  ]\n}\n");
  EXPECT_EQ(serialize_palette(parse_palette(serialize_palette(p))), serialize_palette(p));
}

TEST(Palette, Rejections) {
  for (const char* doc : {"", "[]", R"({"palette": []})", R"({"palette": ["#FF0000", "#ff0000"]})",
                          R"({"palette": ["red"]})", R"({"palette": [1]})", R"({"palette": ["#FF0000"], "x": 1})",
                          R"({"palette": ["#GG0000"]})"}) {
    try {
      parse_palette(doc);
      ADD_FAILURE() << doc;
    } catch (const StyleError& e) {
      EXPECT_EQ(e.kind(), StyleError::Kind::invalid_palette) << doc;
    }
  }
}

TEST(Palette, DefaultMatchesDataFile) {
  const Palette file = parse_palette(cli::read_file(std::string(TAPTIPS_DATA_DIR) + "/default_palette.json"));
  EXPECT_EQ(file.colors, default_palette().colors);
  EXPECT_EQ(default_palette().colors.size(), 16u);
}

TEST(Chooser, TwoColors) {
  const std::vector<Srgb> pixels(4, kWhite);
  const OutlineStyle style = choose_outline_style(image_color_stats(pixels), Palette{{kWhite, kBlack}});
  EXPECT_EQ(style.unvisited, kBlack);
  EXPECT_EQ(style.visited, kWhite);
  EXPECT_EQ(style.stroke_width, 2.0);
}

TEST(Chooser, DefaultPaletteOnGrayMatchesExhaustive) {
  std::vector<Srgb> pixels;
  for (int v = 90; v < 170; v += 3) pixels.push_back({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v)});
  const ColorStats s = image_color_stats(pixels);
  std::vector<double> scores;
  std::vector<Lab> labs;
  for (Srgb c : default_palette().colors) {
    scores.push_back(oracle::naive_popout(c, s));
    labs.push_back(oracle::reference_lab(c));
  }
  const auto want = oracle::exhaustive_pair(scores, labs, kDefaultMinDeltaE);
  ASSERT_TRUE(want);
  const OutlineStyle got = choose_outline_style(s, default_palette());
  EXPECT_EQ(got.unvisited, default_palette().colors[want->first]);
  EXPECT_EQ(got.visited, default_palette().colors[want->second]);
  EXPECT_GE(delta_e(to_lab(got.unvisited), to_lab(got.visited)), kDefaultMinDeltaE);
}

TEST(Chooser, TiesGoToLowerIndex) {
  const std::vector<double> scores = {1.0, 3.0, 3.0, 2.0};
  const std::vector<Lab> labs = {{0, 0, 0}, {50, 0, 0}, {80, 0, 0}, {20, 0, 0}};
  // 1 and 2 tie on score; 1 wins. Its best partner with delta-E >= 25 is 2 (30 apart).
  EXPECT_EQ(detail::choose_pair(scores, labs, 25.0), (std::pair<std::size_t, std::size_t>{1, 2}));
  // Packed colours: the only partner far enough from 1 is 0.
  const std::vector<Lab> near = {{0, 0, 0}, {50, 0, 0}, {60, 0, 0}, {55, 0, 0}};
  EXPECT_EQ(detail::choose_pair(scores, near, 25.0), (std::pair<std::size_t, std::size_t>{1, 0}));
}

TEST(Chooser, SkipsColorsWithoutPartner) {
  // The top scorer sits within delta-E of everything else.
  const std::vector<double> scores = {9.0, 1.0, 2.0};
  const std::vector<Lab> labs = {{50, 0, 0}, {30, 0, 0}, {70, 10, 0}};
  EXPECT_EQ(oracle::exhaustive_pair(scores, labs, 25.0), (std::optional<std::pair<std::size_t, std::size_t>>{{2, 1}}));
  EXPECT_EQ(detail::choose_pair(scores, labs, 25.0), (std::pair<std::size_t, std::size_t>{2, 1}));
}

TEST(Chooser, Infeasible) {
  const std::vector<Srgb> pixels(4, kGray);
  for (const Palette& p : {Palette{{kRed}}, Palette{{kRed, Srgb{250, 5, 5}}}}) {
    try {
      choose_outline_style(image_color_stats(pixels), p);
      FAIL();
    } catch (const StyleError& e) {
      EXPECT_EQ(e.kind(), StyleError::Kind::infeasible_palette);
    }
  }
}

TEST(Chooser, RandomInstancesMatchExhaustive) {
  std::mt19937_64 rng(2024);
  int feasible = 0;
  for (int i = 0; i < 300; ++i) {
    const ColorStats s = oracle::random_stats(rng);
    const Palette p = oracle::random_palette(rng, 32);
    std::vector<double> scores;
    std::vector<Lab> labs;
    for (Srgb c : p.colors) {
      scores.push_back(oracle::naive_popout(c, s));
      labs.push_back(oracle::reference_lab(c));
    }
    const auto want = oracle::exhaustive_pair(scores, labs, kDefaultMinDeltaE);
    if (!want) {
      EXPECT_THROW(choose_outline_style(s, p), StyleError);
      continue;
    }
    ++feasible;
    const OutlineStyle got = choose_outline_style(s, p);
    ASSERT_EQ(got.unvisited, p.colors[want->first]) << i;
    ASSERT_EQ(got.visited, p.colors[want->second]) << i;
  }
  EXPECT_GT(feasible, 200);
}

TEST(ImageIo, PngRoundTrip) {
  RgbImage image{3, 2, {kRed, kGray, kBlack, kWhite, {1, 2, 3}, {200, 100, 50}}};
  const auto path = std::filesystem::temp_directory_path() / "taptips_png_roundtrip.png";
  write_png(path, image);
  const RgbImage back = read_png(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.width, 3);
  EXPECT_EQ(back.height, 2);
  EXPECT_EQ(back.pixels, image.pixels);
}

TEST(ImageIo, MissingFileIsIoError) {
  EXPECT_THROW(read_png("/nonexistent/taptips.png"), IoError);
}

}  // namespace
}  // namespace taptips
