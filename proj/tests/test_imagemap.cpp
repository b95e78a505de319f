#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "taptips/cli.hpp"
#include "taptips/error.hpp"
#include "taptips/imagemap.hpp"

namespace taptips {
namespace {

constexpr const char* kMinimal = R"({
  "version": 1,
  "rooms": [{"id": "parlor", "name": "Parlor", "walls": [
    {"id": "w1", "image": "images/w1.png", "width": 240, "height": 320, "targets": [
      {"id": "panel", "label": "Wood panel",
       "shape": {"polygon": [[10, 10], [100, 10], [10, 100]]},
       "action": {"kind": "text_description", "text": "Redwood paneling."}}]}]}]
})";

std::string with_targets(const std::string& targets) {
  return R"({"version": 1, "rooms": [{"id": "r", "name": "R", "walls": [
    {"id": "w1", "image": "a.png", "width": 100, "height": 100, "targets": [)" +
         targets + "]}]}]}";
}

std::string target_json(const std::string& id, const std::string& polygon,
                        const std::string& action = R"({"kind": "text_description", "text": "x"})") {
  return R"({"id": ")" + id + R"(", "label": "L", "shape": {"polygon": )" + polygon + R"(}, "action": )" + action + "}";
}

GuidebookError::Kind error_kind(const std::string& doc) {
  try {
    parse_guidebook(doc);
  } catch (const GuidebookError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "document parsed without error";
  return GuidebookError::Kind::empty;
}

TEST(ParseGuidebook, MinimalDocument) {
  const Guidebook g = parse_guidebook(kMinimal);
  ASSERT_EQ(g.rooms.size(), 1u);
  ASSERT_EQ(g.rooms[0].walls.size(), 1u);
  const Wall& w = g.rooms[0].walls[0];
  EXPECT_EQ(w.id, "w1");
  EXPECT_EQ(w.width, 240);
  EXPECT_EQ(w.height, 320);
  ASSERT_EQ(w.targets.size(), 1u);
  EXPECT_EQ(w.targets[0].id, "panel");
  EXPECT_EQ(w.targets[0].shape.size(), 3u);
  EXPECT_EQ(w.targets[0].action, (ContentAction{ActionKind::text_description, "Redwood paneling."}));
}

TEST(ParseGuidebook, DuplicateTargetIdNamesWallAndId) {
  const std::string doc = with_targets(target_json("panel", "[[1,1],[5,1],[1,5]]") + "," +
                                       target_json("panel", "[[10,10],[50,10],[10,50]]"));
  try {
    parse_guidebook(doc);
    FAIL();
  } catch (const GuidebookError& e) {
    EXPECT_EQ(e.kind(), GuidebookError::Kind::duplicate_id);
    EXPECT_NE(std::string(e.what()).find("\"panel\""), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("\"w1\""), std::string::npos);
  }
}

TEST(ParseGuidebook, TwoVertexPolygonIsDegenerate) {
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,5]]"))), GuidebookError::Kind::degenerate_shape);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[1,1],[5,5]]"))), GuidebookError::Kind::degenerate_shape);
}

TEST(ParseGuidebook, SyntaxErrorReportsLineAndColumn) {
  const std::string doc = "{\n  \"version\": 1,\n  \"rooms\": [ oops ]\n}";
  try {
    parse_guidebook(doc);
    FAIL();
  } catch (const GuidebookError& e) {
    EXPECT_EQ(e.kind(), GuidebookError::Kind::syntax);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 14u);
  }
}

TEST(ParseGuidebook, RejectsStructuralProblems) {
  using K = GuidebookError::Kind;
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[500,1],[1,5]]"))), K::out_of_bounds);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[-1,1],[5,1],[1,5]]"))), K::out_of_bounds);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,1],[1,5]]", R"({"kind": "video", "path": "v.mp4"})"))),
            K::unknown_action);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,1],[1,5]]", R"({"kind": "audio_clip"})"))),
            K::missing_field);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,1],[1,5]]", R"({"kind": "audio_clip", "path": ""})"))),
            K::missing_field);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,1],[1,5]]", R"({"kind": "audio_clip", "path": "/abs.ogg"})"))),
            K::missing_field);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,1],[1,5]]", R"({"kind": "text_description", "text": ""})"))),
            K::missing_field);
  EXPECT_EQ(error_kind(R"({"version": 1, "rooms": []})"), K::empty);
  EXPECT_EQ(error_kind(R"({"version": 2, "rooms": []})"), K::invalid_value);
  EXPECT_EQ(error_kind(R"({"version": 1, "rooms": [{"id": "r", "name": "R", "walls": [
      {"id": "w", "width": 10, "height": 10, "targets": []}]}]})"),
            K::missing_field);
  EXPECT_EQ(error_kind(R"({"version": 1, "rooms": [{"id": "r", "name": "R", "walls": [
      {"id": "w", "image": "a.png", "width": 0, "height": 10, "targets": []}]}]})"),
            K::invalid_value);
  EXPECT_EQ(error_kind(R"({"version": 1, "rooms": [{"id": "r", "name": "R", "walls": [
      {"id": "w", "image": "a.png", "width": 10, "height": 10, "targets": []},
      {"id": "w", "image": "b.png", "width": 10, "height": 10, "targets": []}]}]})"),
            K::duplicate_id);
}

TEST(ParseGuidebook, UnknownKeysAreRejected) {
  using K = GuidebookError::Kind;
  EXPECT_EQ(error_kind(R"({"version": 1, "rooms": [], "author": "me"})"), K::unknown_key);
  EXPECT_EQ(error_kind(with_targets(R"({"id": "a", "label": "L", "colour": "red",
      "shape": {"polygon": [[1,1],[5,1],[1,5]]}, "action": {"kind": "text_description", "text": "x"}})")),
            K::unknown_key);
  EXPECT_EQ(error_kind(with_targets(target_json("a", "[[1,1],[5,1],[1,5]]",
                                                R"({"kind": "text_description", "text": "x", "path": "p"})"))),
            K::unknown_key);
}

TEST(ParseGuidebook, EmptyTargetListIsAllowed) {
  const Guidebook g = parse_guidebook(with_targets(""));
  EXPECT_TRUE(g.rooms[0].walls[0].targets.empty());
  EXPECT_EQ(hit_test(g.rooms[0].walls[0], {5, 5}), std::nullopt);
}

TEST(HitTest, CentroidMissAndOverlap) {
  const Guidebook g = parse_guidebook(with_targets(target_json("a", "[[10,10],[60,10],[60,60],[10,60]]") + "," +
                                                   target_json("b", "[[40,40],[90,40],[90,90],[40,90]]")));
  const Wall& w = g.rooms[0].walls[0];
  EXPECT_EQ(hit_test(w, {35, 35}), "a");
  EXPECT_EQ(hit_test(w, {5, 95}), std::nullopt);
  // (50,50) lies in both; brute-force confirm before asserting the tie-break.
  ASSERT_TRUE(point_in_polygon({50, 50}, w.targets[0].shape));
  ASSERT_TRUE(point_in_polygon({50, 50}, w.targets[1].shape));
  EXPECT_EQ(hit_test(w, {50, 50}), "a");
  EXPECT_EQ(hit_test(w, {80, 80}), "b");
}

TEST(HitTest, OutsideWallIsAMiss) {
  const Guidebook g = parse_guidebook(with_targets(target_json("a", "[[0,0],[100,0],[100,100],[0,100]]")));
  const Wall& w = g.rooms[0].walls[0];
  EXPECT_EQ(hit_test(w, {100, 100}), "a");
  EXPECT_EQ(hit_test(w, {100.5, 50}), std::nullopt);
  EXPECT_EQ(hit_test(w, {-0.5, 50}), std::nullopt);
}

TEST(HitTestProperty, NoneIffNoTargetContainsPoint) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-5, 405);
  for (int trial = 0; trial < 100; ++trial) {
    const Wall w = gen::random_wall(rng, "w", 10, trial % 2 == 0);
    for (int k = 0; k < 200; ++k) {
      const Point p{coord(rng), coord(rng)};
      const bool in_wall = p.x >= 0 && p.y >= 0 && p.x <= w.width && p.y <= w.height;
      std::optional<std::string> expected;
      for (const Target& t : w.targets) {
        if (in_wall && point_in_polygon(p, t.shape)) {
          expected = t.id;
          break;
        }
      }
      ASSERT_EQ(hit_test(w, p), expected);
    }
  }
}

TEST(HitTestProperty, FirstMatchStableUnderAppending) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coord(0, 400);
  for (int trial = 0; trial < 50; ++trial) {
    Wall w = gen::random_wall(rng, "w", 10, false);
    const Wall extra = gen::random_wall(rng, "x", 10, false);
    std::vector<Point> probes;
    for (int k = 0; k < 100; ++k) probes.push_back({coord(rng), coord(rng)});
    std::vector<std::optional<std::string>> before;
    for (const Point& p : probes) before.push_back(hit_test(w, p));
    for (Target t : extra.targets) {
      t.id = "appended_" + t.id;
      w.targets.push_back(std::move(t));
    }
    for (std::size_t k = 0; k < probes.size(); ++k) {
      if (before[k]) ASSERT_EQ(hit_test(w, probes[k]), before[k]);
    }
  }
}

TEST(SerializeGuidebook, MinimalRoundTrip) {
  const Guidebook g = parse_guidebook(kMinimal);
  EXPECT_EQ(parse_guidebook(serialize_guidebook(g)), g);
}

TEST(SerializeGuidebook, DemoPackRoundTrip) {
  const Guidebook g = parse_guidebook(cli::read_file(std::string(TAPTIPS_DATA_DIR) + "/demo/demo.gbk.json"));
  const std::string once = serialize_guidebook(g);
  EXPECT_EQ(parse_guidebook(once), g);
  EXPECT_EQ(serialize_guidebook(parse_guidebook(once)), once);
}

TEST(SerializeGuidebook, EmptyRoomsRejected) {
  EXPECT_THROW(serialize_guidebook(Guidebook{}), GuidebookError);
}

TEST(SerializeGuidebookProperty, ParseOfSerializeIsIdentity) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Guidebook g = gen::random_guidebook(rng);
    const std::string doc = serialize_guidebook(g);
    const Guidebook back = parse_guidebook(doc);
    ASSERT_EQ(back, g);
    ASSERT_EQ(serialize_guidebook(back), doc);
  }
}

}  // namespace
}  // namespace taptips
