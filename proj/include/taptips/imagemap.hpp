#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taptips/geometry.hpp"

namespace taptips {

enum class ActionKind { text_description, audio_clip };

// What selecting a target does. `payload` is the description text for
// text_description and a relative file path for audio_clip.
struct ContentAction {
  ActionKind kind = ActionKind::text_description;
  std::string payload;

  friend bool operator==(const ContentAction&, const ContentAction&) = default;
};

struct Target {
  std::string id;
  std::string label;
  Polygon shape;
  ContentAction action;

  friend bool operator==(const Target&, const Target&) = default;
};

// One imagemap: a wall photograph plus its hot regions in document order.
struct Wall {
  std::string id;
  std::string image;
  int width = 0;
  int height = 0;
  std::vector<Target> targets;

  const Target* find_target(std::string_view target_id) const;

  friend bool operator==(const Wall&, const Wall&) = default;
};

struct Room {
  std::string id;
  std::string name;
  std::vector<Wall> walls;

  friend bool operator==(const Room&, const Room&) = default;
};

struct Guidebook {
  std::vector<Room> rooms;

  // First wall with this id in document order. Wall ids only have to be
  // unique within a room, so packs that reuse ids resolve to the earliest.
  const Wall* find_wall(std::string_view wall_id) const;
  const Wall& first_wall() const;

  friend bool operator==(const Guidebook&, const Guidebook&) = default;
};

struct GuidebookCounts {
  std::size_t rooms = 0;
  std::size_t walls = 0;
  std::size_t targets = 0;
};
GuidebookCounts count(const Guidebook& g);

// Checks every structural invariant; throws GuidebookError naming the offending path.
void validate(const Guidebook& g);

// Parses a `.gbk.json` document. Syntax errors carry a line and column;
// unknown keys anywhere in the document are rejected.
Guidebook parse_guidebook(std::string_view document);

// Emits a document that parse_guidebook maps back to an equal Guidebook.
// Validates first, so an invalid value never reaches the output.
std::string serialize_guidebook(const Guidebook& g);

// First target in document order whose shape contains p. Points outside
// the wall are misses, not errors.
std::optional<std::string> hit_test(const Wall& wall, Point p);

std::string_view to_string(ActionKind kind);

}  // namespace taptips
