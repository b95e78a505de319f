#include "taptips/imagemap.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <set>

#include <json.hpp>

#include "taptips/error.hpp"

namespace taptips {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;
using Kind = GuidebookError::Kind;

constexpr int kFormatVersion = 1;

[[noreturn]] void fail(Kind kind, const std::string& where, const std::string& what) {
  throw GuidebookError(kind, where + ": " + what);
}

bool is_relative_path(std::string_view path) {
  if (path.empty()) return false;
  if (path.front() == '/' || path.front() == '\\') return false;
  // Windows drive letters, e.g. "C:".
  if (path.size() >= 2 && path[1] == ':') return false;
  return true;
}

void require_object(const Json& node, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!node.is_object()) fail(Kind::invalid_value, where, "expected an object");
  for (const auto& [key, value] : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(Kind::unknown_key, where, "unknown key \"" + key + "\"");
    }
  }
}

const Json& field(const Json& node, const std::string& where, const char* key) {
  const auto it = node.find(key);
  if (it == node.end()) fail(Kind::missing_field, where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& node, const std::string& where, const char* key) {
  const Json& value = field(node, where, key);
  if (!value.is_string()) fail(Kind::invalid_value, where + "." + key, "expected a string");
  return value.get<std::string>();
}

int dimension_field(const Json& node, const std::string& where, const char* key) {
  const Json& value = field(node, where, key);
  if (!value.is_number_integer()) fail(Kind::invalid_value, where + "." + key, "expected an integer");
  const auto n = value.get<std::int64_t>();
  if (n <= 0 || n > std::numeric_limits<int>::max()) {
    fail(Kind::invalid_value, where + "." + key, "must be a positive integer");
  }
  return static_cast<int>(n);
}

const Json& array_field(const Json& node, const std::string& where, const char* key) {
  const Json& value = field(node, where, key);
  if (!value.is_array()) fail(Kind::invalid_value, where + "." + key, "expected an array");
  return value;
}

std::string indexed(const std::string& where, const char* key, std::size_t i) {
  return where + "." + key + "[" + std::to_string(i) + "]";
}

Polygon parse_shape(const Json& node, const std::string& where) {
  require_object(node, where, {"polygon"});
  const Json& points = array_field(node, where, "polygon");
  std::vector<Point> vertices;
  vertices.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Json& pt = points[i];
    const std::string at = indexed(where, "polygon", i);
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
      fail(Kind::invalid_value, at, "expected [x, y]");
    }
    vertices.push_back({pt[0].get<double>(), pt[1].get<double>()});
  }
  if (vertices.size() < 3) {
    fail(Kind::degenerate_shape, where, "polygon has " + std::to_string(vertices.size()) + " vertices, need at least 3");
  }
  try {
    return Polygon(std::move(vertices));
  } catch (const GeometryError& e) {
    fail(Kind::degenerate_shape, where, e.what());
  }
}

ContentAction parse_action(const Json& node, const std::string& where) {
  if (!node.is_object()) fail(Kind::invalid_value, where, "expected an object");
  const std::string kind = string_field(node, where, "kind");
  if (kind == "text_description") {
    require_object(node, where, {"kind", "text"});
    return {ActionKind::text_description, string_field(node, where, "text")};
  }
  if (kind == "audio_clip") {
    require_object(node, where, {"kind", "path"});
    return {ActionKind::audio_clip, string_field(node, where, "path")};
  }
  fail(Kind::unknown_action, where + ".kind", "unknown action kind \"" + kind + "\"");
}

Target parse_target(const Json& node, const std::string& where) {
  require_object(node, where, {"id", "label", "shape", "action"});
  std::string id = string_field(node, where, "id");
  std::string label = string_field(node, where, "label");
  Polygon shape = parse_shape(field(node, where, "shape"), where + ".shape");
  ContentAction action = parse_action(field(node, where, "action"), where + ".action");
  return Target{std::move(id), std::move(label), std::move(shape), std::move(action)};
}

Wall parse_wall(const Json& node, const std::string& where) {
  require_object(node, where, {"id", "image", "width", "height", "targets"});
  Wall wall;
  wall.id = string_field(node, where, "id");
  wall.image = string_field(node, where, "image");
  wall.width = dimension_field(node, where, "width");
  wall.height = dimension_field(node, where, "height");
  const Json& targets = array_field(node, where, "targets");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    wall.targets.push_back(parse_target(targets[i], indexed(where, "targets", i)));
  }
  return wall;
}

Room parse_room(const Json& node, const std::string& where) {
  require_object(node, where, {"id", "name", "walls"});
  Room room;
  room.id = string_field(node, where, "id");
  room.name = string_field(node, where, "name");
  const Json& walls = array_field(node, where, "walls");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    room.walls.push_back(parse_wall(walls[i], indexed(where, "walls", i)));
  }
  return room;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte_offset) {
  // nlohmann reports the 1-based offset of the byte that failed.
  const std::size_t end = std::min(byte_offset == 0 ? 0 : byte_offset - 1, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void validate_wall(const Wall& wall, const std::string& where) {
  if (wall.id.empty()) fail(Kind::invalid_value, where + ".id", "must not be empty");
  if (!is_relative_path(wall.image)) fail(Kind::missing_field, where + ".image", "needs a non-empty relative path");
  if (wall.width <= 0 || wall.height <= 0) fail(Kind::invalid_value, where, "width and height must be positive");

  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < wall.targets.size(); ++i) {
    const Target& target = wall.targets[i];
    const std::string at = indexed(where, "targets", i);
    if (target.id.empty()) fail(Kind::invalid_value, at + ".id", "must not be empty");
    if (!ids.insert(target.id).second) {
      fail(Kind::duplicate_id, at, "duplicate target id \"" + target.id + "\" on wall \"" + wall.id + "\"");
    }
    const Box box = bounding_box(target.shape);
    if (box.min.x < 0.0 || box.min.y < 0.0 || box.max.x > wall.width || box.max.y > wall.height) {
      fail(Kind::out_of_bounds, at + ".shape",
           "target \"" + target.id + "\" extends outside the " + std::to_string(wall.width) + "x" +
               std::to_string(wall.height) + " wall");
    }
    switch (target.action.kind) {
      case ActionKind::text_description:
        if (target.action.payload.empty()) fail(Kind::missing_field, at + ".action.text", "must not be empty");
        break;
      case ActionKind::audio_clip:
        if (!is_relative_path(target.action.payload)) {
          fail(Kind::missing_field, at + ".action.path", "needs a non-empty relative path");
        }
        break;
    }
  }
}

}  // namespace

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::text_description:
      return "text_description";
    case ActionKind::audio_clip:
      return "audio_clip";
  }
  return "?";
}

const Target* Wall::find_target(std::string_view target_id) const {
  for (const Target& t : targets) {
    if (t.id == target_id) return &t;
  }
  return nullptr;
}

const Wall* Guidebook::find_wall(std::string_view wall_id) const {
  for (const Room& room : rooms) {
    for (const Wall& wall : room.walls) {
      if (wall.id == wall_id) return &wall;
    }
  }
  return nullptr;
}

const Wall& Guidebook::first_wall() const {
  if (rooms.empty() || rooms.front().walls.empty()) throw GuidebookError(Kind::empty, "guidebook has no walls");
  return rooms.front().walls.front();
}

GuidebookCounts count(const Guidebook& g) {
  GuidebookCounts c;
  c.rooms = g.rooms.size();
  for (const Room& room : g.rooms) {
    c.walls += room.walls.size();
    for (const Wall& wall : room.walls) c.targets += wall.targets.size();
  }
  return c;
}

void validate(const Guidebook& g) {
  if (g.rooms.empty()) fail(Kind::empty, "rooms", "a guidebook needs at least one room");
  std::set<std::string_view> room_ids;
  for (std::size_t r = 0; r < g.rooms.size(); ++r) {
    const Room& room = g.rooms[r];
    const std::string where = "rooms[" + std::to_string(r) + "]";
    if (room.id.empty()) fail(Kind::invalid_value, where + ".id", "must not be empty");
    if (!room_ids.insert(room.id).second) fail(Kind::duplicate_id, where, "duplicate room id \"" + room.id + "\"");
    if (room.walls.empty()) fail(Kind::empty, where + ".walls", "room \"" + room.id + "\" has no walls");
    std::set<std::string_view> wall_ids;
    for (std::size_t w = 0; w < room.walls.size(); ++w) {
      const Wall& wall = room.walls[w];
      const std::string at = indexed(where, "walls", w);
      if (!wall_ids.insert(wall.id).second) {
        fail(Kind::duplicate_id, at, "duplicate wall id \"" + wall.id + "\" in room \"" + room.id + "\"");
      }
      validate_wall(wall, at);
    }
  }
}

Guidebook parse_guidebook(std::string_view document) {
  Json root;
  try {
    root = Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_and_column(document, e.byte);
    throw GuidebookError(Kind::syntax,
                         "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column),
                         line, column);
  }

  require_object(root, "document", {"version", "rooms"});
  const Json& version = field(root, "document", "version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kFormatVersion) {
    fail(Kind::invalid_value, "version", "unsupported format version");
  }

  Guidebook g;
  const Json& rooms = array_field(root, "document", "rooms");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    g.rooms.push_back(parse_room(rooms[i], "rooms[" + std::to_string(i) + "]"));
  }
  validate(g);
  return g;
}

std::string serialize_guidebook(const Guidebook& g) {
  validate(g);

  OrderedJson rooms = OrderedJson::array();
  for (const Room& room : g.rooms) {
    OrderedJson walls = OrderedJson::array();
    for (const Wall& wall : room.walls) {
      OrderedJson targets = OrderedJson::array();
      for (const Target& target : wall.targets) {
        OrderedJson polygon = OrderedJson::array();
        for (const Point& p : target.shape.vertices()) polygon.push_back({p.x, p.y});
        OrderedJson action;
        action["kind"] = to_string(target.action.kind);
        action[target.action.kind == ActionKind::text_description ? "text" : "path"] = target.action.payload;
        targets.push_back({{"id", target.id},
                           {"label", target.label},
                           {"shape", {{"polygon", std::move(polygon)}}},
                           {"action", std::move(action)}});
      }
      walls.push_back({{"id", wall.id},
                       {"image", wall.image},
                       {"width", wall.width},
                       {"height", wall.height},
                       {"targets", std::move(targets)}});
    }
    rooms.push_back({{"id", room.id}, {"name", room.name}, {"walls", std::move(walls)}});
  }

  OrderedJson root;
  root["version"] = kFormatVersion;
  root["rooms"] = std::move(rooms);
  return root.dump(2) + "\n";
}

std::optional<std::string> hit_test(const Wall& wall, Point p) {
  require_finite(p);
  if (p.x < 0.0 || p.y < 0.0 || p.x > wall.width || p.y > wall.height) return std::nullopt;
  for (const Target& target : wall.targets) {
    if (point_in_polygon(p, target.shape)) return target.id;
  }
  return std::nullopt;
}

}  // namespace taptips
