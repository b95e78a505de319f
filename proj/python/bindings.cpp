#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taptips/engine.hpp"
#include "taptips/error.hpp"
#include "taptips/geometry.hpp"
#include "taptips/imagemap.hpp"
#include "taptips/styling.hpp"
#include "taptips/tracelog.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace taptips;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

py::dict effect_to_dict(const Effect& e) {
  return std::visit(
      Overloaded{
          [](const effect::ShowDescription& d) { return py::dict("type"_a = "show_description", "target"_a = d.target, "text"_a = d.text); },
          [](const effect::PlayAudio& a) { return py::dict("type"_a = "play_audio", "target"_a = a.target, "path"_a = a.path); },
          [](const effect::TipsTriggered& t) { return py::dict("type"_a = "tips_triggered", "t"_a = t.t); },
          [](const effect::TipsInterrupted& t) { return py::dict("type"_a = "tips_interrupted", "t"_a = t.t); },
          [](const effect::TargetVisited& v) { return py::dict("type"_a = "target_visited", "wall"_a = v.wall, "target"_a = v.target); },
          [](const effect::WallChanged& w) { return py::dict("type"_a = "wall_changed", "wall"_a = w.wall); },
          [](const effect::TipModeChanged& m) { return py::dict("type"_a = "tip_mode_changed", "on"_a = m.on); },
      },
      e);
}

py::list effects_to_list(const std::vector<Effect>& effects) {
  py::list out;
  for (const Effect& e : effects) out.append(effect_to_dict(e));
  return out;
}

py::dict frame_to_dict(const RenderFrame& frame) {
  py::list entries;
  for (const FrameEntry& e : frame.entries) {
    entries.append(py::dict("target"_a = e.target, "alpha"_a = e.alpha, "visited"_a = e.visited));
  }
  return py::dict("t"_a = frame.t, "wall"_a = frame.wall, "entries"_a = entries);
}

PolicyKind policy_from(const std::string& name) {
  const auto p = parse_policy(name);
  if (!p) throw py::value_error("unknown policy: " + name);
  return *p;
}

// Python-side session: owns its guidebook so callers can pass plain text.
class PySession {
 public:
  PySession(const std::string& guidebook_text, const std::string& wall, const std::string& policy,
            const EngineConfig& config)
      : session_(new_session(std::make_shared<const Guidebook>(parse_guidebook(guidebook_text)), wall,
                             policy_from(policy), config)) {}

  py::list handle(const PointerEvent& event) { return effects_to_list(session_.apply(event).effects); }
  py::dict render_at(TimeMs t) const { return frame_to_dict(session_.session().render_at(t)); }
  std::optional<std::pair<TimeMs, TimeMs>> window() const {
    const auto w = session_.session().active_tip_window();
    if (!w) return std::nullopt;
    return std::make_pair(w->start, w->end);
  }
  std::string current_wall() const { return session_.session().current_wall().id; }
  std::string trace() {
    RecordingSession copy = session_;
    return serialize_trace(copy.finish());
  }

 private:
  RecordingSession session_;
};

}  // namespace

PYBIND11_MODULE(taptips, m) {
  m.doc() = "Tap-tips imagemap interaction engine";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), "x"_a, "y"_a)
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def(py::self == py::self)
      .def("__repr__", [](const Point& p) { return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; });

  py::class_<Polygon>(m, "Polygon")
      .def(py::init([](const std::vector<std::pair<double, double>>& pts) {
        std::vector<Point> vertices;
        for (const auto& [x, y] : pts) vertices.push_back({x, y});
        return Polygon(std::move(vertices));
      }))
      .def_property_readonly("vertices", [](const Polygon& p) {
        std::vector<std::pair<double, double>> out;
        for (const Point& v : p.vertices()) out.emplace_back(v.x, v.y);
        return out;
      });

  m.def("point_in_polygon", &point_in_polygon, "p"_a, "polygon"_a);
  m.def("bounding_box", [](const Polygon& poly) {
    const Box b = bounding_box(poly);
    return std::make_pair(b.min, b.max);
  });

  m.def("validate_guidebook", [](const std::string& text) {
    const GuidebookCounts c = count(parse_guidebook(text));
    return py::dict("rooms"_a = c.rooms, "walls"_a = c.walls, "targets"_a = c.targets);
  }, "Parse and validate a guidebook document; returns its counts.");
  m.def("normalize_guidebook", [](const std::string& text) { return serialize_guidebook(parse_guidebook(text)); },
        "Parse then serialize a guidebook document.");
  m.def("hit_test", [](const std::string& text, const std::string& wall_id, double x, double y) {
    const Guidebook g = parse_guidebook(text);
    const Wall* wall = g.find_wall(wall_id);
    if (wall == nullptr) throw py::key_error(wall_id);
    return hit_test(*wall, {x, y});
  }, "guidebook"_a, "wall"_a, "x"_a, "y"_a);

  py::class_<EngineConfig>(m, "EngineConfig")
      .def(py::init<>())
      .def_readwrite("tip_hold_ms", &EngineConfig::tip_hold_ms)
      .def_readwrite("tip_fade_ms", &EngineConfig::tip_fade_ms)
      .def_readwrite("slide_hold_threshold_ms", &EngineConfig::slide_hold_threshold_ms)
      .def_readwrite("tap_max_travel_px", &EngineConfig::tap_max_travel_px)
      .def_readwrite("tap_max_duration_ms", &EngineConfig::tap_max_duration_ms);

  m.def("tip_alpha", &tip_alpha, "config"_a, "elapsed_ms"_a);

  py::class_<PointerEvent>(m, "PointerEvent")
      .def_static("down", &PointerEvent::down, "x"_a, "y"_a, "t"_a)
      .def_static("move", &PointerEvent::move, "x"_a, "y"_a, "t"_a)
      .def_static("up", &PointerEvent::up, "x"_a, "y"_a, "t"_a)
      .def_static("toggle", &PointerEvent::toggle, "t"_a)
      .def_static("navigate", &PointerEvent::navigate, "wall"_a, "t"_a)
      .def_readonly("t", &PointerEvent::t);

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&, const std::string&, const std::string&, const EngineConfig&>(), "guidebook"_a,
           "wall"_a, "policy"_a = "tap_tips", "config"_a = EngineConfig{})
      .def("handle_event", &PySession::handle, "event"_a)
      .def("render_at", &PySession::render_at, "t"_a)
      .def("active_tip_window", &PySession::window)
      .def_property_readonly("current_wall", &PySession::current_wall)
      .def("trace", &PySession::trace, "Recorded trace as JSON Lines");

  m.def("lab", [](int r, int g, int b) {
    const Lab lab = to_lab({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)});
    return std::make_tuple(lab.l, lab.a, lab.b);
  });
  m.def("popout_scores", [](const std::vector<std::string>& pixels_hex, const std::vector<std::string>& palette_hex) {
    std::vector<Srgb> pixels;
    for (const auto& h : pixels_hex) pixels.push_back(parse_hex(h));
    const ColorStats stats = image_color_stats(pixels);
    std::vector<double> scores;
    for (const auto& h : palette_hex) scores.push_back(popout_score(parse_hex(h), stats));
    return scores;
  }, "pixels"_a, "palette"_a, "Popout score of each palette colour against the pixel sample.");
  m.def("choose_outline_style", [](const std::vector<std::string>& pixels_hex, const std::vector<std::string>& palette_hex,
                                   double min_delta_e) {
    std::vector<Srgb> pixels;
    for (const auto& h : pixels_hex) pixels.push_back(parse_hex(h));
    Palette palette;
    for (const auto& h : palette_hex) palette.colors.push_back(parse_hex(h));
    const OutlineStyle style = choose_outline_style(image_color_stats(pixels), palette, min_delta_e);
    return std::make_pair(to_hex(style.unvisited), to_hex(style.visited));
  }, "pixels"_a, "palette"_a, "min_delta_e"_a = kDefaultMinDeltaE);

  m.def("metrics", [](const std::string& trace_text) {
    const TraceMetrics x = compute_metrics(parse_trace(trace_text));
    return py::dict("taps"_a = x.taps, "hits"_a = x.hits, "misses"_a = x.misses, "tips_shown"_a = x.tips_shown,
                    "max_hit_streak"_a = x.max_hit_streak, "discoveries"_a = x.discoveries,
                    "tips_per_discovery"_a = x.tips_per_discovery, "checklist_alternations"_a = x.checklist_alternations);
  }, "trace"_a);
  m.def("replay", [](const std::string& guidebook_text, const std::string& trace_text, const std::string& policy,
                     const EngineConfig& config) {
    auto g = std::make_shared<const Guidebook>(parse_guidebook(guidebook_text));
    const auto records = pointer_records(parse_trace(trace_text));
    const ReplayResult r = replay(g, policy_from(policy), config, records);
    return py::make_tuple(effects_to_list(r.effects), serialize_trace(r.trace));
  }, "guidebook"_a, "trace"_a, "policy"_a = "tap_tips", "config"_a = EngineConfig{});
}
