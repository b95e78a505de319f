#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "taptips/geometry.hpp"
#include "taptips/imagemap.hpp"

namespace taptips {

// Milliseconds since session start. All engine time comes from event and
// query timestamps; there is no internal clock.
using TimeMs = std::int64_t;

enum class PolicyKind { none, always_on, modal, slide_lift, tap_tips };

std::string_view to_string(PolicyKind policy);
std::optional<PolicyKind> parse_policy(std::string_view name);
inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::none, PolicyKind::always_on, PolicyKind::modal,
                                              PolicyKind::slide_lift, PolicyKind::tap_tips};

struct EngineConfig {
  TimeMs tip_hold_ms = 600;
  TimeMs tip_fade_ms = 1200;
  TimeMs slide_hold_threshold_ms = 500;
  double tap_max_travel_px = 8.0;
  TimeMs tap_max_duration_ms = 400;

  // Throws EngineError(invalid_config) unless every duration and the
  // travel limit are positive.
  void validate() const;
  TimeMs tip_duration_ms() const { return tip_hold_ms + tip_fade_ms; }

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

enum class EventKind { down, move, up, toggle_tip_mode, navigate };

struct PointerEvent {
  EventKind kind = EventKind::down;
  std::optional<Point> position;
  TimeMs t = 0;
  std::string wall;  // navigate only

  static PointerEvent down(double x, double y, TimeMs t) { return {EventKind::down, Point{x, y}, t, {}}; }
  static PointerEvent move(double x, double y, TimeMs t) { return {EventKind::move, Point{x, y}, t, {}}; }
  static PointerEvent up(double x, double y, TimeMs t) { return {EventKind::up, Point{x, y}, t, {}}; }
  static PointerEvent toggle(TimeMs t) { return {EventKind::toggle_tip_mode, std::nullopt, t, {}}; }
  static PointerEvent navigate(std::string wall_id, TimeMs t) {
    return {EventKind::navigate, std::nullopt, t, std::move(wall_id)};
  }

  friend bool operator==(const PointerEvent&, const PointerEvent&) = default;
};

namespace effect {
struct ShowDescription {
  std::string target;
  std::string text;
  friend bool operator==(const ShowDescription&, const ShowDescription&) = default;
};
struct PlayAudio {
  std::string target;
  std::string path;
  friend bool operator==(const PlayAudio&, const PlayAudio&) = default;
};
struct TipsTriggered {
  TimeMs t;
  friend bool operator==(const TipsTriggered&, const TipsTriggered&) = default;
};
struct TipsInterrupted {
  TimeMs t;
  friend bool operator==(const TipsInterrupted&, const TipsInterrupted&) = default;
};
struct TargetVisited {
  std::string wall;
  std::string target;
  friend bool operator==(const TargetVisited&, const TargetVisited&) = default;
};
struct WallChanged {
  std::string wall;
  friend bool operator==(const WallChanged&, const WallChanged&) = default;
};
struct TipModeChanged {
  bool on;
  friend bool operator==(const TipModeChanged&, const TipModeChanged&) = default;
};
}  // namespace effect

using Effect = std::variant<effect::ShowDescription, effect::PlayAudio, effect::TipsTriggered, effect::TipsInterrupted,
                            effect::TargetVisited, effect::WallChanged, effect::TipModeChanged>;

std::string describe(const Effect& e);

// A resolved selection attempt: a classified tap, or any lift under slide_lift.
struct Selection {
  Point position;
  std::optional<std::string> target;  // empty on a miss

  friend bool operator==(const Selection&, const Selection&) = default;
};

struct StepResult {
  std::vector<Effect> effects;
  std::optional<Selection> selection;
};

struct TipWindow {
  TimeMs start;
  TimeMs end;

  friend bool operator==(const TipWindow&, const TipWindow&) = default;
};

struct FrameEntry {
  std::string target;
  double alpha;
  bool visited;

  friend bool operator==(const FrameEntry&, const FrameEntry&) = default;
};

struct RenderFrame {
  TimeMs t = 0;
  std::string wall;
  std::vector<FrameEntry> entries;  // one per target of the wall, document order

  friend bool operator==(const RenderFrame&, const RenderFrame&) = default;
};

// Outline opacity `elapsed` ms after a tip trigger: full during the hold,
// linear fade to zero, then zero. Throws EngineError for negative elapsed.
double tip_alpha(const EngineConfig& config, TimeMs elapsed);

// One interaction session. A value type: copying a session snapshots it,
// and a copy evolves independently of the original.
class Session {
 public:
  Session(std::shared_ptr<const Guidebook> guidebook, std::string_view start_wall, PolicyKind policy,
          EngineConfig config);

  // Applies one event. Throws EngineError for an out-of-order timestamp, a
  // pointer event without a position, or navigation to an unknown wall; the
  // session is unchanged when it throws.
  StepResult handle_event(const PointerEvent& event);

  // Pure query of the outline state at time t (t should not precede the
  // last processed event).
  RenderFrame render_at(TimeMs t) const;

  // Interval during which tap-tips outlines are visible, if still pending at
  // the last processed event time (or at `now`).
  std::optional<TipWindow> active_tip_window() const;
  std::optional<TipWindow> active_tip_window(TimeMs now) const;

  const Guidebook& guidebook() const { return *guidebook_; }
  const std::shared_ptr<const Guidebook>& guidebook_ptr() const { return guidebook_; }
  const Wall& current_wall() const { return *wall_; }
  PolicyKind policy() const { return policy_; }
  const EngineConfig& config() const { return config_; }
  TimeMs now() const { return now_; }
  bool tip_mode() const { return tip_mode_; }
  bool pointer_down() const { return press_.has_value(); }
  std::optional<TimeMs> tip_trigger() const { return tip_trigger_; }
  const std::set<std::pair<std::string, std::string>>& visited() const { return visited_; }
  bool is_visited(std::string_view wall, std::string_view target) const;

 private:
  struct Press {
    Point origin;
    TimeMs t;
    double max_travel;
  };

  void expire_tips(TimeMs t);
  void select(const std::string& target_id, StepResult& out);
  void on_up(Point position, TimeMs t, StepResult& out);

  std::shared_ptr<const Guidebook> guidebook_;
  const Wall* wall_;
  PolicyKind policy_;
  EngineConfig config_;
  TimeMs now_ = 0;
  std::set<std::pair<std::string, std::string>> visited_;
  std::optional<TimeMs> tip_trigger_;
  bool tip_mode_ = false;
  std::optional<Press> press_;
};

// Starts a session on `start_wall`. Throws EngineError(unknown_wall) when the
// guidebook has no such wall, or EngineError(invalid_config).
Session new_session(std::shared_ptr<const Guidebook> guidebook, std::string_view start_wall, PolicyKind policy,
                    EngineConfig config = {});

}  // namespace taptips
