#include "taptips/engine.hpp"

#include <algorithm>
#include <cmath>

#include "taptips/error.hpp"

namespace taptips {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

std::string_view to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::none:
      return "none";
    case PolicyKind::always_on:
      return "always_on";
    case PolicyKind::modal:
      return "modal";
    case PolicyKind::slide_lift:
      return "slide_lift";
    case PolicyKind::tap_tips:
      return "tap_tips";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (PolicyKind p : kAllPolicies) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

void EngineConfig::validate() const {
  auto require_positive = [](double value, const char* name) {
    if (!(value > 0) || !std::isfinite(value)) {
      throw EngineError(EngineError::Kind::invalid_config, std::string(name) + " must be positive");
    }
  };
  require_positive(static_cast<double>(tip_hold_ms), "tip_hold_ms");
  require_positive(static_cast<double>(tip_fade_ms), "tip_fade_ms");
  require_positive(static_cast<double>(slide_hold_threshold_ms), "slide_hold_threshold_ms");
  require_positive(tap_max_travel_px, "tap_max_travel_px");
  require_positive(static_cast<double>(tap_max_duration_ms), "tap_max_duration_ms");
}

std::string describe(const Effect& e) {
  return std::visit(
      Overloaded{
          [](const effect::ShowDescription& d) { return "ShowDescription(" + d.target + ")"; },
          [](const effect::PlayAudio& a) { return "PlayAudio(" + a.target + ", " + a.path + ")"; },
          [](const effect::TipsTriggered& t) { return "TipsTriggered(" + std::to_string(t.t) + ")"; },
          [](const effect::TipsInterrupted& t) { return "TipsInterrupted(" + std::to_string(t.t) + ")"; },
          [](const effect::TargetVisited& v) { return "TargetVisited(" + v.wall + "/" + v.target + ")"; },
          [](const effect::WallChanged& w) { return "WallChanged(" + w.wall + ")"; },
          [](const effect::TipModeChanged& m) { return std::string(m.on ? "TipModeChanged(on)" : "TipModeChanged(off)"); },
      },
      e);
}

double tip_alpha(const EngineConfig& config, TimeMs elapsed) {
  if (elapsed < 0) throw EngineError(EngineError::Kind::negative_elapsed, "elapsed time is negative");
  if (elapsed < config.tip_hold_ms) return 1.0;
  const TimeMs into_fade = elapsed - config.tip_hold_ms;
  if (into_fade >= config.tip_fade_ms) return 0.0;
  return 1.0 - static_cast<double>(into_fade) / static_cast<double>(config.tip_fade_ms);
}

Session::Session(std::shared_ptr<const Guidebook> guidebook, std::string_view start_wall, PolicyKind policy,
                 EngineConfig config)
    : guidebook_(std::move(guidebook)), wall_(nullptr), policy_(policy), config_(config) {
  config_.validate();
  wall_ = guidebook_->find_wall(start_wall);
  if (wall_ == nullptr) {
    throw EngineError(EngineError::Kind::unknown_wall, "unknown wall \"" + std::string(start_wall) + "\"");
  }
}

Session new_session(std::shared_ptr<const Guidebook> guidebook, std::string_view start_wall, PolicyKind policy,
                    EngineConfig config) {
  return Session(std::move(guidebook), start_wall, policy, config);
}

bool Session::is_visited(std::string_view wall, std::string_view target) const {
  return visited_.contains({std::string(wall), std::string(target)});
}

std::optional<TipWindow> Session::active_tip_window() const { return active_tip_window(now_); }

std::optional<TipWindow> Session::active_tip_window(TimeMs now) const {
  if (!tip_trigger_) return std::nullopt;
  const TipWindow window{*tip_trigger_, *tip_trigger_ + config_.tip_duration_ms()};
  if (now >= window.end) return std::nullopt;
  return window;
}

void Session::expire_tips(TimeMs t) {
  if (tip_trigger_ && t >= *tip_trigger_ + config_.tip_duration_ms()) tip_trigger_.reset();
}

StepResult Session::handle_event(const PointerEvent& event) {
  // Validate everything up front so a rejected event leaves no trace.
  if (event.t < 0 || event.t < now_) {
    throw EngineError(EngineError::Kind::out_of_order,
                      "event at t=" + std::to_string(event.t) + " precedes t=" + std::to_string(now_));
  }
  const bool positional = event.kind == EventKind::down || event.kind == EventKind::move || event.kind == EventKind::up;
  if (positional) {
    if (!event.position) throw EngineError(EngineError::Kind::missing_position, "pointer event without a position");
    require_finite(*event.position);
  }
  const Wall* destination = nullptr;
  if (event.kind == EventKind::navigate) {
    if (event.wall.empty()) throw EngineError(EngineError::Kind::missing_wall, "navigate event without a wall id");
    destination = guidebook_->find_wall(event.wall);
    if (destination == nullptr) {
      throw EngineError(EngineError::Kind::unknown_wall, "unknown wall \"" + event.wall + "\"");
    }
  }

  expire_tips(event.t);
  now_ = event.t;

  StepResult out;
  switch (event.kind) {
    case EventKind::down:
      press_ = Press{*event.position, event.t, 0.0};
      break;
    case EventKind::move:
      if (press_) press_->max_travel = std::max(press_->max_travel, distance(press_->origin, *event.position));
      break;
    case EventKind::up:
      on_up(*event.position, event.t, out);
      break;
    case EventKind::toggle_tip_mode:
      if (policy_ == PolicyKind::modal) {
        tip_mode_ = !tip_mode_;
        out.effects.emplace_back(effect::TipModeChanged{tip_mode_});
      }
      break;
    case EventKind::navigate:
      if (tip_trigger_) {
        out.effects.emplace_back(effect::TipsInterrupted{event.t});
        tip_trigger_.reset();
      }
      press_.reset();
      wall_ = destination;
      out.effects.emplace_back(effect::WallChanged{wall_->id});
      break;
  }
  return out;
}

void Session::on_up(Point position, TimeMs t, StepResult& out) {
  if (!press_) return;
  const Press press = *press_;
  press_.reset();

  if (policy_ != PolicyKind::slide_lift) {
    const double travel = std::max(press.max_travel, distance(press.origin, position));
    const bool is_tap = travel <= config_.tap_max_travel_px && t - press.t <= config_.tap_max_duration_ms;
    if (!is_tap) return;
  }

  std::optional<std::string> hit = hit_test(*wall_, position);
  out.selection = Selection{position, hit};
  if (hit) {
    select(*hit, out);
    return;
  }
  if (policy_ == PolicyKind::tap_tips) {
    if (tip_trigger_) out.effects.emplace_back(effect::TipsInterrupted{t});
    tip_trigger_ = t;
    out.effects.emplace_back(effect::TipsTriggered{t});
  }
}

void Session::select(const std::string& target_id, StepResult& out) {
  if (tip_trigger_) {
    out.effects.emplace_back(effect::TipsInterrupted{now_});
    tip_trigger_.reset();
  }
  const Target& target = *wall_->find_target(target_id);
  switch (target.action.kind) {
    case ActionKind::text_description:
      out.effects.emplace_back(effect::ShowDescription{target.id, target.action.payload});
      break;
    case ActionKind::audio_clip:
      out.effects.emplace_back(effect::PlayAudio{target.id, target.action.payload});
      break;
  }
  if (visited_.emplace(wall_->id, target.id).second) {
    out.effects.emplace_back(effect::TargetVisited{wall_->id, target.id});
  }
}

RenderFrame Session::render_at(TimeMs t) const {
  double alpha = 0.0;
  switch (policy_) {
    case PolicyKind::none:
      break;
    case PolicyKind::always_on:
      alpha = 1.0;
      break;
    case PolicyKind::modal:
      alpha = tip_mode_ ? 1.0 : 0.0;
      break;
    case PolicyKind::slide_lift:
      alpha = press_ && t - press_->t >= config_.slide_hold_threshold_ms ? 1.0 : 0.0;
      break;
    case PolicyKind::tap_tips:
      // Times before the trigger (a precondition violation) render as hidden.
      if (tip_trigger_ && t >= *tip_trigger_) alpha = tip_alpha(config_, t - *tip_trigger_);
      break;
  }

  RenderFrame frame;
  frame.t = t;
  frame.wall = wall_->id;
  frame.entries.reserve(wall_->targets.size());
  for (const Target& target : wall_->targets) {
    frame.entries.push_back({target.id, alpha, is_visited(wall_->id, target.id)});
  }
  return frame;
}

}  // namespace taptips
