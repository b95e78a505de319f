#include "taptips/tracelog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

#include "taptips/error.hpp"

namespace taptips {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr RecordKind kAllKinds[] = {
    RecordKind::down,       RecordKind::move,         RecordKind::up,
    RecordKind::tap_hit,    RecordKind::tap_miss,     RecordKind::tips_shown,
    RecordKind::tips_faded, RecordKind::tips_interrupted, RecordKind::navigate,
    RecordKind::mode_toggle, RecordKind::action_dispatched,
};

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw TraceError(TraceError::Kind::malformed, "line " + std::to_string(line) + ": " + what, line);
}

TraceRecord parse_line(std::string_view text, std::size_t line) {
  Json node;
  try {
    node = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error&) {
    malformed(line, "not a JSON object");
  }
  if (!node.is_object()) malformed(line, "not a JSON object");
  for (const auto& [key, value] : node.items()) {
    static const std::set<std::string> kKeys = {"t", "kind", "x", "y", "wall", "target", "policy"};
    if (!kKeys.contains(key)) malformed(line, "unknown key \"" + key + "\"");
  }

  TraceRecord r;
  const auto t = node.find("t");
  if (t == node.end() || !t->is_number_integer() || t->get<std::int64_t>() < 0) {
    malformed(line, "\"t\" must be a non-negative integer");
  }
  r.t = t->get<std::int64_t>();

  const auto kind = node.find("kind");
  if (kind == node.end() || !kind->is_string()) malformed(line, "missing \"kind\"");
  const auto parsed_kind = parse_record_kind(kind->get<std::string>());
  if (!parsed_kind) malformed(line, "unknown kind \"" + kind->get<std::string>() + "\"");
  r.kind = *parsed_kind;

  const auto x = node.find("x");
  const auto y = node.find("y");
  if ((x == node.end()) != (y == node.end())) malformed(line, "\"x\" and \"y\" must appear together");
  if (x != node.end()) {
    if (!x->is_number() || !y->is_number()) malformed(line, "\"x\" and \"y\" must be numbers");
    r.position = Point{x->get<double>(), y->get<double>()};
  }

  const auto wall = node.find("wall");
  if (wall == node.end() || !wall->is_string()) malformed(line, "missing \"wall\"");
  r.wall = wall->get<std::string>();

  if (const auto target = node.find("target"); target != node.end()) {
    if (!target->is_string()) malformed(line, "\"target\" must be a string");
    r.target = target->get<std::string>();
  }

  const auto policy = node.find("policy");
  if (policy == node.end() || !policy->is_string()) malformed(line, "missing \"policy\"");
  const auto parsed_policy = parse_policy(policy->get<std::string>());
  if (!parsed_policy) malformed(line, "unknown policy \"" + policy->get<std::string>() + "\"");
  r.policy = *parsed_policy;

  try {
    validate(r);
  } catch (const TraceError& e) {
    malformed(line, e.what());
  }
  return r;
}

}  // namespace

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::down: return "down";
    case RecordKind::move: return "move";
    case RecordKind::up: return "up";
    case RecordKind::tap_hit: return "tap_hit";
    case RecordKind::tap_miss: return "tap_miss";
    case RecordKind::tips_shown: return "tips_shown";
    case RecordKind::tips_faded: return "tips_faded";
    case RecordKind::tips_interrupted: return "tips_interrupted";
    case RecordKind::navigate: return "navigate";
    case RecordKind::mode_toggle: return "mode_toggle";
    case RecordKind::action_dispatched: return "action_dispatched";
  }
  return "?";
}

std::optional<RecordKind> parse_record_kind(std::string_view name) {
  for (RecordKind k : kAllKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_pointer_kind(RecordKind kind) {
  switch (kind) {
    case RecordKind::down:
    case RecordKind::move:
    case RecordKind::up:
    case RecordKind::navigate:
    case RecordKind::mode_toggle:
      return true;
    default:
      return false;
  }
}

void validate(const TraceRecord& r) {
  auto bad = [](const std::string& what) { throw TraceError(TraceError::Kind::malformed, what); };
  if (r.t < 0) bad("negative timestamp");
  if (r.wall.empty()) bad("empty wall id");
  if (r.position && !is_finite(*r.position)) bad("non-finite position");
  const bool needs_target = r.kind == RecordKind::tap_hit || r.kind == RecordKind::action_dispatched;
  if (needs_target && !r.target) bad(std::string(to_string(r.kind)) + " needs a target");
  if (r.kind == RecordKind::tap_miss && r.target) bad("tap_miss cannot name a target");
  const bool needs_position = r.kind == RecordKind::down || r.kind == RecordKind::move || r.kind == RecordKind::up;
  if (needs_position && !r.position) bad(std::string(to_string(r.kind)) + " needs x and y");
}

std::string serialize_record(const TraceRecord& r) {
  validate(r);
  OrderedJson node;
  node["t"] = r.t;
  node["kind"] = to_string(r.kind);
  if (r.position) {
    node["x"] = r.position->x;
    node["y"] = r.position->y;
  }
  node["wall"] = r.wall;
  if (r.target) node["target"] = *r.target;
  node["policy"] = to_string(r.policy);
  return node.dump();
}

std::string serialize_trace(std::span<const TraceRecord> records) {
  std::string out;
  for (const TraceRecord& r : records) {
    out += serialize_record(r);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::vector<TraceRecord> records;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view content = text.substr(pos, end - pos);
    pos = end + 1;
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    if (content.find_first_not_of(" \t") == std::string_view::npos) continue;

    TraceRecord r = parse_line(content, line);
    if (!records.empty() && r.t < records.back().t) {
      throw TraceError(TraceError::Kind::out_of_order,
                       "line " + std::to_string(line) + ": timestamp " + std::to_string(r.t) + " is earlier than " +
                           std::to_string(records.back().t),
                       line);
    }
    records.push_back(std::move(r));
  }
  return records;
}

TraceRecorder::TraceRecorder(const Session& session)
    : policy_(session.policy()), wall_(session.current_wall().id) {}

void TraceRecorder::append(TraceRecord record) {
  if (!records_.empty() && record.t < records_.back().t) {
    throw TraceError(TraceError::Kind::out_of_order, "record at t=" + std::to_string(record.t) +
                                                         " precedes t=" + std::to_string(records_.back().t));
  }
  records_.push_back(std::move(record));
}

void TraceRecorder::flush_due(TimeMs t) {
  if (pending_fade_ && t >= pending_fade_->t) {
    append(std::move(*pending_fade_));
    pending_fade_.reset();
  }
}

void TraceRecorder::finish() {
  if (pending_fade_) flush_due(pending_fade_->t);
}

void TraceRecorder::record(const PointerEvent& event, const StepResult& step, const Session& after) {
  flush_due(event.t);
  auto make = [&](RecordKind kind) {
    TraceRecord r;
    r.t = event.t;
    r.kind = kind;
    r.wall = wall_;
    r.policy = policy_;
    return r;
  };

  if (event.kind == EventKind::navigate) {
    // Interruptions belong to the wall being left.
    for (const Effect& e : step.effects) {
      if (std::holds_alternative<effect::TipsInterrupted>(e)) {
        append(make(RecordKind::tips_interrupted));
        pending_fade_.reset();
      }
    }
    wall_ = after.current_wall().id;
    append(make(RecordKind::navigate));
    return;
  }

  TraceRecord raw = make(RecordKind::down);
  switch (event.kind) {
    case EventKind::down: raw.kind = RecordKind::down; break;
    case EventKind::move: raw.kind = RecordKind::move; break;
    case EventKind::up: raw.kind = RecordKind::up; break;
    case EventKind::toggle_tip_mode: raw.kind = RecordKind::mode_toggle; break;
    case EventKind::navigate: break;
  }
  raw.position = event.position;
  append(std::move(raw));

  if (step.selection) {
    TraceRecord outcome = make(step.selection->target ? RecordKind::tap_hit : RecordKind::tap_miss);
    outcome.position = step.selection->position;
    outcome.target = step.selection->target;
    append(std::move(outcome));
  }

  for (const Effect& e : step.effects) {
    if (std::holds_alternative<effect::TipsInterrupted>(e)) {
      append(make(RecordKind::tips_interrupted));
      pending_fade_.reset();
    } else if (std::holds_alternative<effect::TipsTriggered>(e)) {
      append(make(RecordKind::tips_shown));
      const auto window = after.active_tip_window();
      TraceRecord fade = make(RecordKind::tips_faded);
      fade.t = window ? window->end : event.t;
      pending_fade_ = std::move(fade);
    } else if (const auto* show = std::get_if<effect::ShowDescription>(&e)) {
      TraceRecord r = make(RecordKind::action_dispatched);
      r.target = show->target;
      append(std::move(r));
    } else if (const auto* play = std::get_if<effect::PlayAudio>(&e)) {
      TraceRecord r = make(RecordKind::action_dispatched);
      r.target = play->target;
      append(std::move(r));
    }
    // TargetVisited and TipModeChanged restate facts already on record.
  }
}

RecordingSession::RecordingSession(Session session) : session_(std::move(session)), recorder_(session_) {}

StepResult RecordingSession::apply(const PointerEvent& event) {
  StepResult step = session_.handle_event(event);
  recorder_.record(event, step, session_);
  return step;
}

std::vector<TraceRecord> RecordingSession::finish() {
  recorder_.finish();
  return recorder_.records();
}

TraceMetrics compute_metrics(std::span<const TraceRecord> trace) {
  TraceMetrics m;
  std::set<std::pair<std::string, std::string>> discovered;
  std::size_t streak = 0;
  std::optional<RecordKind> previous_checklist_kind;

  for (const TraceRecord& r : trace) {
    switch (r.kind) {
      case RecordKind::tap_hit:
        ++m.hits;
        ++streak;
        m.max_hit_streak = std::max(m.max_hit_streak, streak);
        discovered.emplace(r.wall, r.target.value_or(""));
        if (previous_checklist_kind == RecordKind::tips_shown) ++m.checklist_alternations;
        previous_checklist_kind = r.kind;
        break;
      case RecordKind::tap_miss:
        ++m.misses;
        streak = 0;
        break;
      case RecordKind::tips_shown:
        ++m.tips_shown;
        streak = 0;
        previous_checklist_kind = r.kind;
        break;
      default:
        break;
    }
  }
  m.taps = m.hits + m.misses;
  m.discoveries = discovered.size();
  m.tips_per_discovery =
      static_cast<double>(m.tips_shown) / static_cast<double>(std::max<std::size_t>(m.discoveries, 1));
  return m;
}

std::string metrics_to_json(const TraceMetrics& m) {
  OrderedJson node;
  node["taps"] = m.taps;
  node["hits"] = m.hits;
  node["misses"] = m.misses;
  node["tips_shown"] = m.tips_shown;
  node["max_hit_streak"] = m.max_hit_streak;
  node["discoveries"] = m.discoveries;
  node["tips_per_discovery"] = m.tips_per_discovery;
  node["checklist_alternations"] = m.checklist_alternations;
  return node.dump(2) + "\n";
}

PointerEvent to_pointer_event(const TraceRecord& r) {
  switch (r.kind) {
    case RecordKind::down:
    case RecordKind::move:
    case RecordKind::up: {
      if (!r.position) throw TraceError(TraceError::Kind::malformed, "pointer record without a position");
      const EventKind kind = r.kind == RecordKind::down ? EventKind::down
                             : r.kind == RecordKind::move ? EventKind::move
                                                          : EventKind::up;
      return {kind, r.position, r.t, {}};
    }
    case RecordKind::navigate:
      return PointerEvent::navigate(r.wall, r.t);
    case RecordKind::mode_toggle:
      return PointerEvent::toggle(r.t);
    default:
      throw TraceError(TraceError::Kind::not_replayable,
                       "record kind " + std::string(to_string(r.kind)) + " at t=" + std::to_string(r.t) +
                           " is not a pointer record");
  }
}

std::vector<TraceRecord> pointer_records(std::span<const TraceRecord> trace) {
  std::vector<TraceRecord> out;
  std::copy_if(trace.begin(), trace.end(), std::back_inserter(out),
               [](const TraceRecord& r) { return is_pointer_kind(r.kind); });
  return out;
}

std::string infer_start_wall(const Guidebook& guidebook, std::span<const TraceRecord> trace) {
  if (!trace.empty() && trace.front().kind != RecordKind::navigate) return trace.front().wall;
  return guidebook.first_wall().id;
}

ReplayResult replay(std::shared_ptr<const Guidebook> guidebook, PolicyKind policy, const EngineConfig& config,
                    std::span<const TraceRecord> pointer_trace, std::optional<std::string> start_wall) {
  const std::string wall = start_wall ? *start_wall : infer_start_wall(*guidebook, pointer_trace);
  RecordingSession session(new_session(std::move(guidebook), wall, policy, config));
  ReplayResult result;
  for (const TraceRecord& r : pointer_trace) {
    StepResult step = session.apply(to_pointer_event(r));
    std::move(step.effects.begin(), step.effects.end(), std::back_inserter(result.effects));
  }
  result.trace = session.finish();
  return result;
}

}  // namespace taptips
