#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taptips/engine.hpp"

namespace taptips {

enum class RecordKind {
  down,
  move,
  up,
  tap_hit,
  tap_miss,
  tips_shown,
  tips_faded,
  tips_interrupted,
  navigate,
  mode_toggle,
  action_dispatched,
};

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> parse_record_kind(std::string_view name);

// Raw input records (the ones replay consumes), as opposed to derived ones.
bool is_pointer_kind(RecordKind kind);

struct TraceRecord {
  TimeMs t = 0;
  RecordKind kind = RecordKind::down;
  std::optional<Point> position;
  std::string wall;
  std::optional<std::string> target;
  PolicyKind policy = PolicyKind::tap_tips;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// Field-level invariants of a single record; throws TraceError(malformed).
void validate(const TraceRecord& record);

// One JSON object, keys in the fixed order t, kind, x, y, wall, target,
// policy; absent fields omitted. No trailing newline.
std::string serialize_record(const TraceRecord& record);
// JSON Lines: every record followed by '\n'.
std::string serialize_trace(std::span<const TraceRecord> records);
// Blank lines are skipped. Errors name the 1-based line.
std::vector<TraceRecord> parse_trace(std::string_view text);

// Turns engine steps into trace records. Each input event yields one raw
// record; derived records follow for the tap outcome, tip triggers and
// interruptions, and dispatched actions. A tips_faded record is held back
// until a later record reaches its expiry time (or finish()), and dropped if
// the tips are interrupted first.
class TraceRecorder {
 public:
  explicit TraceRecorder(const Session& session);

  // `after` is the session state once `event` has been applied.
  void record(const PointerEvent& event, const StepResult& step, const Session& after);

  // Appends a record verbatim; throws TraceError(out_of_order) if it would
  // step back in time.
  void append(TraceRecord record);

  // Emits any pending tips_faded record. Further records may still follow.
  void finish();

  const std::vector<TraceRecord>& records() const { return records_; }

 private:
  void flush_due(TimeMs t);

  PolicyKind policy_;
  std::string wall_;
  std::vector<TraceRecord> records_;
  std::optional<TraceRecord> pending_fade_;
};

// A session with a recorder attached.
class RecordingSession {
 public:
  explicit RecordingSession(Session session);

  StepResult apply(const PointerEvent& event);
  // Flushes the recorder and returns the full trace.
  std::vector<TraceRecord> finish();

  const Session& session() const { return session_; }
  const TraceRecorder& recorder() const { return recorder_; }

 private:
  Session session_;
  TraceRecorder recorder_;
};

struct TraceMetrics {
  std::size_t taps = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t tips_shown = 0;
  std::size_t max_hit_streak = 0;
  std::size_t discoveries = 0;
  double tips_per_discovery = 0.0;
  std::size_t checklist_alternations = 0;

  friend bool operator==(const TraceMetrics&, const TraceMetrics&) = default;
};

TraceMetrics compute_metrics(std::span<const TraceRecord> trace);
std::string metrics_to_json(const TraceMetrics& metrics);

// Throws TraceError(not_replayable) for derived record kinds.
PointerEvent to_pointer_event(const TraceRecord& record);
std::vector<TraceRecord> pointer_records(std::span<const TraceRecord> trace);

// Wall a recorded trace started on: the wall of its first record unless that
// record is a navigation, else the guidebook's first wall.
std::string infer_start_wall(const Guidebook& guidebook, std::span<const TraceRecord> trace);

struct ReplayResult {
  std::vector<Effect> effects;
  std::vector<TraceRecord> trace;
};

// Feeds pointer-kind records through a fresh session and records the result.
// Derived records in the input are rejected; use pointer_records() to strip
// them from a full trace first.
ReplayResult replay(std::shared_ptr<const Guidebook> guidebook, PolicyKind policy, const EngineConfig& config,
                    std::span<const TraceRecord> pointer_trace, std::optional<std::string> start_wall = std::nullopt);

}  // namespace taptips
