#include "taptips/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "taptips/error.hpp"
#include "taptips/image_io.hpp"
#include "taptips/imagemap.hpp"
#include "taptips/styling.hpp"
#include "taptips/tracelog.hpp"

namespace taptips::cli {
namespace fs = std::filesystem;

namespace {

using OrderedJson = nlohmann::ordered_json;

struct Options {
  std::string map;
  std::string log;
  std::string script;
  std::string report;
  std::string trace_out;
  std::string out;
  std::string palette;
  std::string policy = "tap_tips";
  std::string wall;
  TimeMs sample_ms = 100;
  double min_delta_e = kDefaultMinDeltaE;
  EngineConfig config;
};

void add_config_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--tip-hold-ms", o.config.tip_hold_ms, "Full-opacity hold after a miss");
  cmd.add_option("--tip-fade-ms", o.config.tip_fade_ms, "Linear fade length after the hold");
  cmd.add_option("--slide-hold-ms", o.config.slide_hold_threshold_ms, "Press duration before slide_lift tips show");
  cmd.add_option("--tap-travel-px", o.config.tap_max_travel_px, "Maximum travel of a tap");
  cmd.add_option("--tap-duration-ms", o.config.tap_max_duration_ms, "Maximum duration of a tap");
}

void add_policy_flag(CLI::App& cmd, Options& o) {
  std::vector<std::string> names;
  for (PolicyKind p : kAllPolicies) names.emplace_back(to_string(p));
  cmd.add_option("--policy", o.policy, "Tip policy")->check(CLI::IsMember(names))->capture_default_str();
}

std::shared_ptr<const Guidebook> load_guidebook(const std::string& path) {
  return std::make_shared<const Guidebook>(parse_guidebook(read_file(path)));
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Guidebook g = parse_guidebook(read_file(o.map));
  const GuidebookCounts c = count(g);
  out << "OK: " << c.rooms << " rooms, " << c.walls << " walls, " << c.targets << " targets\n";
  return kOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  auto guidebook = load_guidebook(o.map);
  const std::vector<TraceRecord> log = parse_trace(read_file(o.log));
  const std::vector<TraceRecord> pointers = pointer_records(log);
  std::optional<std::string> wall;
  if (!o.wall.empty()) wall = o.wall;
  const ReplayResult result = replay(guidebook, *parse_policy(o.policy), o.config, pointers, wall);
  if (!o.trace_out.empty()) write_file(o.trace_out, serialize_trace(result.trace));
  emit(o.report, metrics_to_json(compute_metrics(result.trace)), out);
  return kOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
  const std::vector<TraceRecord> trace = parse_trace(read_file(o.log));
  emit(o.report, metrics_to_json(compute_metrics(trace)), out);
  return kOk;
}

int cmd_frames(const Options& o, std::ostream& out) {
  auto guidebook = load_guidebook(o.map);
  const std::vector<TraceRecord> script = parse_trace(read_file(o.script));
  std::vector<PointerEvent> events;
  events.reserve(script.size());
  for (const TraceRecord& r : script) events.push_back(to_pointer_event(r));
  const std::string wall = o.wall.empty() ? infer_start_wall(*guidebook, script) : o.wall;
  Session session = new_session(guidebook, wall, *parse_policy(o.policy), o.config);
  emit(o.out, timeline_to_json(sample_frames(std::move(session), events, o.sample_ms)), out);
  return kOk;
}

int cmd_style(const Options& o, std::ostream& out) {
  const Guidebook g = parse_guidebook(read_file(o.map));
  const Palette palette = o.palette.empty() ? default_palette() : parse_palette(read_file(o.palette));
  const fs::path base = fs::path(o.map).parent_path();

  OrderedJson walls = OrderedJson::array();
  for (const Room& room : g.rooms) {
    for (const Wall& wall : room.walls) {
      const RgbImage image = read_png(base / wall.image);
      const ColorStats stats = image_color_stats(subsample(image.pixels));
      const OutlineStyle style = choose_outline_style(stats, palette, o.min_delta_e);
      walls.push_back({{"room", room.id},
                       {"wall", wall.id},
                       {"unvisited", to_hex(style.unvisited)},
                       {"visited", to_hex(style.visited)},
                       {"stroke_width", style.stroke_width}});
    }
  }
  OrderedJson root;
  root["walls"] = std::move(walls);
  emit(o.out, root.dump(2) + "\n", out);
  return kOk;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream outfile(path, std::ios::binary | std::ios::trunc);
  if (!outfile) throw IoError("cannot open " + path.string() + " for writing");
  outfile.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!outfile) throw IoError("cannot write " + path.string());
}

FrameTimeline sample_frames(Session session, std::span<const PointerEvent> events, TimeMs sample_ms) {
  if (sample_ms < 1) throw EngineError(EngineError::Kind::invalid_config, "sample interval must be at least 1 ms");
  FrameTimeline timeline;
  timeline.sample_ms = sample_ms;
  timeline.policy = session.policy();

  const TimeMs end = (events.empty() ? 0 : events.back().t) + session.config().tip_duration_ms();
  std::size_t next = 0;
  for (TimeMs t = 0; t <= end; t += sample_ms) {
    while (next < events.size() && events[next].t <= t) session.handle_event(events[next++]);
    timeline.frames.push_back(session.render_at(t));
  }
  return timeline;
}

std::string timeline_to_json(const FrameTimeline& timeline) {
  OrderedJson frames = OrderedJson::array();
  for (const RenderFrame& frame : timeline.frames) {
    OrderedJson entries = OrderedJson::array();
    for (const FrameEntry& e : frame.entries) {
      entries.push_back({{"target", e.target}, {"alpha", e.alpha}, {"visited", e.visited}});
    }
    frames.push_back({{"t", frame.t}, {"wall", frame.wall}, {"entries", std::move(entries)}});
  }
  OrderedJson root;
  root["sample_ms"] = timeline.sample_ms;
  root["policy"] = to_string(timeline.policy);
  root["frames"] = std::move(frames);
  return root.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tap-tips imagemap engine tools", "taptips"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a guidebook file");
  validate_cmd->add_option("map", o.map, "Guidebook (.gbk.json)")->required();

  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace's pointer records and report metrics");
  replay_cmd->add_option("--map", o.map, "Guidebook (.gbk.json)")->required();
  replay_cmd->add_option("--log", o.log, "Trace or script (.trace.jsonl)")->required();
  replay_cmd->add_option("--report", o.report, "Metrics JSON output (default stdout)");
  replay_cmd->add_option("--trace-out", o.trace_out, "Derived trace output");
  replay_cmd->add_option("--wall", o.wall, "Start wall (default: inferred from the trace)");
  add_policy_flag(*replay_cmd, o);
  add_config_flags(*replay_cmd, o);

  auto* metrics_cmd = app.add_subcommand("metrics", "Compute metrics of a full trace");
  metrics_cmd->add_option("--log", o.log, "Trace (.trace.jsonl)")->required();
  metrics_cmd->add_option("--report", o.report, "Metrics JSON output (default stdout)");

  auto* frames_cmd = app.add_subcommand("frames", "Export the outline timeline of a pointer script");
  frames_cmd->add_option("--map", o.map, "Guidebook (.gbk.json)")->required();
  frames_cmd->add_option("--script", o.script, "Pointer script (.trace.jsonl)")->required();
  frames_cmd->add_option("--sample-ms", o.sample_ms, "Sampling interval")->capture_default_str();
  frames_cmd->add_option("--out", o.out, "Timeline JSON output (default stdout)");
  frames_cmd->add_option("--wall", o.wall, "Start wall (default: inferred from the script)");
  add_policy_flag(*frames_cmd, o);
  add_config_flags(*frames_cmd, o);

  auto* style_cmd = app.add_subcommand("style", "Choose outline colours for every wall");
  style_cmd->add_option("--map", o.map, "Guidebook (.gbk.json)")->required();
  style_cmd->add_option("--palette", o.palette, "Palette JSON (default: built-in palette)");
  style_cmd->add_option("--min-delta-e", o.min_delta_e, "Visited/unvisited separation in CIELAB")->capture_default_str();
  style_cmd->add_option("--out", o.out, "Style JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironmentError;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*replay_cmd) return cmd_replay(o, out);
    if (*metrics_cmd) return cmd_metrics(o, out);
    if (*frames_cmd) return cmd_frames(o, out);
    if (*style_cmd) return cmd_style(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironmentError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kEnvironmentError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("taptips");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace taptips::cli
