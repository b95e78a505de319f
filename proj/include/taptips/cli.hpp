#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taptips/engine.hpp"

namespace taptips::cli {

// 0 success, 1 bad input (parse, validation, infeasible request), 2 I/O or
// invocation problem.
enum ExitCode : int { kOk = 0, kDomainError = 1, kEnvironmentError = 2 };

struct FrameTimeline {
  TimeMs sample_ms = 100;
  PolicyKind policy = PolicyKind::tap_tips;
  std::vector<RenderFrame> frames;
};

// Samples render_at every `sample_ms` from t=0 through the last event time
// plus the tip duration. Events stamped at or before a sample time are
// applied before that sample is rendered.
FrameTimeline sample_frames(Session session, std::span<const PointerEvent> events, TimeMs sample_ms);
std::string timeline_to_json(const FrameTimeline& timeline);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taptips::cli
