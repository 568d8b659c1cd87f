#include "shoulder/model.hpp"

#include <cmath>
#include <sstream>

#include "shoulder/error.hpp"

namespace shoulder {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Format: return "format error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Boundary: return "boundary error";
    case ErrorKind::TooShort: return "too-short error";
    case ErrorKind::Degenerate: return "degenerate-signal error";
    case ErrorKind::Cohort: return "cohort error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

namespace {

constexpr std::array<std::string_view, 5> kTaskNames = {"WH", "WUB", "WLB", "POH", "ROP"};
constexpr std::array<std::string_view, 5> kTaskTitles = {
    "Washing hair", "Washing upper back", "Washing lower back",
    "Placing an object on a high shelf", "Removing an object from back pocket"};
constexpr std::array<std::string_view, 4> kSegmentNames = {"complete", "sub1", "sub2", "sub3"};
constexpr std::array<std::string_view, 2> kPlacementNames = {"wrist", "arm"};
constexpr std::array<std::string_view, 2> kGroupNames = {"patient", "healthy"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

void check_finite(std::span<const Vec3> rows, const char* what) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
      if (!std::isfinite(rows[i][axis])) {
        std::ostringstream msg;
        msg << "non-finite " << what << " value at sample " << i << ", axis " << axis;
        throw Error(ErrorKind::Validation, msg.str());
      }
    }
  }
}

}  // namespace

std::string_view to_string(TaskKind v) { return kTaskNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(SegmentKind v) { return kSegmentNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Placement v) { return kPlacementNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Group v) { return kGroupNames[static_cast<std::size_t>(v)]; }
std::string_view task_title(TaskKind v) { return kTaskTitles[static_cast<std::size_t>(v)]; }

std::optional<TaskKind> parse_task(std::string_view s) { return lookup<TaskKind>(kTaskNames, s); }
std::optional<SegmentKind> parse_segment(std::string_view s) {
  return lookup<SegmentKind>(kSegmentNames, s);
}
std::optional<Placement> parse_placement(std::string_view s) {
  return lookup<Placement>(kPlacementNames, s);
}
std::optional<Group> parse_group(std::string_view s) { return lookup<Group>(kGroupNames, s); }

SensorStream::SensorStream(double sample_rate_hz, std::vector<Vec3> accel,
                           std::vector<Vec3> gyro)
    : rate_(sample_rate_hz), accel_(std::move(accel)), gyro_(std::move(gyro)) {
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw Error(ErrorKind::Validation, "sample rate must be positive and finite");
  }
  if (accel_.empty()) throw Error(ErrorKind::Validation, "sensor stream has no samples");
  if (accel_.size() != gyro_.size()) {
    throw Error(ErrorKind::Validation, "accel and gyro sample counts differ (" +
                                           std::to_string(accel_.size()) + " vs " +
                                           std::to_string(gyro_.size()) + ")");
  }
  check_finite(accel_, "accel");
  check_finite(gyro_, "gyro");
}

SensorStream SensorStream::window(Window w) const {
  if (w.begin >= w.end || w.end > size()) {
    throw Error(ErrorKind::Boundary, "window [" + std::to_string(w.begin) + "," +
                                         std::to_string(w.end) + ") outside stream of " +
                                         std::to_string(size()) + " samples");
  }
  const auto first = static_cast<std::ptrdiff_t>(w.begin);
  const auto last = static_cast<std::ptrdiff_t>(w.end);
  return SensorStream(rate_, std::vector<Vec3>(accel_.begin() + first, accel_.begin() + last),
                      std::vector<Vec3>(gyro_.begin() + first, gyro_.begin() + last));
}

SegmentLabel::SegmentLabel(TaskKind task, std::array<Window, 3> subtasks)
    : task_(task), subtasks_(subtasks) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Validation, std::string(to_string(task)) + " label: " + why);
  };
  for (std::size_t i = 0; i < 3; ++i) {
    if (subtasks_[i].begin >= subtasks_[i].end) {
      fail("subtask " + std::to_string(i + 1) + " window is empty or reversed");
    }
  }
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    const std::size_t end = subtasks_[i].end;
    const std::size_t next = subtasks_[i + 1].begin;
    if (end > next) {
      fail("subtasks " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " overlap");
    }
    if (end < next) {
      fail("gap between subtasks " + std::to_string(i + 1) + " and " + std::to_string(i + 2));
    }
  }
}

Window SegmentLabel::window(SegmentKind kind) const {
  switch (kind) {
    case SegmentKind::Complete: return {subtasks_[0].begin, subtasks_[2].end};
    case SegmentKind::Sub1: return subtasks_[0];
    case SegmentKind::Sub2: return subtasks_[1];
    case SegmentKind::Sub3: return subtasks_[2];
  }
  return {};
}

const SegmentLabel& Session::label(TaskKind task) const {
  const auto it = labels_.find(task);
  if (it == labels_.end()) {
    throw Error(ErrorKind::Validation, "session " + info_.subject_id + " has no " +
                                           std::string(to_string(task)) + " label");
  }
  return it->second;
}

SensorStream slice_segment(const SensorStream& stream, const SegmentLabel& label,
                           SegmentKind kind) {
  const Window w = label.window(kind);
  if (w.end > stream.size()) {
    throw Error(ErrorKind::Boundary,
                std::string(to_string(label.task())) + "/" + std::string(to_string(kind)) +
                    ": window [" + std::to_string(w.begin) + "," + std::to_string(w.end) +
                    ") exceeds stream of " + std::to_string(stream.size()) + " samples");
  }
  return stream.window(w);
}

Session assemble_session(SessionInfo info, SensorStream wrist, SensorStream arm,
                         std::vector<SegmentLabel> labels) {
  const auto fail = [&](ErrorKind kind, const std::string& why) {
    throw Error(kind, "session " + info.subject_id + ": " + why);
  };
  if (info.subject_id.empty()) throw Error(ErrorKind::Validation, "empty subject id");
  if (wrist.sample_rate_hz() != arm.sample_rate_hz()) {
    std::ostringstream msg;
    msg << "sample rate mismatch: wrist " << wrist.sample_rate_hz() << " Hz, arm "
        << arm.sample_rate_hz() << " Hz";
    fail(ErrorKind::Validation, msg.str());
  }
  std::map<TaskKind, SegmentLabel> by_task;
  for (auto& label : labels) {
    const Window complete = label.window(SegmentKind::Complete);
    for (const Placement p : kAllPlacements) {
      const SensorStream& s = p == Placement::Wrist ? wrist : arm;
      if (complete.end > s.size()) {
        fail(ErrorKind::Boundary, std::string(to_string(label.task())) + " label ends at " +
                                      std::to_string(complete.end) + " beyond " +
                                      std::string(to_string(p)) + " stream of " +
                                      std::to_string(s.size()) + " samples");
      }
    }
    const TaskKind task = label.task();
    if (!by_task.emplace(task, std::move(label)).second) {
      fail(ErrorKind::Validation, "duplicate label for task " + std::string(to_string(task)));
    }
  }
  return Session(std::move(info), {std::move(wrist), std::move(arm)}, std::move(by_task));
}

}  // namespace shoulder
