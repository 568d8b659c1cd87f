#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shoulder {

/// Tri-axial sample (x, y, z).
using Vec3 = std::array<double, 3>;

enum class TaskKind { WH, WUB, WLB, POH, ROP };
enum class SegmentKind { Complete, Sub1, Sub2, Sub3 };
enum class Placement { Wrist, Arm };
enum class Group { Patient, Healthy };

inline constexpr std::array<TaskKind, 5> kAllTasks = {
    TaskKind::WH, TaskKind::WUB, TaskKind::WLB, TaskKind::POH, TaskKind::ROP};
inline constexpr std::array<SegmentKind, 4> kAllSegments = {
    SegmentKind::Complete, SegmentKind::Sub1, SegmentKind::Sub2, SegmentKind::Sub3};
inline constexpr std::array<Placement, 2> kAllPlacements = {Placement::Wrist,
                                                            Placement::Arm};
inline constexpr std::array<Group, 2> kAllGroups = {Group::Patient, Group::Healthy};

// Stable names: "WH".."ROP", "complete"/"sub1".., "wrist"/"arm", "patient"/"healthy".
std::string_view to_string(TaskKind v);
std::string_view to_string(SegmentKind v);
std::string_view to_string(Placement v);
std::string_view to_string(Group v);

std::optional<TaskKind> parse_task(std::string_view s);
std::optional<SegmentKind> parse_segment(std::string_view s);
std::optional<Placement> parse_placement(std::string_view s);
std::optional<Group> parse_group(std::string_view s);

/// Long task name as used in table titles, e.g. "Washing hair".
std::string_view task_title(TaskKind v);

inline constexpr double kDefaultSampleRateHz = 128.0;

/// Half-open sample-index window [begin, end).
struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// One placement's recording: acceleration in m/s^2, angular velocity in deg/s.
/// Immutable once constructed; the constructor enforces equal lengths, N >= 1,
/// a positive rate, and finite values.
class SensorStream {
 public:
  SensorStream(double sample_rate_hz, std::vector<Vec3> accel, std::vector<Vec3> gyro);

  double sample_rate_hz() const { return rate_; }
  std::size_t size() const { return accel_.size(); }
  std::span<const Vec3> accel() const { return accel_; }
  std::span<const Vec3> gyro() const { return gyro_; }

  /// Copy of samples [w.begin, w.end); values are bitwise equal to the source.
  SensorStream window(Window w) const;

  friend bool operator==(const SensorStream&, const SensorStream&) = default;

 private:
  double rate_;
  std::vector<Vec3> accel_;
  std::vector<Vec3> gyro_;
};

/// Three contiguous, non-empty subtask windows of one task. The complete task
/// spans [sub1.begin, sub3.end).
class SegmentLabel {
 public:
  /// Throws Error(Validation) unless s1 < e1 == s2 < e2 == s3 < e3.
  SegmentLabel(TaskKind task, std::array<Window, 3> subtasks);

  TaskKind task() const { return task_; }
  const std::array<Window, 3>& subtasks() const { return subtasks_; }
  Window window(SegmentKind kind) const;

  friend bool operator==(const SegmentLabel&, const SegmentLabel&) = default;

 private:
  TaskKind task_;
  std::array<Window, 3> subtasks_;
};

struct SessionInfo {
  std::string subject_id;
  Group group = Group::Healthy;
  std::string side;  // affected side for patients, dominant side for controls

  friend bool operator==(const SessionInfo&, const SessionInfo&) = default;
};

class Session {
 public:
  const SessionInfo& info() const { return info_; }
  const std::string& subject_id() const { return info_.subject_id; }
  Group group() const { return info_.group; }
  double sample_rate_hz() const { return streams_[0].sample_rate_hz(); }

  const SensorStream& stream(Placement p) const {
    return streams_[static_cast<std::size_t>(p)];
  }
  const std::map<TaskKind, SegmentLabel>& labels() const { return labels_; }
  /// Throws Error(Validation) when the task was not labeled.
  const SegmentLabel& label(TaskKind task) const;

  friend bool operator==(const Session&, const Session&) = default;

 private:
  friend Session assemble_session(SessionInfo, SensorStream, SensorStream,
                                  std::vector<SegmentLabel>);
  Session(SessionInfo info, std::array<SensorStream, 2> streams,
          std::map<TaskKind, SegmentLabel> labels)
      : info_(std::move(info)), streams_(std::move(streams)), labels_(std::move(labels)) {}

  SessionInfo info_;
  std::array<SensorStream, 2> streams_;  // indexed by Placement
  std::map<TaskKind, SegmentLabel> labels_;
};

/// Sub-stream for one segment of a labeled task. Throws Error(Boundary) naming
/// the task and segment when the window exceeds the stream.
SensorStream slice_segment(const SensorStream& stream, const SegmentLabel& label,
                           SegmentKind kind);

/// Cross-validates and assembles a session. Errors: rate mismatch between the
/// placements, a label past the end of either stream, duplicate task labels.
Session assemble_session(SessionInfo info, SensorStream wrist, SensorStream arm,
                         std::vector<SegmentLabel> labels);

}  // namespace shoulder
