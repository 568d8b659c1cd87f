#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shoulder/model.hpp"

namespace shoulder::ingest {

inline constexpr std::string_view kRecordingHeader = "time_s,ax,ay,az,gx,gy,gz";
inline constexpr std::string_view kLabelsHeader = "task,s1,e1,s2,e2,s3,e3";
inline constexpr std::string_view kCohortManifestName = "cohort.txt";
inline constexpr std::string_view kSessionManifestName = "session.txt";

inline constexpr double kStandardGravity = 9.80665;

/// Full-scale ranges of the recording hardware: accelerometer +-16 g,
/// gyroscope +-2000 deg/s. Samples beyond full scale cannot come from the
/// sensor and are rejected.
struct SensorLimits {
  double accel_abs_max = 16.0 * kStandardGravity;  // m/s^2
  double gyro_abs_max = 2000.0;                    // deg/s
};

using LabelMap = std::map<TaskKind, SegmentLabel>;

/// Parses the recording CSV. Sample i sits at i / sample_rate_hz; the time
/// column is checked to be numeric and otherwise ignored. Errors: Format
/// (line number, field) for malformed rows, Validation for non-finite or
/// out-of-range values, and for an empty recording.
SensorStream parse_recording(std::string_view bytes, double sample_rate_hz,
                             std::string_view origin = "recording",
                             std::optional<SensorLimits> limits = SensorLimits{});
SensorStream load_recording(const std::filesystem::path& path, double sample_rate_hz,
                            std::optional<SensorLimits> limits = SensorLimits{});
/// LF line endings; values in shortest round-trip decimal form.
std::string write_recording(const SensorStream& stream);

LabelMap parse_labels(std::string_view bytes, std::string_view origin = "labels");
LabelMap load_labels(const std::filesystem::path& path);
std::string write_labels(const LabelMap& labels);

struct SessionManifest {
  std::string subject_id;
  Group group = Group::Healthy;
  std::string side;
  std::filesystem::path wrist_path;  // relative paths resolve against the manifest's directory
  std::filesystem::path arm_path;
  std::filesystem::path labels_path;
  double sample_rate_hz = kDefaultSampleRateHz;

  friend bool operator==(const SessionManifest&, const SessionManifest&) = default;
};

SessionManifest parse_session_manifest(std::string_view bytes, std::string_view origin = "session");
std::string write_session_manifest(const SessionManifest& manifest);

/// Loads and cross-validates one session from its manifest file.
Session load_session(const std::filesystem::path& manifest_path);

/// Session manifest paths, one per line, relative to the cohort directory.
std::vector<std::filesystem::path> parse_cohort_manifest(std::string_view bytes,
                                                         std::string_view origin = "cohort");
std::string write_cohort_manifest(const std::vector<std::filesystem::path>& sessions);

/// All sessions listed in `<dir>/cohort.txt`, in manifest order. The first
/// failure aborts the load; its message names the manifest entry.
std::vector<Session> load_cohort(const std::filesystem::path& dir, unsigned jobs = 1);

/// Writes `<dir>/<subject_id>/{session.txt,wrist.csv,arm.csv,labels.csv}`
/// for each session and the cohort manifest listing them in order. Creates
/// `dir` if needed.
void write_cohort(const std::filesystem::path& dir, const std::vector<Session>& sessions);

}  // namespace shoulder::ingest
