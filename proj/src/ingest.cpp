#include "shoulder/ingest.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "shoulder/error.hpp"
#include "shoulder/parallel.hpp"
#include "shoulder/text.hpp"

namespace fs = std::filesystem;

namespace shoulder::ingest {

namespace {

constexpr std::array<const char*, 7> kRecordingColumns = {"time_s", "ax", "ay", "az",
                                                          "gx",     "gy", "gz"};

std::string located(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line);
}

fs::path resolve(const fs::path& base_dir, const fs::path& p) {
  return p.is_absolute() ? p : base_dir / p;
}

}  // namespace

SensorStream parse_recording(std::string_view bytes, double sample_rate_hz,
                             std::string_view origin, std::optional<SensorLimits> limits) {
  const auto lines = text::split_lines(bytes);
  if (lines.empty()) throw Error(ErrorKind::Format, std::string(origin) + ": empty file");
  if (lines[0] != kRecordingHeader) {
    throw Error(ErrorKind::Format, located(origin, 1) + ": expected header '" +
                                       std::string(kRecordingHeader) + "'");
  }
  std::vector<Vec3> accel;
  std::vector<Vec3> gyro;
  accel.reserve(lines.size() - 1);
  gyro.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = text::split_fields(lines[i]);
    if (fields.size() != kRecordingColumns.size()) {
      throw Error(ErrorKind::Format, located(origin, i + 1) + ": expected 7 fields, got " +
                                         std::to_string(fields.size()));
    }
    std::array<double, 7> v{};
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!text::parse_real(fields[c], v[c])) {
        throw Error(ErrorKind::Format, located(origin, i + 1) + ": column " +
                                           kRecordingColumns[c] + " is not a number: '" +
                                           std::string(fields[c]) + "'");
      }
      if (!std::isfinite(v[c])) {
        throw Error(ErrorKind::Validation, located(origin, i + 1) + ": non-finite value in " +
                                               kRecordingColumns[c]);
      }
      if (limits && c > 0) {
        const double bound = c <= 3 ? limits->accel_abs_max : limits->gyro_abs_max;
        if (std::fabs(v[c]) > bound) {
          throw Error(ErrorKind::Validation, located(origin, i + 1) + ": " +
                                                 kRecordingColumns[c] +
                                                 " exceeds sensor full scale");
        }
      }
    }
    accel.push_back({v[1], v[2], v[3]});
    gyro.push_back({v[4], v[5], v[6]});
  }
  if (accel.empty()) throw Error(ErrorKind::Validation, std::string(origin) + ": no samples");
  try {
    return SensorStream(sample_rate_hz, std::move(accel), std::move(gyro));
  } catch (const Error& e) {
    throw e.with_context(origin);
  }
}

SensorStream load_recording(const fs::path& path, double sample_rate_hz,
                            std::optional<SensorLimits> limits) {
  return parse_recording(text::read_file(path), sample_rate_hz, path.string(), limits);
}

std::string write_recording(const SensorStream& stream) {
  using text::format_real;
  std::string out(kRecordingHeader);
  out += '\n';
  const auto accel = stream.accel();
  const auto gyro = stream.gyro();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    out += format_real(static_cast<double>(i) / stream.sample_rate_hz());
    for (const double v : accel[i]) (out += ',') += format_real(v);
    for (const double v : gyro[i]) (out += ',') += format_real(v);
    out += '\n';
  }
  return out;
}

LabelMap parse_labels(std::string_view bytes, std::string_view origin) {
  const auto lines = text::split_lines(bytes);
  if (lines.empty()) throw Error(ErrorKind::Format, std::string(origin) + ": empty file");
  if (lines[0] != kLabelsHeader) {
    throw Error(ErrorKind::Format, located(origin, 1) + ": expected header '" +
                                       std::string(kLabelsHeader) + "'");
  }
  LabelMap labels;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = located(origin, i + 1);
    const auto fields = text::split_fields(lines[i]);
    if (fields.size() != 7) {
      throw Error(ErrorKind::Format,
                  where + ": expected 7 fields, got " + std::to_string(fields.size()));
    }
    const auto task = parse_task(fields[0]);
    if (!task) {
      throw Error(ErrorKind::Validation, where + ": unknown task '" + std::string(fields[0]) + "'");
    }
    std::array<std::uint64_t, 6> b{};
    for (std::size_t k = 0; k < 6; ++k) {
      if (!text::parse_index(fields[k + 1], b[k])) {
        throw Error(ErrorKind::Format, where + ": boundary " + std::to_string(k + 1) +
                                           " is not a non-negative integer: '" +
                                           std::string(fields[k + 1]) + "'");
      }
    }
    try {
      SegmentLabel label(*task, {Window{b[0], b[1]}, Window{b[2], b[3]}, Window{b[4], b[5]}});
      if (!labels.emplace(*task, label).second) {
        throw Error(ErrorKind::Validation, "duplicate label for task " + std::string(fields[0]));
      }
    } catch (const Error& e) {
      throw e.with_context(where);
    }
  }
  return labels;
}

LabelMap load_labels(const fs::path& path) {
  return parse_labels(text::read_file(path), path.string());
}

std::string write_labels(const LabelMap& labels) {
  std::string out(kLabelsHeader);
  out += '\n';
  for (const auto& [task, label] : labels) {
    out += to_string(task);
    for (const Window& w : label.subtasks()) {
      out += ',' + std::to_string(w.begin) + ',' + std::to_string(w.end);
    }
    out += '\n';
  }
  return out;
}

SessionManifest parse_session_manifest(std::string_view bytes, std::string_view origin) {
  const auto kv = text::KeyValueFile::parse(bytes, origin);
  kv.reject_unknown({"subject_id", "group", "side", "sample_rate_hz", "wrist", "arm", "labels"});
  SessionManifest m;
  m.subject_id = kv.get("subject_id");
  if (m.subject_id.empty() || m.subject_id.find(',') != std::string::npos) {
    throw Error(ErrorKind::Format, std::string(origin) + ": subject_id must be non-empty without commas");
  }
  const auto group = parse_group(kv.get("group"));
  if (!group) {
    throw Error(ErrorKind::Validation,
                std::string(origin) + ": unknown group '" + kv.get("group") + "'");
  }
  m.group = *group;
  m.side = kv.get("side");
  m.sample_rate_hz = kv.get_real("sample_rate_hz");
  if (!(m.sample_rate_hz > 0.0)) {
    throw Error(ErrorKind::Validation, std::string(origin) + ": sample_rate_hz must be positive");
  }
  m.wrist_path = kv.get("wrist");
  m.arm_path = kv.get("arm");
  m.labels_path = kv.get("labels");
  return m;
}

std::string write_session_manifest(const SessionManifest& m) {
  std::ostringstream out;
  out << "subject_id = " << m.subject_id << '\n'
      << "group = " << to_string(m.group) << '\n'
      << "side = " << m.side << '\n'
      << "sample_rate_hz = " << text::format_real(m.sample_rate_hz) << '\n'
      << "wrist = " << m.wrist_path.generic_string() << '\n'
      << "arm = " << m.arm_path.generic_string() << '\n'
      << "labels = " << m.labels_path.generic_string() << '\n';
  return out.str();
}

Session load_session(const fs::path& manifest_path) {
  const SessionManifest m =
      parse_session_manifest(text::read_file(manifest_path), manifest_path.string());
  const fs::path base = manifest_path.parent_path();
  const auto require_file = [&](const fs::path& p) {
    const fs::path full = resolve(base, p);
    if (!fs::is_regular_file(full)) {
      throw Error(ErrorKind::Io, "session " + m.subject_id + ": missing file " + full.string());
    }
    return full;
  };
  const fs::path wrist_file = require_file(m.wrist_path);
  const fs::path arm_file = require_file(m.arm_path);
  const fs::path labels_file = require_file(m.labels_path);
  try {
    SensorStream wrist = load_recording(wrist_file, m.sample_rate_hz);
    SensorStream arm = load_recording(arm_file, m.sample_rate_hz);
    LabelMap label_map = load_labels(labels_file);
    std::vector<SegmentLabel> labels;
    for (auto& [task, label] : label_map) labels.push_back(label);
    return assemble_session({m.subject_id, m.group, m.side}, std::move(wrist), std::move(arm),
                            std::move(labels));
  } catch (const Error& e) {
    throw e.with_context("session " + m.subject_id);
  }
}

std::vector<fs::path> parse_cohort_manifest(std::string_view bytes, std::string_view origin) {
  std::vector<fs::path> paths;
  std::set<std::string> seen;
  const auto lines = text::split_lines(bytes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    if (!seen.emplace(line).second) {
      throw Error(ErrorKind::Validation, located(origin, i + 1) + ": duplicate session entry '" +
                                             std::string(line) + "'");
    }
    paths.emplace_back(std::string(line));
  }
  return paths;
}

std::string write_cohort_manifest(const std::vector<fs::path>& sessions) {
  std::string out = "# session manifests, one per line\n";
  for (const auto& p : sessions) out += p.generic_string() + '\n';
  return out;
}

std::vector<Session> load_cohort(const fs::path& dir, unsigned jobs) {
  const fs::path manifest = dir / kCohortManifestName;
  if (!fs::is_regular_file(manifest)) {
    throw Error(ErrorKind::Io, "missing cohort manifest " + manifest.string());
  }
  const auto entries = parse_cohort_manifest(text::read_file(manifest), manifest.string());
  std::vector<std::optional<Session>> slots(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    const fs::path path = resolve(dir, entries[i]);
    if (!fs::is_regular_file(path)) {
      throw Error(ErrorKind::Io, "cohort entry " + entries[i].generic_string() +
                                     ": missing file " + path.string());
    }
    slots[i] = load_session(path);
  });
  std::vector<Session> sessions;
  sessions.reserve(slots.size());
  std::set<std::string> ids;
  for (auto& s : slots) {
    if (!ids.insert(s->subject_id()).second) {
      throw Error(ErrorKind::Validation, "duplicate subject_id " + s->subject_id() + " in cohort");
    }
    sessions.push_back(std::move(*s));
  }
  return sessions;
}

void write_cohort(const fs::path& dir, const std::vector<Session>& sessions) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<fs::path> entries;
  for (const Session& s : sessions) {
    const fs::path sub = dir / s.subject_id();
    fs::create_directories(sub, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + sub.string() + ": " + ec.message());
    SessionManifest m;
    m.subject_id = s.subject_id();
    m.group = s.group();
    m.side = s.info().side;
    m.sample_rate_hz = s.sample_rate_hz();
    m.wrist_path = "wrist.csv";
    m.arm_path = "arm.csv";
    m.labels_path = "labels.csv";
    text::write_file(sub / kSessionManifestName, write_session_manifest(m));
    text::write_file(sub / m.wrist_path, write_recording(s.stream(Placement::Wrist)));
    text::write_file(sub / m.arm_path, write_recording(s.stream(Placement::Arm)));
    text::write_file(sub / m.labels_path, write_labels(s.labels()));
    entries.push_back(fs::path(s.subject_id()) / kSessionManifestName);
  }
  text::write_file(dir / kCohortManifestName, write_cohort_manifest(entries));
}

}  // namespace shoulder::ingest
