#include "shoulder/synth.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "shoulder/error.hpp"
#include "shoulder/ingest.hpp"
#include "shoulder/parallel.hpp"
#include "shoulder/text.hpp"

namespace shoulder::synth {

namespace {

constexpr double kPeakShape = 1.875;  // max of 30t^2 - 60t^3 + 30t^4, at t = 0.5

// Session timeline (seconds).
constexpr double kLeadRest = 1.0;
constexpr double kInterTaskRest = 1.5;
constexpr double kTrailRest = 1.0;
// Consecutive pulses overlap by this fraction of a pulse unless paused; a
// pause lasts this fraction of a pulse.
constexpr double kOverlapFrac = 0.3;
constexpr double kPauseFrac = 0.5;
// Export resolution of generated recordings, as steps per unit.
constexpr double kAccelSteps = 1e4;  // 0.0001 m/s^2
constexpr double kGyroSteps = 1e3;   // 0.001 deg/s

constexpr MotionGains kWristGains{1.0, 0.01};
constexpr MotionGains kArmGains{0.7, 0.004};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(n > 0.0)) return {1.0, 0.0, 0.0};
  return {v[0] / n, v[1] / n, v[2] / n};
}

// Dividing by the integer step count yields the double nearest the decimal
// value, so the recording writer emits short fields.
double quantize(double v, double steps) { return std::round(v * steps) / steps + 0.0; }

struct SubtaskPlan {
  double begin_s = 0.0;
  double end_s = 0.0;
  int pulses = 1;
};

// Fills [begin, end) with `pulses` pulses, overlapping or paused per gap.
// Gaps and pulse parameters come from separate streams, so adding a pulse
// leaves the draws of the earlier ones unchanged.
void lay_out_pulses(const SubtaskPlan& plan, const GroupProfile& g, const Vec3& axis, double sign,
                    bool alternate, std::uint64_t seed, std::vector<SubmovementSpec>& out) {
  Rng gap_rng(splitmix64(seed ^ 0x1));
  Rng rng(splitmix64(seed ^ 0x2));
  std::vector<double> gap(static_cast<std::size_t>(plan.pulses > 0 ? plan.pulses - 1 : 0));
  double units = plan.pulses;
  for (double& c : gap) {
    c = gap_rng.uniform() < g.pause_probability ? kPauseFrac : -kOverlapFrac;
    units += c;
  }
  const double unit = (plan.end_s - plan.begin_s) / units;
  double onset = plan.begin_s;
  for (int k = 0; k < plan.pulses; ++k) {
    SubmovementSpec s;
    s.onset_s = onset;
    s.duration_s = unit;
    s.amplitude_dps = rng.uniform(g.amplitude_dps.lo, g.amplitude_dps.hi);
    const Vec3 jitter{0.2 * rng.normal(), 0.2 * rng.normal(), 0.2 * rng.normal()};
    const double dir = alternate && (k % 2 == 1) ? -sign : sign;
    const Vec3 w = normalized({axis[0] + jitter[0], axis[1] + jitter[1], axis[2] + jitter[2]});
    s.axis_weights = {dir * w[0], dir * w[1], dir * w[2]};
    out.push_back(s);
    if (k + 1 < plan.pulses) onset += unit * (1.0 + gap[static_cast<std::size_t>(k)]);
  }
  // Pin the last pulse to the window end against accumulated rounding.
  if (!out.empty()) out.back().duration_s = plan.end_s - out.back().onset_s;
}

void check_range(const RealRange& r, const std::string& what, double min_lo) {
  if (!(r.lo >= min_lo) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
    throw Error(ErrorKind::Validation, "profile: " + what + " range invalid");
  }
}

void check_group(const GroupProfile& g, const std::string& name) {
  if (g.n < 2) {
    throw Error(ErrorKind::Validation, "profile: " + name + ".n must be at least 2");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const IntRange& r = g.submovements[i];
    if (r.lo < 1 || r.hi < r.lo || r.hi > 64) {
      throw Error(ErrorKind::Validation,
                  "profile: " + name + ".sub" + std::to_string(i + 1) + "_submovements invalid");
    }
  }
  check_range(g.reach_duration_s, name + ".reach_duration_s", 0.1);
  check_range(g.hold_duration_s, name + ".hold_duration_s", 0.1);
  check_range(g.amplitude_dps, name + ".amplitude_dps", 0.0);
  if (g.amplitude_dps.hi > 1500.0) {
    throw Error(ErrorKind::Validation, "profile: " + name + ".amplitude_dps above sensor range");
  }
  if (!(g.pause_probability >= 0.0 && g.pause_probability <= 1.0)) {
    throw Error(ErrorKind::Validation, "profile: " + name + ".pause_probability outside [0, 1]");
  }
  if (!(g.noise.accel_sigma >= 0.0) || !(g.noise.gyro_sigma >= 0.0) ||
      !std::isfinite(g.noise.accel_sigma) || !std::isfinite(g.noise.gyro_sigma)) {
    throw Error(ErrorKind::Validation, "profile: " + name + " noise must be >= 0");
  }
}

std::string subject_id(Group group, std::size_t index, std::size_t n) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(n).size());
  std::string digits = std::to_string(index + 1);
  digits.insert(0, width - digits.size(), '0');
  return (group == Group::Patient ? "P" : "H") + digits;
}

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double min_jerk_speed(double t, const SubmovementSpec& spec) {
  const double tau = (t - spec.onset_s) / spec.duration_s;
  if (tau < 0.0 || tau > 1.0) return 0.0;
  const double t2 = tau * tau;
  return spec.amplitude_dps * (30.0 * t2 - 60.0 * t2 * tau + 30.0 * t2 * t2) / kPeakShape;
}

double min_jerk_speed_slope(double t, const SubmovementSpec& spec) {
  const double tau = (t - spec.onset_s) / spec.duration_s;
  if (tau < 0.0 || tau > 1.0) return 0.0;
  const double t2 = tau * tau;
  return spec.amplitude_dps / spec.duration_s *
         (60.0 * tau - 180.0 * t2 + 120.0 * t2 * tau) / kPeakShape;
}

SensorStream synth_segment(std::span<const SubmovementSpec> specs, double total_s, double rate,
                           NoiseSpec noise, Rng& rng, MotionGains gains) {
  if (!(rate > 0.0) || !(total_s > 0.0)) {
    throw Error(ErrorKind::Validation, "synth_segment: rate and total_s must be positive");
  }
  constexpr double kSlack = 1e-9;
  for (const SubmovementSpec& s : specs) {
    if (!(s.duration_s > 0.0)) {
      throw Error(ErrorKind::Validation, "synth_segment: submovement duration must be positive");
    }
    if (s.onset_s < -kSlack || s.onset_s + s.duration_s > total_s + kSlack) {
      throw Error(ErrorKind::Validation, "synth_segment: submovement exceeds segment of " +
                                             text::format_real(total_s) + " s");
    }
  }
  const auto n = static_cast<std::size_t>(std::llround(total_s * rate));
  std::vector<Vec3> accel(n);
  std::vector<Vec3> gyro(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    Vec3 w{0.0, 0.0, 0.0};
    double slope = 0.0;
    for (const SubmovementSpec& s : specs) {
      if (t < s.onset_s || t > s.onset_s + s.duration_s) continue;
      const double v = min_jerk_speed(t, s);
      for (std::size_t a = 0; a < 3; ++a) w[a] += v * s.axis_weights[a];
      slope += min_jerk_speed_slope(t, s);
    }
    Vec3 acc = kGravity;
    acc[0] += gains.linear_per_angular * slope;
    for (std::size_t a = 0; a < 3; ++a) acc[a] += noise.accel_sigma * rng.normal();
    for (std::size_t a = 0; a < 3; ++a) w[a] = gains.angular * w[a] + noise.gyro_sigma * rng.normal();
    accel[i] = acc;
    gyro[i] = w;
  }
  return SensorStream(rate, std::move(accel), std::move(gyro));
}

void CohortProfile::validate() const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(ErrorKind::Validation, "profile: sample_rate_hz must be positive");
  }
  check_group(patient, "patient");
  check_group(healthy, "healthy");
}

CohortProfile default_profile() {
  CohortProfile p;
  p.seed = 42;
  p.healthy.n = 20;
  p.healthy.submovements = {IntRange{1, 1}, IntRange{3, 5}, IntRange{1, 1}};
  p.healthy.reach_duration_s = {0.8, 1.2};
  p.healthy.hold_duration_s = {2.0, 3.0};
  p.healthy.amplitude_dps = {150.0, 250.0};
  p.healthy.pause_probability = 0.0;
  p.healthy.noise = {0.01, 0.5};

  p.patient.n = 20;
  p.patient.submovements = {IntRange{2, 4}, IntRange{4, 7}, IntRange{1, 3}};
  p.patient.reach_duration_s = {1.2, 2.0};
  p.patient.hold_duration_s = {2.5, 4.0};
  p.patient.amplitude_dps = {80.0, 150.0};
  p.patient.pause_probability = 0.3;
  p.patient.noise = {0.01, 0.5};
  return p;
}

CohortProfile parse_profile(std::string_view bytes, std::string_view origin) {
  const auto kv = text::KeyValueFile::parse(bytes, origin);
  const std::vector<std::string> fields = {
      "n", "sub1_submovements", "sub2_submovements", "sub3_submovements", "reach_duration_s",
      "hold_duration_s", "amplitude_dps", "pause_probability", "accel_noise", "gyro_noise"};
  std::vector<std::string> known = {"seed", "sample_rate_hz"};
  for (const char* g : {"patient.", "healthy."}) {
    for (const auto& f : fields) known.push_back(g + f);
  }
  kv.reject_unknown(known);

  const auto pair_of = [&](const std::string& key) {
    std::istringstream in(kv.get(key));
    std::string a, b, extra;
    in >> a >> b;
    double lo = 0.0, hi = 0.0;
    if (!in || (in >> extra) || !text::parse_real(a, lo) || !text::parse_real(b, hi)) {
      throw Error(ErrorKind::Format,
                  std::string(origin) + ": key '" + key + "' expects two numbers 'lo hi'");
    }
    return std::pair{lo, hi};
  };

  CohortProfile p = default_profile();
  if (kv.has("seed")) p.seed = kv.get_index("seed");
  if (kv.has("sample_rate_hz")) p.sample_rate_hz = kv.get_real("sample_rate_hz");
  for (const Group group : kAllGroups) {
    GroupProfile& g = group == Group::Patient ? p.patient : p.healthy;
    const std::string prefix = std::string(to_string(group)) + ".";
    if (kv.has(prefix + "n")) g.n = kv.get_index(prefix + "n");
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string key = prefix + "sub" + std::to_string(i + 1) + "_submovements";
      if (!kv.has(key)) continue;
      const auto [lo, hi] = pair_of(key);
      if (lo != std::floor(lo) || hi != std::floor(hi) || std::fabs(lo) > 1e6 || std::fabs(hi) > 1e6) {
        throw Error(ErrorKind::Format, std::string(origin) + ": key '" + key + "' expects integers");
      }
      g.submovements[i] = {static_cast<int>(lo), static_cast<int>(hi)};
    }
    const auto range = [&](const char* name, RealRange& r) {
      if (!kv.has(prefix + name)) return;
      const auto [lo, hi] = pair_of(prefix + name);
      r = {lo, hi};
    };
    range("reach_duration_s", g.reach_duration_s);
    range("hold_duration_s", g.hold_duration_s);
    range("amplitude_dps", g.amplitude_dps);
    if (kv.has(prefix + "pause_probability")) {
      g.pause_probability = kv.get_real(prefix + "pause_probability");
    }
    if (kv.has(prefix + "accel_noise")) g.noise.accel_sigma = kv.get_real(prefix + "accel_noise");
    if (kv.has(prefix + "gyro_noise")) g.noise.gyro_sigma = kv.get_real(prefix + "gyro_noise");
  }
  p.validate();
  return p;
}

std::string write_profile(const CohortProfile& p) {
  using text::format_real;
  std::ostringstream out;
  out << "seed = " << p.seed << '\n' << "sample_rate_hz = " << format_real(p.sample_rate_hz) << '\n';
  for (const Group group : kAllGroups) {
    const GroupProfile& g = p.group(group);
    const std::string prefix = std::string(to_string(group)) + ".";
    out << prefix << "n = " << g.n << '\n';
    for (std::size_t i = 0; i < 3; ++i) {
      out << prefix << "sub" << i + 1 << "_submovements = " << g.submovements[i].lo << ' '
          << g.submovements[i].hi << '\n';
    }
    const auto range = [&](const char* name, const RealRange& r) {
      out << prefix << name << " = " << format_real(r.lo) << ' ' << format_real(r.hi) << '\n';
    };
    range("reach_duration_s", g.reach_duration_s);
    range("hold_duration_s", g.hold_duration_s);
    range("amplitude_dps", g.amplitude_dps);
    out << prefix << "pause_probability = " << format_real(g.pause_probability) << '\n'
        << prefix << "accel_noise = " << format_real(g.noise.accel_sigma) << '\n'
        << prefix << "gyro_noise = " << format_real(g.noise.gyro_sigma) << '\n';
  }
  return out.str();
}

Session generate_session(const CohortProfile& profile, Group group, std::size_t index) {
  profile.validate();
  const GroupProfile& g = profile.group(group);
  const double rate = profile.sample_rate_hz;
  Rng session_rng(splitmix64(profile.seed ^ splitmix64(index + 1)));

  const bool right = session_rng.uniform() < (group == Group::Patient ? 0.5 : 0.85);
  std::array<std::uint64_t, 5> task_seeds{};
  for (auto& s : task_seeds) s = session_rng.next_u64();
  const std::uint64_t wrist_noise_seed = session_rng.next_u64();
  const std::uint64_t arm_noise_seed = session_rng.next_u64();

  std::vector<SubmovementSpec> specs;
  std::vector<SegmentLabel> labels;
  // Subtask boundaries are placed on the sample grid so labels and pulses agree.
  std::size_t cursor = static_cast<std::size_t>(std::llround(kLeadRest * rate));
  for (std::size_t t = 0; t < kAllTasks.size(); ++t) {
    Rng rng(task_seeds[t]);
    const Vec3 axis = normalized({rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0)});
    std::array<Window, 3> windows{};
    for (std::size_t sub = 0; sub < 3; ++sub) {
      const RealRange& dur = sub == 1 ? g.hold_duration_s : g.reach_duration_s;
      const auto samples = static_cast<std::size_t>(
          std::max<long long>(2, std::llround(rng.uniform(dur.lo, dur.hi) * rate)));
      windows[sub] = {cursor, cursor + samples};
      SubtaskPlan plan;
      plan.begin_s = static_cast<double>(windows[sub].begin) / rate;
      plan.end_s = static_cast<double>(windows[sub].end) / rate;
      plan.pulses = rng.integer(g.submovements[sub].lo, g.submovements[sub].hi);
      const std::uint64_t pulse_seed = rng.next_u64();
      // Reach out, scrub back and forth, return.
      const double sign = sub == 2 ? -1.0 : 1.0;
      lay_out_pulses(plan, g, axis, sign, sub == 1, pulse_seed, specs);
      cursor += samples;
    }
    labels.emplace_back(kAllTasks[t], windows);
    cursor += static_cast<std::size_t>(std::llround(kInterTaskRest * rate));
  }
  cursor += static_cast<std::size_t>(std::llround((kTrailRest - kInterTaskRest) * rate));
  const double total_s = static_cast<double>(cursor) / rate;

  const auto render = [&](std::uint64_t noise_seed, MotionGains gains) {
    Rng noise_rng(noise_seed);
    const SensorStream raw = synth_segment(specs, total_s, rate, g.noise, noise_rng, gains);
    std::vector<Vec3> accel(raw.accel().begin(), raw.accel().end());
    std::vector<Vec3> gyro(raw.gyro().begin(), raw.gyro().end());
    for (auto& r : accel) for (double& v : r) v = quantize(v, kAccelSteps);
    for (auto& r : gyro) for (double& v : r) v = quantize(v, kGyroSteps);
    return SensorStream(rate, std::move(accel), std::move(gyro));
  };
  SessionInfo info{subject_id(group, index, g.n), group, right ? "right" : "left"};
  return assemble_session(std::move(info), render(wrist_noise_seed, kWristGains),
                          render(arm_noise_seed, kArmGains), std::move(labels));
}

std::vector<Session> generate_sessions(const CohortProfile& profile, unsigned jobs) {
  profile.validate();
  const std::size_t total = profile.patient.n + profile.healthy.n;
  std::vector<std::optional<Session>> slots(total);
  parallel_for(total, jobs, [&](std::size_t i) {
    const bool patient = i < profile.patient.n;
    slots[i] = generate_session(profile, patient ? Group::Patient : Group::Healthy,
                                patient ? i : i - profile.patient.n);
  });
  std::vector<Session> sessions;
  sessions.reserve(total);
  for (auto& s : slots) sessions.push_back(std::move(*s));
  return sessions;
}

std::vector<Session> generate_cohort(const CohortProfile& profile,
                                     const std::filesystem::path& out_dir, unsigned jobs) {
  std::vector<Session> sessions = generate_sessions(profile, jobs);
  ingest::write_cohort(out_dir, sessions);
  text::write_file(out_dir / "profile.txt", write_profile(profile));
  return sessions;
}

}  // namespace shoulder::synth
