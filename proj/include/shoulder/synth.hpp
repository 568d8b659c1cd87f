#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shoulder/model.hpp"

namespace shoulder::synth {

/// One minimum-jerk speed pulse.
struct SubmovementSpec {
  double onset_s = 0.0;
  double duration_s = 1.0;     // > 0
  double amplitude_dps = 0.0;  // peak angular speed
  Vec3 axis_weights{1.0, 0.0, 0.0};  // unit vector
};

/// amplitude * (30 tau^2 - 60 tau^3 + 30 tau^4) / 1.875 for
/// tau = (t - onset) / duration in [0, 1]; zero outside. Peaks at amplitude.
double min_jerk_speed(double t, const SubmovementSpec& spec);
/// d/dt of min_jerk_speed.
double min_jerk_speed_slope(double t, const SubmovementSpec& spec);

struct NoiseSpec {
  double accel_sigma = 0.0;  // m/s^2
  double gyro_sigma = 0.0;   // deg/s
};

/// How a sensor sees the movement: angular speed gain, and linear speed per
/// unit of angular speed (m/s per deg/s).
struct MotionGains {
  double angular = 1.0;
  double linear_per_angular = 0.01;
};

inline constexpr Vec3 kGravity{0.0, 0.0, 9.81};

/// Deterministic generator: mt19937_64 words mapped to uniforms and
/// Box-Muller normals by this class, so streams do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Sum of pulses over [0, total_s) sampled at `rate`:
/// gyro = angular gain * sum speed_k * axis_k + noise;
/// accel = gravity + x-axis linear acceleration (the time derivative of
/// linear_per_angular * sum of angular speeds) + noise.
/// Noise is drawn accel-then-gyro per sample. Throws Validation when a pulse
/// does not fit in [0, total_s].
SensorStream synth_segment(std::span<const SubmovementSpec> specs, double total_s, double rate,
                           NoiseSpec noise, Rng& rng, MotionGains gains = {});

struct IntRange {
  int lo = 1;
  int hi = 1;
};
struct RealRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct GroupProfile {
  std::size_t n = 20;
  std::array<IntRange, 3> submovements{};  // per subtask
  RealRange reach_duration_s;              // subtasks 1 and 3
  RealRange hold_duration_s;               // subtask 2
  RealRange amplitude_dps;                 // peak angular speed per pulse
  double pause_probability = 0.0;          // chance a gap between pulses is a pause
  NoiseSpec noise;
};

struct CohortProfile {
  GroupProfile patient;
  GroupProfile healthy;
  std::uint64_t seed = 42;
  double sample_rate_hz = kDefaultSampleRateHz;

  const GroupProfile& group(Group g) const { return g == Group::Patient ? patient : healthy; }
  /// Throws Error(Validation): empty/reversed ranges, negative noise, n < 2.
  void validate() const;
};

/// 20 patients vs 20 controls, seed 42. Patients: more submovements per
/// subtask, longer and slower movements, pauses between submovements.
CohortProfile default_profile();

CohortProfile parse_profile(std::string_view bytes, std::string_view origin = "profile");
std::string write_profile(const CohortProfile& profile);

/// Subject `index` (0-based, within its group). The session's generator is
/// seeded from (profile.seed, index) only, so two groups with identical
/// profiles produce identical recordings for the same index.
Session generate_session(const CohortProfile& profile, Group group, std::size_t index);

/// Patients first, then controls; ids P01.., H01...
std::vector<Session> generate_sessions(const CohortProfile& profile, unsigned jobs = 1);

/// Generates the cohort and writes it (ingest format plus profile.txt) to
/// `out_dir`. Returns the sessions exactly as written.
std::vector<Session> generate_cohort(const CohortProfile& profile,
                                     const std::filesystem::path& out_dir, unsigned jobs = 1);

}  // namespace shoulder::synth
