#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "shoulder/dsp.hpp"
#include "shoulder/model.hpp"

namespace shoulder {

/// Tunables for the features the clinical protocol leaves open.
struct FeatureParams {
  double peak_prominence_frac = 0.05;  // NP-A prominence floor, fraction of segment range
  double sparc_amp_threshold = 0.05;   // normalized-magnitude floor for the adaptive cutoff
  double sparc_max_cutoff_hz = 10.0;
  int sparc_pad_level = 4;
  double min_segment_s = 0.25;         // shortest segment SPARC accepts

  /// Throws Error(Validation) on out-of-range values.
  void validate() const;
};

/// The seven features in the order the comparison tables list them.
enum class Feature { NmcpA, NpA, LdljA, Sparc, Rav, Pi, Duration };

inline constexpr std::array<Feature, 7> kAllFeatures = {
    Feature::NmcpA, Feature::NpA,  Feature::LdljA,   Feature::Sparc,
    Feature::Rav,   Feature::Pi,   Feature::Duration};

/// Column-style name ("nmcp_a", ...).
std::string_view to_string(Feature f);
/// Table label ("NMCP-A", ...).
std::string_view display_name(Feature f);
std::optional<Feature> parse_feature(std::string_view s);
/// Duration does not depend on which sensor is read.
constexpr bool is_placement_independent(Feature f) { return f == Feature::Duration; }

struct FeatureVector {
  std::size_t nmcp_a = 0;
  std::size_t np_a = 0;
  double sparc = 0.0;
  double ldlj_a = 0.0;
  double rav = 0.0;       // deg/s
  double pi = 0.0;        // (m/s^2)(deg/s)
  double duration_s = 0.0;

  double value(Feature f) const;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

namespace features {

// Smoothness. The first four consume only Euclidean norms.

/// Crossings of the segment mean by consecutive samples. A sample equal to
/// the mean keeps the sign of the last sample that differed from it.
std::size_t nmcp_a(const dsp::ScalarSeries& a_norm);

/// Strict local maxima (flat tops count once) with prominence of at least
/// peak_prominence_frac * (max - min).
std::size_t np_a(const dsp::ScalarSeries& a_norm, const FeatureParams& params);

/// Spectral arc length of the speed profile; closer to 0 is smoother.
double sparc(const dsp::ScalarSeries& w_norm, const FeatureParams& params);

/// -ln((T / peak^2) * integral of squared jerk), jerk = d(a_norm)/dt.
double ldlj_a(const dsp::ScalarSeries& a_norm);

// Power and speed.

/// Mean over the axes of per-axis max - min.
double rav(std::span<const Vec3> gyro);
double power_index(std::span<const Vec3> accel, std::span<const Vec3> gyro);
double duration_s(Window window, double sample_rate_hz);

}  // namespace features

/// All seven features for one (task, segment, placement) cell. Errors carry
/// the cell coordinates and the failing feature's name.
FeatureVector extract_all(const Session& session, TaskKind task, SegmentKind kind,
                          Placement placement, const FeatureParams& params = {});

}  // namespace shoulder
