#include "shoulder/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shoulder/error.hpp"

namespace shoulder {

namespace {

constexpr std::array<std::string_view, 7> kFeatureNames = {
    "nmcp_a", "np_a", "ldlj_a", "sparc", "rav", "pi", "duration_s"};
constexpr std::array<std::string_view, 7> kDisplayNames = {
    "NMCP-A", "NP-A", "LDLJ-A", "SPARC", "RAV", "PI", "Duration"};

void require_size(const dsp::ScalarSeries& s, std::size_t n, const char* feature) {
  if (s.size() < n) {
    throw Error(ErrorKind::TooShort, std::string(feature) + ": needs at least " +
                                         std::to_string(n) + " samples, got " +
                                         std::to_string(s.size()));
  }
}

double mean_axis_range(std::span<const Vec3> rows) {
  if (rows.empty()) throw Error(ErrorKind::TooShort, "range of an empty segment");
  Vec3 lo = rows[0];
  Vec3 hi = rows[0];
  for (const Vec3& r : rows) {
    for (std::size_t a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], r[a]);
      hi[a] = std::max(hi[a], r[a]);
    }
  }
  return ((hi[0] - lo[0]) + (hi[1] - lo[1]) + (hi[2] - lo[2])) / 3.0;
}

}  // namespace

void FeatureParams::validate() const {
  const auto fail = [](const char* what) {
    throw Error(ErrorKind::Validation, std::string("feature params: ") + what);
  };
  if (!(peak_prominence_frac > 0.0 && peak_prominence_frac < 1.0)) {
    fail("peak_prominence_frac must be in (0, 1)");
  }
  if (!(sparc_amp_threshold > 0.0 && sparc_amp_threshold < 1.0)) {
    fail("sparc_amp_threshold must be in (0, 1)");
  }
  if (!(sparc_max_cutoff_hz > 0.0) || !std::isfinite(sparc_max_cutoff_hz)) {
    fail("sparc_max_cutoff_hz must be positive");
  }
  if (sparc_pad_level < 0 || sparc_pad_level > 16) fail("sparc_pad_level must be in [0, 16]");
  if (!(min_segment_s > 0.0) || !std::isfinite(min_segment_s)) {
    fail("min_segment_s must be positive");
  }
}

std::string_view to_string(Feature f) { return kFeatureNames[static_cast<std::size_t>(f)]; }
std::string_view display_name(Feature f) { return kDisplayNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> parse_feature(std::string_view s) {
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (kFeatureNames[i] == s) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

double FeatureVector::value(Feature f) const {
  switch (f) {
    case Feature::NmcpA: return static_cast<double>(nmcp_a);
    case Feature::NpA: return static_cast<double>(np_a);
    case Feature::LdljA: return ldlj_a;
    case Feature::Sparc: return sparc;
    case Feature::Rav: return rav;
    case Feature::Pi: return pi;
    case Feature::Duration: return duration_s;
  }
  return 0.0;
}

namespace features {

std::size_t nmcp_a(const dsp::ScalarSeries& a_norm) {
  require_size(a_norm, 2, "nmcp_a");
  const auto x = a_norm.values();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::size_t crossings = 0;
  int last_sign = 0;
  for (const double v : x) {
    const int sign = (v > mean) - (v < mean);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++crossings;
    last_sign = sign;
  }
  return crossings;
}

std::size_t np_a(const dsp::ScalarSeries& a_norm, const FeatureParams& params) {
  require_size(a_norm, 3, "np_a");
  const auto x = a_norm.values();
  const std::size_t n = x.size();
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double range = *hi_it - *lo_it;
  if (range <= 0.0) return 0;
  const double floor = params.peak_prominence_frac * range;

  std::size_t peaks = 0;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(x[i] > x[i - 1])) {
      ++i;
      continue;
    }
    // Extend over a flat top; it is a peak only if the run then descends.
    std::size_t run_end = i;
    while (run_end + 1 < n && x[run_end + 1] == x[i]) ++run_end;
    if (run_end + 1 >= n || !(x[run_end + 1] < x[i])) {
      i = run_end + 1;
      continue;
    }
    const double height = x[i];
    // Prominence: height above the higher of the two bases, each base being
    // the lowest point before the signal next rises above the peak.
    double left_base = height;
    for (std::size_t k = i; k-- > 0;) {
      if (x[k] > height) break;
      left_base = std::min(left_base, x[k]);
    }
    double right_base = height;
    for (std::size_t k = run_end + 1; k < n; ++k) {
      if (x[k] > height) break;
      right_base = std::min(right_base, x[k]);
    }
    if (height - std::max(left_base, right_base) >= floor) ++peaks;
    i = run_end + 1;
  }
  return peaks;
}

double sparc(const dsp::ScalarSeries& w_norm, const FeatureParams& params) {
  require_size(w_norm, 2, "sparc");
  const double seconds = static_cast<double>(w_norm.size()) / w_norm.sample_rate_hz();
  if (seconds < params.min_segment_s) {
    throw Error(ErrorKind::TooShort, "sparc: segment of " + std::to_string(seconds) +
                                         " s is shorter than min_segment_s");
  }
  const dsp::Spectrum spec = dsp::magnitude_spectrum(w_norm, params.sparc_pad_level);
  const double dc = spec.magnitudes[0];
  if (!(dc > 0.0)) {
    throw Error(ErrorKind::Degenerate, "sparc: zero DC magnitude (all-zero speed profile)");
  }

  // Adaptive cutoff: last bin at or below the maximum cutoff whose normalized
  // magnitude still reaches the amplitude threshold.
  std::size_t last = 0;
  for (std::size_t k = 0; k < spec.freqs_hz.size() && spec.freqs_hz[k] <= params.sparc_max_cutoff_hz;
       ++k) {
    if (spec.magnitudes[k] / dc >= params.sparc_amp_threshold) last = k;
  }
  if (last == 0) {
    throw Error(ErrorKind::Degenerate, "sparc: spectrum falls below threshold after DC");
  }
  const double cutoff = spec.freqs_hz[last];
  const double df = spec.resolution_hz / cutoff;
  double arc = 0.0;
  for (std::size_t k = 0; k < last; ++k) {
    const double dv = (spec.magnitudes[k + 1] - spec.magnitudes[k]) / dc;
    arc += std::sqrt(df * df + dv * dv);
  }
  return -arc;
}

double ldlj_a(const dsp::ScalarSeries& a_norm) {
  require_size(a_norm, 3, "ldlj_a");
  const auto x = a_norm.values();
  const double peak = *std::max_element(x.begin(), x.end());
  if (!(peak > 0.0)) throw Error(ErrorKind::Degenerate, "ldlj_a: zero peak acceleration");
  const dsp::ScalarSeries jerk = dsp::derivative(a_norm);
  double sum_sq = 0.0;
  for (const double j : jerk.values()) sum_sq += j * j;
  if (!(sum_sq > 0.0)) throw Error(ErrorKind::Degenerate, "ldlj_a: zero jerk (constant signal)");
  const double rate = a_norm.sample_rate_hz();
  const double duration = static_cast<double>(x.size()) / rate;
  const double dimensionless = duration / (peak * peak) * (sum_sq / rate);
  return -std::log(dimensionless);
}

double rav(std::span<const Vec3> gyro) { return mean_axis_range(gyro); }

double power_index(std::span<const Vec3> accel, std::span<const Vec3> gyro) {
  return mean_axis_range(accel) * mean_axis_range(gyro);
}

double duration_s(Window window, double sample_rate_hz) {
  return static_cast<double>(window.end - window.begin) / sample_rate_hz;
}

}  // namespace features

FeatureVector extract_all(const Session& session, TaskKind task, SegmentKind kind,
                          Placement placement, const FeatureParams& params) {
  const std::string cell = "(" + session.subject_id() + ", " + std::string(to_string(task)) +
                           ", " + std::string(to_string(kind)) + ", " +
                           std::string(to_string(placement)) + ")";
  try {
    const SegmentLabel& label = session.label(task);
    const SensorStream segment = slice_segment(session.stream(placement), label, kind);
    const double rate = segment.sample_rate_hz();
    const dsp::ScalarSeries a_norm = dsp::euclidean_norm(segment.accel(), rate);
    const dsp::ScalarSeries w_norm = dsp::euclidean_norm(segment.gyro(), rate);

    FeatureVector fv;
    fv.nmcp_a = features::nmcp_a(a_norm);
    fv.np_a = features::np_a(a_norm, params);
    fv.sparc = features::sparc(w_norm, params);
    fv.ldlj_a = features::ldlj_a(a_norm);
    fv.rav = features::rav(segment.gyro());
    fv.pi = features::power_index(segment.accel(), segment.gyro());
    fv.duration_s = features::duration_s(label.window(kind), rate);
    return fv;
  } catch (const Error& e) {
    throw e.with_context(cell);
  }
}

}  // namespace shoulder
