#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "feature_oracles.hpp"
#include "shoulder/error.hpp"
#include "shoulder/features.hpp"
#include "shoulder/synth.hpp"
#include "test_support.hpp"

using namespace shoulder;
using dsp::ScalarSeries;

namespace {

constexpr double kRate = 128.0;

ScalarSeries series(std::vector<double> v) { return ScalarSeries(std::move(v), kRate); }

/// Unit bells of 1 s at the given onsets, sampled over [0, total_s).
std::vector<double> bells(const std::vector<double>& onsets, double total_s) {
  std::vector<double> x(static_cast<std::size_t>(std::llround(total_s * kRate)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = static_cast<double>(i) / kRate;
    for (const double t0 : onsets) x[i] += oracle::bell(t - t0);
  }
  return x;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected shoulder::Error");
  return ErrorKind::Io;
}

// k identical 1 s pulses, each followed by 1 s rest, with 0.5 s lead-in.
SensorStream separated_pulses(int k, std::uint64_t seed) {
  std::vector<synth::SubmovementSpec> specs;
  for (int i = 0; i < k; ++i) specs.push_back({0.5 + 2.0 * i, 1.0, 200.0, {0.6, 0.0, 0.8}});
  synth::Rng rng(seed);
  return synth::synth_segment(specs, 0.5 + 2.0 * k + 0.5, kRate, {0.01, 0.5}, rng);
}

}  // namespace

TEST_CASE("nmcp_a") {
  CHECK(features::nmcp_a(series(std::vector<double>(40, 9.81))) == 0);
  CHECK(features::nmcp_a(series({0, 2, 0, 2})) == 3);
  // touch-and-return at the mean is not a crossing
  CHECK(features::nmcp_a(series({0, 1, 0, 3})) == 1);  // mean 1; 0 -> (1) -> 0 -> 3
  CHECK(features::nmcp_a(series({2, 1, 1, 0, 1})) == 1);

  std::vector<double> sine(512);
  for (std::size_t i = 0; i < sine.size(); ++i) {
    sine[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / kRate);
  }
  const std::size_t oracle_count = oracle::brute_force_mean_crossings(sine);
  CHECK(oracle_count == 8);
  CHECK(features::nmcp_a(series(sine)) == oracle_count);

  CHECK(kind_of([] { features::nmcp_a(series({1.0})); }) == ErrorKind::TooShort);
}

TEST_CASE("np_a") {
  const FeatureParams params;
  std::vector<double> ramp(100);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
  CHECK(features::np_a(series(ramp), params) == 0);
  CHECK(features::np_a(series(std::vector<double>(10, 1.0)), params) == 0);
  CHECK(features::np_a(series({0, 1, 2, 3, 4, 3, 2, 1, 0}), params) == 1);
  // flat top counts once; flat run at the edge is not a peak
  CHECK(features::np_a(series({0, 1, 3, 3, 3, 1, 0}), params) == 1);
  CHECK(features::np_a(series({0, 1, 3, 3, 3}), params) == 0);
  // a 1% ripple on a 0..1 signal falls below the 5% prominence floor
  CHECK(features::np_a(series({0, 0.5, 1.0, 0.98, 0.99, 0.5, 0}), params) == 1);

  std::vector<double> two(400);
  for (std::size_t i = 0; i < two.size(); ++i) {
    const double t = static_cast<double>(i) / kRate;
    two[i] = std::exp(-std::pow((t - 1.0) / 0.15, 2)) + 0.9 * std::exp(-std::pow((t - 2.0) / 0.15, 2));
  }
  const std::size_t oracle_count = oracle::brute_force_dominant_peaks(two, 20);
  CHECK(oracle_count == 2);
  CHECK(features::np_a(series(two), params) == oracle_count);

  CHECK(kind_of([&] { features::np_a(series({1.0, 2.0}), params); }) == ErrorKind::TooShort);
}

TEST_CASE("sparc against the analytic spectral arc length") {
  const FeatureParams params;
  const double s1 = features::sparc(series(bells({0.0}, 1.0)), params);
  const double s2 = features::sparc(series(bells({0.0, 2.0}, 3.0)), params);

  const double o1 = oracle::spectral_arc_length(
      [](double f) { return oracle::bells_fourier_magnitude(f, {0.0}); }, 0.002);
  const double o2 = oracle::spectral_arc_length(
      [](double f) { return oracle::bells_fourier_magnitude(f, {0.0, 2.0}); }, 0.001);
  MESSAGE("single pulse: sparc=" << s1 << " oracle=" << o1);
  MESSAGE("two pulses:   sparc=" << s2 << " oracle=" << o2);
  CHECK(testing::rel_diff(s1, o1) <= 0.02);
  CHECK(testing::rel_diff(s2, o2) <= 0.02);
  CHECK(s2 < s1);
  CHECK(s1 < 0.0);
}

TEST_CASE("sparc scale invariance and errors") {
  const FeatureParams params;
  auto x = bells({0.2, 1.4}, 3.0);
  const double base = features::sparc(series(x), params);
  for (double& v : x) v *= 2.0;
  CHECK(testing::rel_diff(features::sparc(series(x), params), base) <= 1e-9);

  CHECK(kind_of([&] { features::sparc(series(std::vector<double>(128, 0.0)), params); }) ==
        ErrorKind::Degenerate);
  CHECK(kind_of([&] { features::sparc(series(std::vector<double>(16, 1.0)), params); }) ==
        ErrorKind::TooShort);  // 0.125 s < min_segment_s
}

TEST_CASE("ldlj_a") {
  CHECK(kind_of([] { features::ldlj_a(series(std::vector<double>(64, 9.81))); }) ==
        ErrorKind::Degenerate);
  CHECK(kind_of([] { features::ldlj_a(series(std::vector<double>(64, 0.0))); }) ==
        ErrorKind::Degenerate);

  SUBCASE("minimum-jerk acceleration profile matches quadrature") {
    const double amplitude = 3.0;
    std::vector<double> a(128);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = amplitude * oracle::bell(i / kRate);
    const double value = features::ldlj_a(series(a));
    // T = 1 s, peak = amplitude; jerk = amplitude * bell'(t).
    const double jerk_sq = oracle::simpson(
        [&](double t) { return std::pow(amplitude * oracle::bell_slope(t), 2); }, 0.0, 1.0, 20000);
    const double expected = -std::log(1.0 / (amplitude * amplitude) * jerk_sq);
    MESSAGE("ldlj_a=" << value << " oracle=" << expected);
    CHECK(testing::rel_diff(value, expected) <= 0.01);
  }
  SUBCASE("scale invariance") {
    std::mt19937_64 rng(5);
    std::vector<double> a(300);
    std::uniform_real_distribution<double> u(8.0, 12.0);
    for (double& v : a) v = u(rng);
    const double base = features::ldlj_a(series(a));
    for (double c : {0.1, 2.0, 100.0}) {
      std::vector<double> s = a;
      for (double& v : s) v *= c;
      CHECK(testing::rel_diff(features::ldlj_a(series(s)), base) <= 1e-9);
    }
  }
}

TEST_CASE("rav and power_index") {
  CHECK(features::rav(std::vector<Vec3>(5, Vec3{10, 20, 30})) == 0.0);
  CHECK(features::rav(std::vector<Vec3>{{0, 0, 5}, {100, -100, 5}}) ==
        doctest::Approx(200.0 / 3.0).epsilon(1e-15));
  CHECK(features::power_index(std::vector<Vec3>(4, Vec3{1, 2, 3}), std::vector<Vec3>(4, Vec3{4, 5, 6})) == 0.0);
  // RA = 2, RAV = 3
  CHECK(features::power_index(std::vector<Vec3>{{0, 0, 0}, {2, 2, 2}},
                              std::vector<Vec3>{{0, 0, 0}, {3, 3, 3}}) == doctest::Approx(6.0));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto accel = testing::random_rows(rng, 20, -30, 30);
    const auto gyro = testing::random_rows(rng, 20, -500, 500);
    const auto brute = [](const std::vector<Vec3>& rows) {
      double total = 0.0;
      for (int axis = 0; axis < 3; ++axis) {
        double best = 0.0;
        for (const Vec3& a : rows) {
          for (const Vec3& b : rows) best = std::max(best, a[axis] - b[axis]);
        }
        total += best;
      }
      return total / 3.0;
    };
    CHECK(features::rav(gyro) == doctest::Approx(brute(gyro)).epsilon(1e-14));
    CHECK(features::power_index(accel, gyro) ==
          doctest::Approx(brute(accel) * brute(gyro)).epsilon(1e-14));
    const double c = 3.7;
    CHECK(testing::rel_diff(features::rav(testing::scaled(gyro, c)), c * features::rav(gyro)) <= 1e-9);
  }
}

TEST_CASE("duration") {
  CHECK(features::duration_s({0, 384}, 128.0) == 3.0);
  CHECK(features::duration_s({7, 8}, 128.0) == 0.0078125);
  CHECK(features::duration_s({100, 800}, 128.0) == 5.46875);
}

TEST_CASE("norm-based features are rotation invariant; rav is not") {
  std::mt19937_64 rng(17);
  const FeatureParams params;
  bool rav_changed = false;
  for (int trial = 0; trial < 100; ++trial) {
    const auto accel = testing::random_rows(rng, 384, -15, 15);
    const auto gyro = testing::random_rows(rng, 384, -300, 300);
    const auto r = testing::random_rotation(rng);
    const auto a0 = dsp::euclidean_norm(accel, kRate);
    const auto w0 = dsp::euclidean_norm(gyro, kRate);
    const auto a1 = dsp::euclidean_norm(testing::rotate(accel, r), kRate);
    const auto w1 = dsp::euclidean_norm(testing::rotate(gyro, r), kRate);
    CHECK(features::nmcp_a(a1) == features::nmcp_a(a0));
    CHECK(features::np_a(a1, params) == features::np_a(a0, params));
    CHECK(testing::rel_diff(features::sparc(w1, params), features::sparc(w0, params)) <= 1e-9);
    CHECK(testing::rel_diff(features::ldlj_a(a1), features::ldlj_a(a0)) <= 1e-9);
    rav_changed |= testing::rel_diff(features::rav(testing::rotate(gyro, r)), features::rav(gyro)) > 0.01;
  }
  CHECK(rav_changed);
}

TEST_CASE("smoothness ordering over separated submovements") {
  const FeatureParams params;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    double prev_sparc = 1.0;
    std::size_t prev_np = 0;
    for (int k = 1; k <= 5; ++k) {
      const SensorStream s = separated_pulses(k, seed);
      const double sp = features::sparc(dsp::euclidean_norm(s.gyro(), kRate), params);
      const std::size_t np = features::np_a(dsp::euclidean_norm(s.accel(), kRate), params);
      CHECK(sp < prev_sparc);
      CHECK(np > prev_np);
      prev_sparc = sp;
      prev_np = np;
    }
  }
}

TEST_CASE("extract_all") {
  // Gyro: one bell along z. Accel: gravity plus a bell aligned with it, so
  // a_norm has a single burst.
  const std::size_t n = 256;
  std::vector<Vec3> accel(n), gyro(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = oracle::bell((static_cast<double>(i) / kRate - 0.5) / 1.0);
    accel[i] = {0.0, 0.0, 9.81 + 3.0 * b};
    gyro[i] = {0.0, 0.0, 150.0 * b};
  }
  const SensorStream stream(kRate, accel, gyro);
  const SegmentLabel label(TaskKind::WH, {Window{32, 64}, Window{64, 160}, Window{160, 224}});
  const Session session = assemble_session({"H01", Group::Healthy, "right"}, stream, stream, {label});

  const FeatureVector fv = extract_all(session, TaskKind::WH, SegmentKind::Complete, Placement::Wrist);
  CHECK(fv.np_a == 1);
  CHECK(fv.nmcp_a == 2);
  CHECK(fv.sparc < 0.0);
  CHECK(fv.rav == doctest::Approx(150.0 / 3.0).epsilon(0.01));
  CHECK(fv.duration_s == 192.0 / kRate);

  const FeatureVector arm = extract_all(session, TaskKind::WH, SegmentKind::Complete, Placement::Arm);
  CHECK(arm.duration_s == fv.duration_s);
  CHECK(extract_all(session, TaskKind::WH, SegmentKind::Complete, Placement::Wrist) == fv);

  const SensorStream zero(kRate, std::vector<Vec3>(n, Vec3{}), std::vector<Vec3>(n, Vec3{}));
  const Session flat = assemble_session({"H02", Group::Healthy, "right"}, zero, zero, {label});
  try {
    extract_all(flat, TaskKind::WH, SegmentKind::Sub2, Placement::Arm);
    FAIL("expected degenerate error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
    const std::string msg = e.what();
    CHECK(msg.find("sparc") != std::string::npos);
    CHECK(msg.find("WH") != std::string::npos);
    CHECK(msg.find("sub2") != std::string::npos);
    CHECK(msg.find("arm") != std::string::npos);
  }
}

TEST_CASE("feature params validation") {
  FeatureParams p;
  CHECK_NOTHROW(p.validate());
  p.peak_prominence_frac = 1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.sparc_pad_level = -1;
  CHECK_THROWS_AS(p.validate(), Error);
}
