#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dft_oracle.hpp"
#include "shoulder/dsp.hpp"
#include "shoulder/error.hpp"
#include "test_support.hpp"

using namespace shoulder;
using dsp::ScalarSeries;

TEST_CASE("euclidean_norm examples") {
  const auto s = dsp::euclidean_norm(std::vector<Vec3>{{3, 4, 0}, {0, 0, 0}, {1, 1, 1}}, 128.0);
  CHECK(s[0] == 5.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == doctest::Approx(1.7320508).epsilon(1e-8));
  CHECK(s.sample_rate_hz() == 128.0);
}

TEST_CASE("euclidean_norm is rotation invariant and homogeneous") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = testing::random_rows(rng, 64, -20.0, 20.0);
    const auto base = dsp::euclidean_norm(rows, 128.0);
    const auto rotated = dsp::euclidean_norm(testing::rotate(rows, testing::random_rotation(rng)), 128.0);
    const double c = std::uniform_real_distribution<double>(-50.0, 50.0)(rng);
    const auto scaled = dsp::euclidean_norm(testing::scaled(rows, c), 128.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(testing::rel_diff(rotated[i], base[i]) <= 1e-9);
      CHECK(testing::rel_diff(scaled[i], std::fabs(c) * base[i]) <= 1e-14);
    }
  }
}

TEST_CASE("derivative") {
  const double rate = 128.0;
  SUBCASE("ramp gives unit slope") {
    std::vector<double> x(50);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i) / rate;
    const auto d = dsp::derivative(ScalarSeries(x, rate));
    REQUIRE(d.size() == 50);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("constant gives zeros") {
    const auto d = dsp::derivative(ScalarSeries(std::vector<double>(20, 9.81), rate));
    for (const double v : d.values()) CHECK(v == 0.0);
  }
  SUBCASE("sine matches analytic cosine") {
    const double f = 1.0;
    std::vector<double> x(512);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / rate);
    }
    const auto d = dsp::derivative(ScalarSeries(x, rate));
    double peak = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
      const double t = static_cast<double>(i) / rate;
      const double analytic = 2.0 * std::numbers::pi * f * std::cos(2.0 * std::numbers::pi * f * t);
      CHECK(std::fabs(d[i] - analytic) <= 1e-3 * 2.0 * std::numbers::pi * f);
      peak = std::max(peak, d[i]);
    }
    CHECK(testing::rel_diff(peak, 2.0 * std::numbers::pi * f) <= 1e-3);
  }
  SUBCASE("second derivative of a cubic") {
    const double dense = 1000.0;
    std::vector<double> x(1000);
    const auto cubic = [](double t) { return 2.0 * t * t * t - 3.0 * t * t + t + 4.0; };
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = cubic(static_cast<double>(i) / dense);
    const auto d2 = dsp::derivative(dsp::derivative(ScalarSeries(x, dense)));
    for (std::size_t i = 2; i + 2 < x.size(); ++i) {
      const double t = static_cast<double>(i) / dense;
      const double analytic = 12.0 * t - 6.0;
      if (std::fabs(analytic) < 0.5) continue;  // relative error meaningless near the zero
      CHECK(testing::rel_diff(d2[i], analytic) <= 0.01);
    }
  }
  SUBCASE("too short") {
    CHECK_THROWS_AS(dsp::derivative(ScalarSeries({1.0, 2.0}, rate)), Error);
  }
}

TEST_CASE("padded FFT length") {
  CHECK(dsp::padded_fft_length(100, 4) == 2048);
  CHECK(dsp::padded_fft_length(128, 0) == 128);
  CHECK(dsp::padded_fft_length(129, 1) == 512);
  CHECK(dsp::padded_fft_length(2, 0) == 2);
}

TEST_CASE("magnitude_spectrum of a constant is a DC spike at bin-aligned length") {
  const ScalarSeries s(std::vector<double>(64, 2.5), 128.0);
  const auto spec = dsp::magnitude_spectrum(s, 0);
  CHECK(spec.n_fft == 64);
  CHECK(spec.magnitudes[0] == doctest::Approx(2.5 * 64).epsilon(1e-14));
  for (std::size_t k = 1; k < spec.magnitudes.size(); ++k) {
    CHECK(spec.magnitudes[k] <= 1e-9 * spec.magnitudes[0]);
  }
  CHECK(spec.freqs_hz.front() == 0.0);
  CHECK(spec.freqs_hz.back() == doctest::Approx(64.0));
  CHECK(spec.resolution_hz == 2.0);
}

TEST_CASE("magnitude_spectrum of a constant keeps DC = c * N under padding") {
  const ScalarSeries s(std::vector<double>(100, 3.0), 128.0);
  const auto spec = dsp::magnitude_spectrum(s, 4);
  CHECK(spec.n_fft == 2048);
  CHECK(spec.magnitudes[0] == doctest::Approx(300.0).epsilon(1e-13));
}

TEST_CASE("bin-aligned cosine has a single dominant non-DC bin") {
  const std::size_t n = 128;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(2.0 * std::numbers::pi * 5.0 * i / n);
  const auto spec = dsp::magnitude_spectrum(ScalarSeries(x, 128.0), 0);
  const auto oracle_mags = oracle::direct_dft_magnitudes(x, n);
  const auto peak = std::max_element(spec.magnitudes.begin() + 1, spec.magnitudes.end());
  CHECK(peak - spec.magnitudes.begin() == 5);
  CHECK(*peak == doctest::Approx(oracle_mags[5]).epsilon(1e-12));
  CHECK(*peak == doctest::Approx(64.0).epsilon(1e-12));
  for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
    if (k != 5) CHECK(spec.magnitudes[k] <= 1e-9 * *peak);
  }
}

TEST_CASE("magnitude_spectrum matches the direct DFT for random signals") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (std::size_t n : {2u, 3u, 7u, 16u, 33u, 100u, 255u, 256u}) {
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    for (int pad : {0, 2}) {
      const auto spec = dsp::magnitude_spectrum(ScalarSeries(x, 128.0), pad);
      const auto ref = oracle::direct_dft_magnitudes(x, spec.n_fft);
      const double scale = *std::max_element(ref.begin(), ref.end());
      for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(std::fabs(spec.magnitudes[k] - ref[k]) <= 1e-7 * scale);
      }
    }
  }
}

TEST_CASE("series validation") {
  CHECK_THROWS_AS(ScalarSeries({}, 128.0), Error);
  CHECK_THROWS_AS(ScalarSeries({1.0, NAN}, 128.0), Error);
  CHECK_THROWS_AS(ScalarSeries({1.0}, -1.0), Error);
  CHECK_THROWS_AS(dsp::magnitude_spectrum(ScalarSeries({1.0}, 128.0), 4), Error);
}
