#include "shoulder/dsp.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "shoulder/error.hpp"

namespace shoulder::dsp {

ScalarSeries::ScalarSeries(std::vector<double> values, double sample_rate_hz)
    : values_(std::move(values)), rate_(sample_rate_hz) {
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw Error(ErrorKind::Validation, "sample rate must be positive and finite");
  }
  if (values_.empty()) throw Error(ErrorKind::TooShort, "empty series");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::Validation, "non-finite series value at sample " + std::to_string(i));
    }
  }
}

ScalarSeries euclidean_norm(std::span<const Vec3> rows, double sample_rate_hz) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const Vec3& r : rows) out.push_back(std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]));
  return ScalarSeries(std::move(out), sample_rate_hz);
}

ScalarSeries derivative(const ScalarSeries& series) {
  const std::size_t n = series.size();
  if (n < 3) {
    throw Error(ErrorKind::TooShort,
                "derivative needs at least 3 samples, got " + std::to_string(n));
  }
  const double rate = series.sample_rate_hz();
  const auto x = series.values();
  std::vector<double> out(n);
  out[0] = (x[1] - x[0]) * rate;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (x[i + 1] - x[i - 1]) * rate / 2.0;
  out[n - 1] = (x[n - 1] - x[n - 2]) * rate;
  return ScalarSeries(std::move(out), rate);
}

std::size_t padded_fft_length(std::size_t n, int pad_level) {
  if (pad_level < 0 || pad_level > 16) {
    throw Error(ErrorKind::Validation, "pad level must be in [0, 16]");
  }
  return std::bit_ceil(n) << pad_level;
}

void fft_in_place(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (!std::has_single_bit(n)) {
    throw Error(ErrorKind::Validation, "FFT length must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  // Twiddles are evaluated directly rather than by recurrence so rounding
  // error does not accumulate across a stage.
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> u = data[start + k];
        const std::complex<double> v = data[start + k + half] * twiddle[k * stride];
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

Spectrum magnitude_spectrum(const ScalarSeries& series, int pad_level) {
  if (series.size() < 2) {
    throw Error(ErrorKind::TooShort, "spectrum needs at least 2 samples");
  }
  const std::size_t n_fft = padded_fft_length(series.size(), pad_level);
  std::vector<std::complex<double>> buf(n_fft);
  const auto x = series.values();
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  fft_in_place(buf);

  Spectrum s;
  s.n_fft = n_fft;
  s.resolution_hz = series.sample_rate_hz() / static_cast<double>(n_fft);
  const std::size_t bins = n_fft / 2 + 1;
  s.freqs_hz.resize(bins);
  s.magnitudes.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    s.freqs_hz[k] = static_cast<double>(k) * s.resolution_hz;
    s.magnitudes[k] = std::abs(buf[k]);
  }
  return s;
}

}  // namespace shoulder::dsp
