#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "shoulder/model.hpp"

namespace shoulder::dsp {

/// Uniformly sampled scalar signal. N >= 1, finite values, rate > 0.
class ScalarSeries {
 public:
  ScalarSeries(std::vector<double> values, double sample_rate_hz);

  std::span<const double> values() const { return values_; }
  double sample_rate_hz() const { return rate_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  double rate_;
};

/// Non-negative frequency half of a zero-padded DFT magnitude.
struct Spectrum {
  std::vector<double> freqs_hz;    // k * resolution_hz, k = 0..n_fft/2
  std::vector<double> magnitudes;  // |X[k]|
  std::size_t n_fft = 0;
  double resolution_hz = 0.0;      // sample_rate / n_fft
};

/// Per-row sqrt(x^2 + y^2 + z^2).
ScalarSeries euclidean_norm(std::span<const Vec3> rows, double sample_rate_hz);

/// Second-order central differences inside, first-order one-sided at both
/// ends; output has the input's length. Throws TooShort for N < 3.
ScalarSeries derivative(const ScalarSeries& series);

/// 2^(ceil(log2 n) + pad_level).
std::size_t padded_fft_length(std::size_t n, int pad_level);

/// In-place radix-2 FFT. `data.size()` must be a power of two.
void fft_in_place(std::span<std::complex<double>> data);

/// |DFT| of the series zero-padded to padded_fft_length(N, pad_level),
/// frequencies 0..rate/2 inclusive. Throws TooShort for N < 2.
Spectrum magnitude_spectrum(const ScalarSeries& series, int pad_level);

}  // namespace shoulder::dsp
