#include "ldasvm/mfcc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ldasvm/error.hpp"
#include "ldasvm/fft.hpp"

namespace ldasvm {

void FrontendConfig::validate() const {
  if (frame_len_n <= 0 || !is_power_of_two(static_cast<std::size_t>(frame_len_n))) {
    throw Error(Errc::InvalidConfig, "frame_len_n must be a positive power of two");
  }
  if (frame_shift_m <= 0 || frame_shift_m >= frame_len_n) {
    throw Error(Errc::InvalidConfig, "frame_shift_m must satisfy 0 < M < N");
  }
  if (num_filters_k < 2) throw Error(Errc::InvalidConfig, "num_filters_k must be at least 2");
  if (sample_rate_hz <= 0) throw Error(Errc::InvalidConfig, "sample_rate_hz must be positive");
  if (!(log_floor > 0.0) || !std::isfinite(log_floor)) {
    throw Error(Errc::InvalidConfig, "log_floor must be a positive finite real");
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

double hamming(int n, int frame_len) {
  if (frame_len == 1) return 1.0;
  return 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (frame_len - 1));
}

std::vector<double> hamming_window(int frame_len) {
  std::vector<double> w(static_cast<std::size_t>(frame_len));
  for (int n = 0; n < frame_len; ++n) w[static_cast<std::size_t>(n)] = hamming(n, frame_len);
  return w;
}

FrameMatrix frame_blocking(const AudioClip& clip, const FrontendConfig& cfg) {
  const auto len = static_cast<long>(clip.samples.size());
  const long n = cfg.frame_len_n;
  const long m = cfg.frame_shift_m;
  if (len < n) {
    throw Error(Errc::InsufficientSamples, "clip has " + std::to_string(len) +
                                               " samples, frame length is " + std::to_string(n));
  }
  const long frames = (len - n) / m + 1;
  FrameMatrix out(frames, n);
  for (long t = 0; t < frames; ++t) {
    for (long i = 0; i < n; ++i) out(t, i) = clip.samples[static_cast<std::size_t>(t * m + i)];
  }
  return out;
}

FrameMatrix apply_window(const FrameMatrix& frames) {
  const auto w = hamming_window(static_cast<int>(frames.cols()));
  const Eigen::Map<const Eigen::RowVectorXd> wrow(w.data(), static_cast<Eigen::Index>(w.size()));
  FrameMatrix out = frames;
  out.array().rowwise() *= wrow.array();
  return out;
}

MelFilterBank build_mel_filterbank(const FrontendConfig& cfg) {
  cfg.validate();
  const int k = cfg.num_filters_k;
  const int n = cfg.frame_len_n;
  const int bins = cfg.spectrum_bins();
  const double fs = cfg.sample_rate_hz;
  const double mel_max = hz_to_mel(fs / 2.0);

  MelFilterBank fb;
  fb.edge_bins.resize(static_cast<std::size_t>(k + 2));
  for (int i = 0; i < k + 2; ++i) {
    const double hz = mel_to_hz(mel_max * i / (k + 1));
    fb.edge_bins[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(hz * n / fs));
    if (i > 0 && fb.edge_bins[static_cast<std::size_t>(i)] <= fb.edge_bins[static_cast<std::size_t>(i - 1)]) {
      throw Error(Errc::TooManyFilters,
                  std::to_string(k) + " filters do not fit on distinct FFT bins at N=" +
                      std::to_string(n) + ", fs=" + std::to_string(cfg.sample_rate_hz));
    }
  }

  fb.weights = Eigen::MatrixXd::Zero(k, bins);
  fb.center_freqs_hz.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int left = fb.edge_bins[static_cast<std::size_t>(i)];
    const int center = fb.edge_bins[static_cast<std::size_t>(i + 1)];
    const int right = fb.edge_bins[static_cast<std::size_t>(i + 2)];
    for (int b = left + 1; b < center; ++b) {
      fb.weights(i, b) = static_cast<double>(b - left) / (center - left);
    }
    fb.weights(i, center) = 1.0;
    for (int b = center + 1; b < right; ++b) {
      fb.weights(i, b) = static_cast<double>(right - b) / (right - center);
    }
    fb.center_freqs_hz[static_cast<std::size_t>(i)] = static_cast<double>(center) * fs / n;
  }
  return fb;
}

std::vector<double> apply_filterbank(const MelFilterBank& fb, std::span<const double> pspec,
                                     double log_floor) {
  if (static_cast<Eigen::Index>(pspec.size()) != fb.weights.cols()) {
    throw Error(Errc::DimensionMismatch, "power spectrum has " + std::to_string(pspec.size()) +
                                             " bins, filterbank expects " +
                                             std::to_string(fb.weights.cols()));
  }
  std::vector<double> out(static_cast<std::size_t>(fb.weights.rows()));
  for (Eigen::Index i = 0; i < fb.weights.rows(); ++i) {
    double e = 0.0;
    for (Eigen::Index b = 0; b < fb.weights.cols(); ++b) e += fb.weights(i, b) * pspec[static_cast<std::size_t>(b)];
    out[static_cast<std::size_t>(i)] = std::log(std::max(e, log_floor));
  }
  return out;
}

Eigen::VectorXd mfcc_from_logmel(std::span<const double> logmel) {
  const auto k = static_cast<int>(logmel.size());
  Eigen::VectorXd c(std::max(k - 1, 0));
  for (int n = 1; n < k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) {
      acc += logmel[static_cast<std::size_t>(j - 1)] * std::cos(n * (j - 0.5) * std::numbers::pi / k);
    }
    c(n - 1) = acc;
  }
  return c;
}

MfccFrontend::MfccFrontend(const FrontendConfig& cfg)
    : cfg_(cfg), window_(hamming_window(cfg.frame_len_n)), fb_(build_mel_filterbank(cfg)) {}

Eigen::VectorXd MfccFrontend::frame_mfcc(std::span<const double> frame) const {
  if (static_cast<int>(frame.size()) != cfg_.frame_len_n) {
    throw Error(Errc::DimensionMismatch, "frame length " + std::to_string(frame.size()) +
                                             " != " + std::to_string(cfg_.frame_len_n));
  }
  std::vector<double> y(frame.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = frame[i] * window_[i];
  const auto pspec = power_spectrum(y);
  const auto logmel = apply_filterbank(fb_, pspec, cfg_.log_floor);
  return mfcc_from_logmel(logmel);
}

Eigen::VectorXd MfccFrontend::extract(const AudioClip& clip) const {
  if (clip.sample_rate_hz != cfg_.sample_rate_hz) {
    throw Error(Errc::SampleRateMismatch, "clip is " + std::to_string(clip.sample_rate_hz) +
                                              " Hz, front end expects " +
                                              std::to_string(cfg_.sample_rate_hz) + " Hz");
  }
  const FrameMatrix frames = frame_blocking(clip, cfg_);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(cfg_.feature_dim());
  std::vector<double> row(static_cast<std::size_t>(cfg_.frame_len_n));
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    Eigen::Map<Eigen::RowVectorXd>(row.data(), frames.cols()) = frames.row(t);
    sum += frame_mfcc(row);
  }
  return sum / static_cast<double>(frames.rows());
}

Eigen::VectorXd extract_features(const AudioClip& clip, const FrontendConfig& cfg) {
  return MfccFrontend(cfg).extract(clip);
}

}  // namespace ldasvm
