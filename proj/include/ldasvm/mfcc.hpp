#ifndef LDASVM_MFCC_HPP
#define LDASVM_MFCC_HPP

#include <Eigen/Core>
#include <span>
#include <vector>

#include "ldasvm/audio_io.hpp"

namespace ldasvm {

struct FrontendConfig {
  int frame_len_n = 256;
  int frame_shift_m = 100;
  int num_filters_k = 20;
  int sample_rate_hz = 10000;
  double log_floor = 1e-10;

  int feature_dim() const { return num_filters_k - 1; }
  int spectrum_bins() const { return frame_len_n / 2 + 1; }

  /// Throws Errc::InvalidConfig naming the first violated constraint.
  void validate() const;

  bool operator==(const FrontendConfig&) const = default;
};

/// T x N, one frame per row.
using FrameMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct MelFilterBank {
  Eigen::MatrixXd weights;              // K x (N/2 + 1)
  std::vector<double> center_freqs_hz;  // K
  std::vector<int> edge_bins;           // K + 2 boundary bins

  int num_filters() const { return static_cast<int>(weights.rows()); }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// 0.54 - 0.46 cos(2 pi n / (N - 1)).
double hamming(int n, int frame_len);
std::vector<double> hamming_window(int frame_len);

/// Frame t covers samples [t*M, t*M + N); a trailing partial frame is dropped.
FrameMatrix frame_blocking(const AudioClip& clip, const FrontendConfig& cfg);
FrameMatrix apply_window(const FrameMatrix& frames);

MelFilterBank build_mel_filterbank(const FrontendConfig& cfg);

/// log(max(w_i . pspec, log_floor)) per filter.
std::vector<double> apply_filterbank(const MelFilterBank& fb, std::span<const double> pspec,
                                     double log_floor);

/// DCT of the log-mel energies, c_n = sum_{k=1}^{K} logmel_k cos(n (k - 1/2) pi / K),
/// for n = 1..K-1. c_0 is dropped.
Eigen::VectorXd mfcc_from_logmel(std::span<const double> logmel);

/// Precomputes the window and filterbank for repeated extraction. Immutable
/// after construction, so one instance can serve concurrent callers.
class MfccFrontend {
 public:
  explicit MfccFrontend(const FrontendConfig& cfg);

  const FrontendConfig& config() const { return cfg_; }
  const MelFilterBank& filterbank() const { return fb_; }

  /// MFCC vector of one (unwindowed) frame of N samples.
  Eigen::VectorXd frame_mfcc(std::span<const double> frame) const;

  /// Mean of the per-frame MFCC vectors over the clip.
  Eigen::VectorXd extract(const AudioClip& clip) const;

 private:
  FrontendConfig cfg_;
  std::vector<double> window_;
  MelFilterBank fb_;
};

Eigen::VectorXd extract_features(const AudioClip& clip, const FrontendConfig& cfg);

}  // namespace ldasvm

#endif  // LDASVM_MFCC_HPP
