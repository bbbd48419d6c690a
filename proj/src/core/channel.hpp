#pragma once

#include <cstddef>
#include <vector>

namespace oic {

enum class Kind { EC, BC };

// Physical parameters before normalization: per-antenna gains and peak
// intensities, average-to-peak ratios, and the noise standard deviation on
// the raw scale.
struct RawChannelSpec {
  std::vector<double> gains;
  std::vector<double> peaks;
  std::vector<double> alphas;
  double sigma = 0.0;
};

// Normalized channel: positive gains summing to one, ratios alpha in (0,1),
// noise sigma. Carries the cumulative gain sums H_[k] and the tail averages
// abar_k used by every feasibility functional.
class ChannelSpec {
 public:
  ChannelSpec(std::vector<double> h, std::vector<double> alpha, double sigma);

  std::size_t n() const { return h_.size(); }
  const std::vector<double>& h() const { return h_; }
  const std::vector<double>& alpha() const { return alpha_; }
  double sigma() const { return sigma_; }

  // Hcum()[k] = h_1 + ... + h_k, with Hcum()[0] = 0 and Hcum()[n] = 1.
  const std::vector<double>& Hcum() const { return hcum_; }
  // alpha_bar()[k] = (sum_{i>k} h_i alpha_i) / (1 - H_[k]); alpha_bar()[n] = 0.
  const std::vector<double>& alpha_bar() const { return abar_; }
  // h' alpha, the mean budget of the equivalent input.
  double mean_budget() const { return abar_[0]; }

  // Strictly decreasing alpha in (0,1) with alpha_n <= 1/2.
  bool is_canonical() const;

 private:
  std::vector<double> h_, alpha_, hcum_, abar_;
  double sigma_;
};

// Maps canonical antennas back to the original ones: groups[i] lists the
// original indices served by canonical antenna i (spatial repetition within a
// group), and `flipped` records the EC input flip X -> 1 - X.
struct Reduction {
  std::vector<std::vector<std::size_t>> groups;
  bool flipped = false;
  std::size_t original_n = 0;

  // Expands canonical per-antenna signals to the original antennas,
  // un-flipping if needed.
  std::vector<double> expand(const std::vector<double>& x_canonical) const;
};

struct Canonical {
  ChannelSpec spec;
  Reduction reduction;
};

// Remaps raw physical parameters onto the normalized model:
// h_k = gain_k peak_k / sum_i gain_i peak_i, sigma = sigma_raw / sum_i gain_i peak_i.
ChannelSpec normalize(const RawChannelSpec& raw);

// Sorts antennas by descending alpha, merges antennas with identical alpha,
// and applies the kind-specific reduction: for EC a flip alpha -> 1 - alpha
// when alpha_n > 1/2, for BC the clamp to alpha = 1/2 (followed by a full
// merge) when alpha_n >= 1/2.
Canonical canonicalize(const ChannelSpec& spec, Kind kind);

}  // namespace oic
