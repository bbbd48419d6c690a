#include "channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tolerances.hpp"

namespace oic {

ChannelSpec::ChannelSpec(std::vector<double> h, std::vector<double> alpha, double sigma)
    : h_(std::move(h)), alpha_(std::move(alpha)), sigma_(sigma) {
  const std::size_t n = h_.size();
  if (n == 0) throw std::invalid_argument("h: must be non-empty");
  if (alpha_.size() != n) throw std::invalid_argument("alpha: length must match h");
  if (!(sigma_ > 0.0)) throw std::invalid_argument("sigma: must be positive");
  double sum = 0.0;
  for (double g : h_) {
    if (!(g > 0.0)) throw std::invalid_argument("h: entries must be positive");
    sum += g;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("h: entries must sum to 1");
  if (std::abs(sum - 1.0) > 1e-13) {
    for (double& g : h_) g /= sum;
  }
  for (double a : alpha_) {
    if (!(a > 0.0) || !(a < 1.0)) throw std::invalid_argument("alpha: entries must lie in (0,1)");
  }

  hcum_.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) hcum_[k + 1] = hcum_[k] + h_[k];
  hcum_[n] = 1.0;

  abar_.assign(n + 1, 0.0);
  double tail = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    tail += h_[k] * alpha_[k];
    abar_[k] = tail / (1.0 - hcum_[k]);
  }
}

bool ChannelSpec::is_canonical() const {
  for (std::size_t k = 1; k < alpha_.size(); ++k) {
    if (!(alpha_[k] < alpha_[k - 1])) return false;
  }
  return alpha_.back() <= 0.5 + 1e-15;
}

std::vector<double> Reduction::expand(const std::vector<double>& x_canonical) const {
  if (x_canonical.size() != groups.size())
    throw std::invalid_argument("expand: canonical signal length mismatch");
  std::vector<double> out(original_n, 0.0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double v = flipped ? 1.0 - x_canonical[i] : x_canonical[i];
    for (std::size_t j : groups[i]) out[j] = v;
  }
  return out;
}

ChannelSpec normalize(const RawChannelSpec& raw) {
  const std::size_t n = raw.gains.size();
  if (n == 0) throw std::invalid_argument("h_raw: must be non-empty");
  if (raw.peaks.size() != n) throw std::invalid_argument("peaks: length must match h_raw");
  if (raw.alphas.size() != n) throw std::invalid_argument("alpha: length must match h_raw");
  if (!(raw.sigma > 0.0)) throw std::invalid_argument("sigma_raw: must be positive");
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(raw.gains[k] > 0.0)) throw std::invalid_argument("h_raw: entries must be positive");
    if (!(raw.peaks[k] > 0.0)) throw std::invalid_argument("peaks: entries must be positive");
    scale += raw.gains[k] * raw.peaks[k];
  }
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = raw.gains[k] * raw.peaks[k] / scale;
  // ChannelSpec renormalizes the rounding dust in the sum.
  double sum = std::accumulate(h.begin(), h.end(), 0.0);
  for (double& g : h) g /= sum;
  return ChannelSpec(h, raw.alphas, raw.sigma / scale);
}

Canonical canonicalize(const ChannelSpec& spec, Kind kind) {
  const std::size_t n = spec.n();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.alpha()[a] > spec.alpha()[b];
  });

  // Merge antennas whose ratios coincide: repetition within the group is
  // capacity-optimal, so they act as one antenna with the summed gain.
  std::vector<double> h, alpha;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    const double a = spec.alpha()[idx];
    if (!alpha.empty() && std::abs(alpha.back() - a) <= tol.merge) {
      h.back() += spec.h()[idx];
      groups.back().push_back(idx);
    } else {
      h.push_back(spec.h()[idx]);
      alpha.push_back(a);
      groups.push_back({idx});
    }
  }

  bool flipped = false;
  if (kind == Kind::EC) {
    if (alpha.back() > 0.5) {
      // Flip the input; capacity is invariant and the flipped ratios are
      // 1 - alpha in reverse order.
      for (double& a : alpha) a = 1.0 - a;
      std::reverse(alpha.begin(), alpha.end());
      std::reverse(h.begin(), h.end());
      std::reverse(groups.begin(), groups.end());
      flipped = true;
    }
  } else {
    if (alpha.back() >= 0.5) {
      // Every ratio is >= 1/2: the average constraints are inactive at 1/2
      // and all antennas collapse into one.
      std::vector<std::size_t> all;
      for (const auto& g : groups)
        for (std::size_t j : g) all.push_back(j);
      h.assign(1, 1.0);
      alpha.assign(1, 0.5);
      groups.assign(1, all);
    }
  }

  for (double a : alpha) {
    if (!(a > 0.0) || !(a < 1.0))
      throw std::invalid_argument("alpha: degenerate ratio after canonicalization");
  }

  Reduction red;
  red.groups = std::move(groups);
  red.flipped = flipped;
  red.original_n = n;
  return Canonical{ChannelSpec(h, alpha, spec.sigma()), std::move(red)};
}

}  // namespace oic
