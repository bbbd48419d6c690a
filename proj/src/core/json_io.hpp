#pragma once

#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "distribution.hpp"
#include "maxent.hpp"

namespace oic {

// Channel JSON: {"h": [...], "alpha": [...], "sigma": x} or the raw form
// {"h_raw": [...], "peaks": [...], "alpha": [...], "sigma_raw": x}.
// Validation failures throw std::invalid_argument naming the field.
struct LoadedChannel {
  ChannelSpec spec;
  std::optional<std::vector<double>> peaks;  // present iff the raw form was given
};

LoadedChannel parse_channel_json(const std::string& text);

// Distribution JSON:
//   {"type":"discrete","support":[...],"masses":[...]}
//   {"type":"pwexp","nu0":...,"lambdas":[...]}   (breakpoints from the canonical channel)
//   {"type":"maxent"}                            (solved on the fly)
// Discrete laws describe the channel file's equivalent input and are
// reflected onto the canonical coordinates when `flipped_input` is set;
// pwexp and maxent are canonical already.
BoundedDist parse_dist_json(const std::string& text, const ChannelSpec& canonical, Kind kind,
                            bool flipped_input = false);

}  // namespace oic
