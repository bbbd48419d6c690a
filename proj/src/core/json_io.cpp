#include "json_io.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace oic {

namespace {

using nlohmann::json;

std::vector<double> number_array(const json& j, const char* field) {
  if (!j.contains(field)) throw std::invalid_argument(std::string(field) + ": missing");
  const auto& v = j.at(field);
  if (!v.is_array() || v.empty())
    throw std::invalid_argument(std::string(field) + ": must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw std::invalid_argument(std::string(field) + ": must contain numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

double number_field(const json& j, const char* field) {
  if (!j.contains(field)) throw std::invalid_argument(std::string(field) + ": missing");
  if (!j.at(field).is_number()) throw std::invalid_argument(std::string(field) + ": must be a number");
  return j.at(field).get<double>();
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("body: not valid JSON");
  return j;
}

}  // namespace

LoadedChannel parse_channel_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw std::invalid_argument("body: expected a JSON object");
  if (j.contains("h_raw")) {
    RawChannelSpec raw;
    raw.gains = number_array(j, "h_raw");
    raw.peaks = number_array(j, "peaks");
    raw.alphas = number_array(j, "alpha");
    raw.sigma = number_field(j, "sigma_raw");
    return LoadedChannel{normalize(raw), raw.peaks};
  }
  if (!j.contains("h")) throw std::invalid_argument("h: missing (or use the h_raw form)");
  auto h = number_array(j, "h");
  auto alpha = number_array(j, "alpha");
  const double sigma = number_field(j, "sigma");
  return LoadedChannel{ChannelSpec(std::move(h), std::move(alpha), sigma), std::nullopt};
}

BoundedDist parse_dist_json(const std::string& text, const ChannelSpec& canonical, Kind kind,
                            bool flipped_input) {
  const json j = parse_text(text);
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw std::invalid_argument("type: missing or not a string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "discrete") {
    BoundedDist d(DiscreteDist(number_array(j, "support"), number_array(j, "masses")));
    return flipped_input ? d.reflected() : d;
  }
  if (type == "pwexp") {
    auto lambdas = number_array(j, "lambdas");
    if (lambdas.size() != canonical.n())
      throw std::invalid_argument("lambdas: need one coefficient per canonical antenna");
    std::vector<double> interior(canonical.Hcum().begin() + 1, canonical.Hcum().end() - 1);
    const double nu0 = number_field(j, "nu0");
    return BoundedDist(PiecewiseExpDist(std::move(interior), std::move(lambdas), nu0));
  }
  if (type == "maxent") {
    return BoundedDist(solve_gamma(canonical, kind).density);
  }
  throw std::invalid_argument("type: must be one of discrete, pwexp, maxent");
}

}  // namespace oic
