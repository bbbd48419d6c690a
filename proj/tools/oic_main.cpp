// Command-line front end over the shared C API: feasibility checks, greedy
// decomposition, capacity-bound sweeps, max-entropy dumps and the mutual-
// information sandwich verifier.
//
// Exit codes: 0 success, 1 input error, 2 infeasible (or sandwich violation).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "oicbounds.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;

struct ChannelDeleter {
  void operator()(oic_channel* p) const { oic_channel_free(p); }
};
struct DistDeleter {
  void operator()(oic_dist* p) const { oic_dist_free(p); }
};
struct PlanDeleter {
  void operator()(oic_plan* p) const { oic_plan_free(p); }
};
using ChannelPtr = std::unique_ptr<oic_channel, ChannelDeleter>;
using DistPtr = std::unique_ptr<oic_dist, DistDeleter>;
using PlanPtr = std::unique_ptr<oic_plan, PlanDeleter>;

[[noreturn]] void die(const std::string& msg, int code) {
  std::fprintf(stderr, "oic: %s\n", msg.c_str());
  std::exit(code);
}

void require_ok(oic_status st, int infeasible_code = kExitInput) {
  if (st == OIC_OK) return;
  const int code = (st == OIC_ERR_INFEASIBLE) ? infeasible_code : kExitInput;
  die(std::string(oic_status_name(st)) + ": " + oic_last_error(), code);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open " + path, kExitInput);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

oic_kind parse_kind(const std::string& kind) {
  if (kind == "ec") return OIC_EC;
  if (kind == "bc") return OIC_BC;
  die("--kind must be ec or bc", kExitInput);
}

struct Session {
  ChannelPtr raw;
  ChannelPtr canon;
  oic_kind kind = OIC_EC;
  size_t n = 0;       // canonical antennas
  size_t n_orig = 0;  // original antennas
  std::vector<double> peaks;

  static Session open(const std::string& channel_path, const std::string& kind_str) {
    Session s;
    s.kind = parse_kind(kind_str);
    oic_channel* ch = nullptr;
    require_ok(oic_channel_parse_json(slurp(channel_path).c_str(), &ch));
    s.raw.reset(ch);
    oic_channel* canon = nullptr;
    require_ok(oic_channel_canonicalize(s.raw.get(), s.kind, &canon));
    s.canon.reset(canon);
    s.n = oic_channel_n(s.canon.get());
    s.n_orig = oic_channel_original_n(s.canon.get());
    if (oic_channel_has_peaks(s.canon.get())) {
      s.peaks.resize(s.n_orig);
      require_ok(oic_channel_peaks(s.canon.get(), s.peaks.data()));
    }
    return s;
  }

  // Discrete dist files describe the channel file's equivalent input; the
  // parser maps them onto the canonical coordinates (including the flip).
  DistPtr load_dist(const std::string& dist_path) const {
    oic_dist* d = nullptr;
    require_ok(oic_dist_parse_json(slurp(dist_path).c_str(), canon.get(), kind, &d));
    return DistPtr(d);
  }

  double internal_s(double s) const {
    return oic_channel_flipped(canon.get()) ? 1.0 - s : s;
  }
};

int cmd_feasible(const std::string& channel_path, const std::string& dist_path,
                 const std::string& kind_str) {
  Session ses = Session::open(channel_path, kind_str);
  DistPtr dist = ses.load_dist(dist_path);
  int feasible = 0;
  double mean_residual = 0.0;
  std::vector<double> slack(ses.n > 1 ? ses.n - 1 : 0);
  require_ok(oic_check_feasible(dist.get(), ses.canon.get(), ses.kind, &feasible, &mean_residual,
                                slack.empty() ? nullptr : slack.data()));
  nlohmann::json out;
  out["feasible"] = feasible != 0;
  out["mean_residual"] = mean_residual;
  out["slack"] = slack;
  std::printf("%s\n", out.dump().c_str());
  return feasible ? kExitOk : kExitInfeasible;
}

int cmd_decompose(const std::string& channel_path, const std::string& dist_path,
                  const std::string& kind_str, std::vector<double> svals, int grid,
                  const std::string& plan_out) {
  Session ses = Session::open(channel_path, kind_str);
  DistPtr dist = ses.load_dist(dist_path);

  int feasible = 0;
  require_ok(oic_check_feasible(dist.get(), ses.canon.get(), ses.kind, &feasible, nullptr, nullptr));
  if (!feasible) die("distribution is infeasible for this channel", kExitInfeasible);

  oic_plan* plan_raw = nullptr;
  require_ok(oic_plan_solve(dist.get(), ses.canon.get(), ses.kind, &plan_raw), kExitInfeasible);
  PlanPtr plan(plan_raw);

  if (!plan_out.empty()) {
    size_t needed = 0;
    require_ok(oic_plan_to_json(plan.get(), nullptr, 0, &needed));
    std::string buf(needed, '\0');
    require_ok(oic_plan_to_json(plan.get(), buf.data(), buf.size(), nullptr));
    buf.resize(needed - 1);
    std::ofstream out(plan_out);
    if (!out) die("cannot write " + plan_out, kExitInput);
    out << buf << "\n";
  }

  if (grid > 0) {
    svals.clear();
    for (int i = 0; i < grid; ++i)
      svals.push_back(grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1));
  }
  if (svals.empty()) die("give --s values or --grid N", kExitInput);

  std::string header = "s";
  for (size_t k = 1; k <= ses.n_orig; ++k) header += ",x_" + std::to_string(k);
  if (!ses.peaks.empty()) {
    for (size_t k = 1; k <= ses.n_orig; ++k) header += ",x_raw_" + std::to_string(k);
  }
  std::printf("%s\n", header.c_str());

  std::vector<double> xc(ses.n), xo(ses.n_orig);
  for (double s : svals) {
    if (!(s >= 0.0) || !(s <= 1.0)) die("s values must lie in [0,1]", kExitInput);
    require_ok(oic_plan_decompose(plan.get(), ses.internal_s(s), xc.data(), 0));
    require_ok(oic_channel_expand(ses.canon.get(), xc.data(), xo.data()));
    std::string row = fmt(s);
    for (double x : xo) row += "," + fmt(x);
    if (!ses.peaks.empty()) {
      for (size_t k = 0; k < ses.n_orig; ++k) row += "," + fmt(xo[k] * ses.peaks[k]);
    }
    std::printf("%s\n", row.c_str());
  }
  return kExitOk;
}

int cmd_bounds(const std::string& channel_path, const std::string& kind_str, double sigma_min,
               double sigma_max, int points) {
  Session ses = Session::open(channel_path, kind_str);
  std::vector<oic_bounds_report> rows(points);
  require_ok(oic_bounds_sweep(ses.canon.get(), ses.kind, sigma_min, sigma_max, points,
                              rows.data()));
  std::printf("sigma,snr_db,lower_epi,upper_maxvar,upper_duality,best_lower,best_upper,gap\n");
  for (const auto& r : rows) {
    std::printf("%s,%s,%s,%s,%s,%s,%s,%s\n", fmt(r.sigma).c_str(),
                fmt(-20.0 * std::log10(r.sigma)).c_str(), fmt(r.lower_epi).c_str(),
                fmt(r.upper_maxvar).c_str(), fmt(r.upper_duality).c_str(),
                fmt(r.best_lower).c_str(), fmt(r.best_upper).c_str(), fmt(r.gap).c_str());
  }
  double slope = 0.0, offset = 0.0;
  require_ok(oic_low_snr_slope(ses.canon.get(), ses.kind, &slope));
  require_ok(oic_high_snr_offset(ses.canon.get(), ses.kind, &offset));
  std::printf("low_snr_slope,%s\n", fmt(slope).c_str());
  std::printf("high_snr_offset,%s\n", fmt(offset).c_str());
  return kExitOk;
}

int cmd_maxent(const std::string& channel_path, const std::string& kind_str) {
  Session ses = Session::open(channel_path, kind_str);
  double nu0 = 0.0, gamma = 0.0;
  std::vector<double> lambdas(ses.n);
  require_ok(oic_maxent_solve(ses.canon.get(), ses.kind, nullptr, &nu0, &gamma, lambdas.data()));
  std::vector<double> h(ses.n), alpha(ses.n);
  double sigma = 0.0;
  require_ok(oic_channel_get(ses.canon.get(), h.data(), alpha.data(), &sigma));
  std::vector<double> breaks;
  double acc = 0.0;
  for (size_t k = 0; k + 1 < ses.n; ++k) {
    acc += h[k];
    breaks.push_back(acc);
  }
  nlohmann::json out;
  out["kind"] = kind_str;
  out["nu0"] = nu0;
  out["lambdas"] = lambdas;
  out["gamma"] = gamma;
  out["breakpoints"] = breaks;
  std::printf("%s\n", out.dump().c_str());
  return kExitOk;
}

int cmd_verify(const std::string& channel_path, const std::string& kind_str, double sigma_min,
               double sigma_max, int points, unsigned long long seed) {
  Session ses = Session::open(channel_path, kind_str);
  std::vector<double> alpha(ses.n), h(ses.n);
  double sig_unused = 0.0;
  require_ok(oic_channel_get(ses.canon.get(), h.data(), alpha.data(), &sig_unused));

  struct Input {
    std::string name;
    DistPtr dist;
  };
  std::vector<Input> inputs;
  {
    oic_dist* mc = nullptr;
    require_ok(oic_dist_maximally_convex(ses.canon.get(), &mc));
    inputs.push_back({"maximally_convex", DistPtr(mc)});
    oic_dist* me = nullptr;
    require_ok(oic_maxent_solve(ses.canon.get(), ses.kind, &me, nullptr, nullptr, nullptr));
    inputs.push_back({"maxent", DistPtr(me)});
    if (ses.kind == OIC_BC) {
      const double p1 = alpha[ses.n - 1];
      const double support[2] = {0.0, 1.0};
      const double masses[2] = {1.0 - p1, p1};
      oic_dist* ook = nullptr;
      require_ok(oic_dist_create_discrete(support, masses, 2, &ook));
      inputs.push_back({"ook", DistPtr(ook)});
    }
  }

  double gamma = 0.0;
  require_ok(oic_maxent_solve(ses.canon.get(), ses.kind, nullptr, nullptr, &gamma, nullptr));

  std::vector<double> sigmas(points);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    sigmas[i] = std::exp(std::log(sigma_min) + t * (std::log(sigma_max) - std::log(sigma_min)));
  }

  bool all_ok = true;
  std::printf("input,sigma,mi,best_upper,lower_epi,ok\n");
  for (const auto& in : inputs) {
    // Sampling sanity: the empirical mean of a seeded stream must sit inside
    // a five-sigma band around the exact mean.
    constexpr size_t kSamples = 100000;
    std::vector<double> draws(kSamples);
    require_ok(oic_dist_sample(in.dist.get(), seed, kSamples, draws.data()));
    double acc = 0.0;
    for (double v : draws) acc += v;
    const double emp_mean = acc / kSamples;
    const double sd = std::sqrt(oic_dist_variance(in.dist.get()) / kSamples);
    if (std::abs(emp_mean - oic_dist_mean(in.dist.get())) > 5.0 * sd + 1e-9) {
      std::printf("# sample-mean check failed for %s\n", in.name.c_str());
      all_ok = false;
    }
    for (double sigma : sigmas) {
      oic_bounds_report rep{};
      require_ok(oic_bounds_at(ses.canon.get(), ses.kind, sigma, &rep));
      double mi = 0.0, err = 0.0;
      require_ok(oic_mutual_info(in.dist.get(), sigma, &mi, &err));
      bool ok = mi <= rep.best_upper + 1e-3;
      if (in.name == "maxent" && sigma <= 0.1) ok = ok && mi >= rep.lower_epi - 2e-3;
      all_ok = all_ok && ok;
      std::printf("%s,%s,%s,%s,%s,%s\n", in.name.c_str(), fmt(sigma).c_str(), fmt(mi).c_str(),
                  fmt(rep.best_upper).c_str(), fmt(rep.lower_epi).c_str(), ok ? "pass" : "FAIL");
    }
  }
  return all_ok ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity bounds and signaling for MISO optical intensity channels"};
  app.require_subcommand(1);

  std::string channel_path, dist_path, kind = "ec", plan_out;
  std::vector<double> svals;
  int grid = 0, points = 40;
  double sigma_min = 1e-4, sigma_max = 10.0;
  unsigned long long seed = 0;

  auto add_common = [&](CLI::App* sub, bool with_dist) {
    sub->add_option("--channel", channel_path, "channel JSON file")->required();
    sub->add_option("--kind", kind, "constraint kind: ec or bc")
        ->check(CLI::IsMember({"ec", "bc"}));
    if (with_dist) sub->add_option("--dist", dist_path, "distribution JSON file")->required();
  };

  auto* feas = app.add_subcommand("feasible", "check whether a distribution is feasible");
  add_common(feas, true);

  auto* dec = app.add_subcommand("decompose", "per-antenna signals for given realizations");
  add_common(dec, true);
  dec->add_option("--s", svals, "realization(s) of the equivalent input");
  dec->add_option("--grid", grid, "use N evenly spaced realizations instead of --s");
  dec->add_option("--plan-out", plan_out, "write the partition plan JSON here");

  auto* bnd = app.add_subcommand("bounds", "capacity bound sweep as CSV");
  add_common(bnd, false);
  bnd->add_option("--sigma-min", sigma_min, "smallest noise level");
  bnd->add_option("--sigma-max", sigma_max, "largest noise level");
  bnd->add_option("--points", points, "number of log-spaced noise levels");

  auto* mx = app.add_subcommand("maxent", "max-entropy input law as JSON");
  add_common(mx, false);

  auto* ver = app.add_subcommand("verify", "mutual-information sandwich suite");
  add_common(ver, false);
  ver->add_option("--sigma-min", sigma_min, "smallest noise level")->capture_default_str();
  ver->add_option("--sigma-max", sigma_max, "largest noise level")->capture_default_str();
  ver->add_option("--points", points, "number of noise levels")->capture_default_str();
  ver->add_option("--seed", seed, "seed for the sampling sanity check");

  // verify defaults differ from bounds: moderate noise, few points
  ver->parse_complete_callback([&] {
    if (!ver->count("--sigma-min")) sigma_min = 0.02;
    if (!ver->count("--sigma-max")) sigma_max = 1.0;
    if (!ver->count("--points")) points = 4;
  });

  CLI11_PARSE(app, argc, argv);

  try {
    if (feas->parsed()) return cmd_feasible(channel_path, dist_path, kind);
    if (dec->parsed()) return cmd_decompose(channel_path, dist_path, kind, svals, grid, plan_out);
    if (bnd->parsed()) return cmd_bounds(channel_path, kind, sigma_min, sigma_max, points);
    if (mx->parsed()) return cmd_maxent(channel_path, kind);
    if (ver->parsed()) return cmd_verify(channel_path, kind, sigma_min, sigma_max, points, seed);
  } catch (const std::exception& e) {
    die(e.what(), kExitInput);
  }
  return kExitInput;
}
