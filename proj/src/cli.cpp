#include "qcond/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "qcond/eraser.hpp"
#include "qcond/everett.hpp"
#include "qcond/measure.hpp"
#include "qcond/orderprop.hpp"
#include "qcond/version.hpp"
#include "qcond/wheeler.hpp"

namespace qcond::cli {

namespace {

using nlohmann::json;

constexpr double kSpreadTolerance = 1e-12;

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  return v.get<double>();
}

std::uint64_t as_seed(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if (i < 0) throw ConfigError(key + ": expected a nonnegative integer");
    return static_cast<std::uint64_t>(i);
  }
  throw ConfigError(key + ": expected a nonnegative integer");
}

std::size_t as_count(const json& v, const std::string& key) {
  return static_cast<std::size_t>(as_seed(v, key));
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key + ": expected a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

eraser::Mode parse_mode(const std::string& m) {
  if (m == "paper") return eraser::Mode::paper;
  if (m == "unitary") return eraser::Mode::unitary;
  throw ConfigError("mode: expected \"paper\" or \"unitary\", got \"" + m + "\"");
}

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::csv;
  if (f == "json") return Format::json;
  throw ConfigError("format: expected \"csv\" or \"json\", got \"" + f + "\"");
}

std::vector<double> linspace(double lo, double hi, std::size_t bins,
                             const std::string& key) {
  if (bins < 2)
    throw ConfigError(key +
                      ": theta_grid nonempty and strictly increasing needs at least 2 bins");
  if (!(lo < hi)) throw ConfigError(key + ": theta_min must be < theta_max");
  std::vector<double> grid(bins);
  const double step = (hi - lo) / static_cast<double>(bins - 1);
  for (std::size_t i = 0; i < bins; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

eraser::Config build_eraser_config(const EraserParams& p) {
  return eraser::make_config(
      p.k, p.d, eraser::sin_spaced_grid(p.sin_theta_min, p.sin_theta_max, p.theta_bins),
      parse_mode(p.mode));
}

wheeler::Config build_wheeler_config(const WheelerParams& p) {
  const wheeler::Vec2 r1{0.0, 0.5 * p.d};
  const wheeler::Vec2 r2{0.0, -0.5 * p.d};
  const wheeler::Vec2 aim{p.telescope_aim_x.value_or(p.screen_distance),
                          p.telescope_aim_y.value_or(0.0)};
  double halfwidth;
  if (p.acceptance_halfwidth) {
    halfwidth = *p.acceptance_halfwidth;
  } else {
    // Default window: a quarter of the angular separation of the slits as
    // seen from the telescope, comfortably inside the validity bound.
    const double a1 = std::atan2(r1.y - aim.y, r1.x - aim.x);
    const double a2 = std::atan2(r2.y - aim.y, r2.x - aim.x);
    double sep = std::abs(a1 - a2);
    if (sep > 3.141592653589793) sep = 2.0 * 3.141592653589793 - sep;
    halfwidth = 0.25 * sep;
    if (!(halfwidth > 0.0))
      throw ConfigError("telescope_aim: invalid aim geometry (slits collinear with aim)");
  }
  return wheeler::make_config(p.k, r1, r2, p.screen_distance,
                              linspace(p.theta_min, p.theta_max, p.theta_bins, "theta_bins"),
                              aim, halfwidth);
}

Meta base_meta(const RunConfig& config) {
  Meta meta;
  meta["experiment"] = experiment_name(config.experiment);
  meta["seed"] = std::to_string(config.seed);
  meta["version"] = std::string{kVersion};
  meta["generator"] = std::string{orderprop::kGeneratorName};
  return meta;
}

// Spin singlet (|up,down> - |down,up>)/sqrt(2).
StateVector singlet() {
  return make_state({2, 2}, {Complex{0.0}, Complex{1.0}, Complex{-1.0}, Complex{0.0}});
}

ProjectiveFamily z_family() {
  return family_from_basis({{Complex{1.0}, Complex{0.0}}, {Complex{0.0}, Complex{1.0}}});
}

const char* z_name(std::size_t outcome) { return outcome == 0 ? "up" : "down"; }

RunResult run_epr(const RunConfig& config) {
  const StateVector s = singlet();
  const ProjectiveFamily fz = z_family();
  const JointDistribution a_first = joint_distribution(s, {{0, fz}, {1, fz}});
  const JointDistribution b_first = joint_distribution(s, {{1, fz}, {0, fz}});

  double order_diff = 0.0;
  Table table;
  table.columns = {"outcome_a", "outcome_b", "p_a_first", "p_b_first"};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double pa = a_first.at({i, j});
      const double pb = b_first.at({j, i});
      order_diff = std::max(order_diff, std::abs(pa - pb));
      table.rows.push_back({std::string{z_name(i)}, std::string{z_name(j)}, pa, pb});
    }

  Meta meta = base_meta(config);
  meta["order_max_diff"] = order_diff;

  RunResult res;
  res.exit_code = order_diff > kSpreadTolerance ? kExitViolation : kExitOk;
  res.output = emit_table(table, meta, config.format);
  return res;
}

RunResult run_eraser(const RunConfig& config) {
  const eraser::Config ec = build_eraser_config(config.eraser);
  const StateVector state = eraser::build_state(ec.mode);

  const eraser::ScreenTable joint = eraser::joint_screen_distribution(state, ec);
  std::array<FringePattern, 4> cond;
  for (std::size_t j = 0; j < 4; ++j)
    cond[j] = eraser::conditional_pattern(state, eraser::kDetectors[j], ec);
  const eraser::ScheduleEquivalenceReport equiv = eraser::schedule_equivalence(state, ec);
  const JointDistribution marg = eraser::idler_marginals(state);

  Table table;
  table.columns = {"theta",   "p_D1",    "p_D2",    "p_D3",    "p_D4",
                   "cond_D1", "cond_D2", "cond_D3", "cond_D4"};
  for (std::size_t i = 0; i < ec.theta_grid.size(); ++i) {
    std::vector<Cell> row{ec.theta_grid[i]};
    for (std::size_t j = 0; j < 4; ++j) row.push_back(joint.joint[i][j]);
    for (std::size_t j = 0; j < 4; ++j) row.push_back(cond[j].intensity[i]);
    table.rows.push_back(std::move(row));
  }

  Meta meta = base_meta(config);
  meta["mode"] = config.eraser.mode;
  meta["k"] = ec.k;
  meta["d"] = ec.d;
  meta["order_max_diff"] = equiv.max_abs_diff;
  for (std::size_t j = 0; j < 4; ++j) {
    meta["idler_D" + std::to_string(j + 1)] = marg.at({j});
    meta["visibility_D" + std::to_string(j + 1)] = cond[j].visibility;
  }

  RunResult res;
  res.exit_code = equiv.max_abs_diff > kSpreadTolerance ? kExitViolation : kExitOk;
  res.output = emit_table(table, meta, config.format);
  return res;
}

RunResult run_wheeler(const RunConfig& config) {
  const wheeler::Config wc = build_wheeler_config(config.wheeler);
  const wheeler::TelescopeProbabilities clicks = wheeler::telescope_probabilities(wc);

  Table table;
  Meta meta = base_meta(config);
  meta["k"] = wc.k;
  meta["d"] = wheeler::slit_separation(wc);
  meta["screen_distance"] = wc.screen_distance;
  meta["screen_in"] = static_cast<std::int64_t>(config.wheeler.screen_in ? 1 : 0);
  meta["p_telescope_1"] = clicks.p1;
  meta["p_telescope_2"] = clicks.p2;

  if (config.wheeler.screen_in) {
    const auto result = wheeler::delayed_choice(wc, true);
    const FringePattern& pat = std::get<FringePattern>(result);
    std::vector<double> exact = wheeler::exact_screen_intensity(wc);
    double mean = 0.0;
    for (double v : exact) mean += v;
    mean /= static_cast<double>(exact.size());
    table.columns = {"theta", "intensity", "intensity_exact"};
    for (std::size_t i = 0; i < pat.theta.size(); ++i)
      table.rows.push_back({pat.theta[i], pat.intensity[i], exact[i] / mean});
    meta["visibility"] = pat.visibility;
  } else {
    const auto result = wheeler::delayed_choice(wc, false);
    const auto& t = std::get<wheeler::TelescopeProbabilities>(result);
    table.columns = {"telescope", "probability"};
    table.rows.push_back({std::string{"T1"}, t.p1});
    table.rows.push_back({std::string{"T2"}, t.p2});
  }

  RunResult res;
  res.exit_code = kExitOk;
  res.output = emit_table(table, meta, config.format);
  return res;
}

RunResult run_orderprop(const RunConfig& config) {
  const auto& p = config.orderprop;
  const orderprop::FuzzSummary summary =
      orderprop::fuzz_campaign(p.trials, p.max_dim, p.max_len, config.seed);

  Table table;
  table.columns = {"trial", "seed",          "dim_a",        "dim_b",
                   "len_a", "len_b",         "interleavings", "max_spread"};
  for (std::size_t t = 0; t < summary.records.size(); ++t) {
    const auto& rec = summary.records[t];
    table.rows.push_back({static_cast<std::int64_t>(t), std::to_string(rec.seed),
                          static_cast<std::int64_t>(rec.dim_a),
                          static_cast<std::int64_t>(rec.dim_b),
                          static_cast<std::int64_t>(rec.len_a),
                          static_cast<std::int64_t>(rec.len_b),
                          static_cast<std::int64_t>(rec.num_interleavings),
                          rec.max_spread});
  }

  Meta meta = base_meta(config);
  meta["trials"] = static_cast<std::int64_t>(summary.trials);
  meta["worst_spread"] = summary.worst_spread;
  meta["worst_trial"] = static_cast<std::int64_t>(summary.worst_trial);
  meta["max_dim"] = static_cast<std::int64_t>(p.max_dim);
  meta["max_len"] = static_cast<std::int64_t>(p.max_len);

  RunResult res;
  res.exit_code = summary.worst_spread > kSpreadTolerance ? kExitViolation : kExitOk;
  res.output = emit_table(table, meta, config.format);
  return res;
}

RunResult run_everett(const RunConfig& config) {
  // EPR pair (|ud> + |du>)/sqrt(2) plus one spectator qubit that the
  // stability unitaries act on.
  StateVector base = make_state(
      {2, 2, 2},
      {Complex{0.0}, Complex{0.0}, Complex{1.0}, Complex{0.0},
       Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{0.0}});
  const ProjectiveFamily fz = z_family();
  const std::vector<std::string> names{"up", "down"};

  const everett::PremeasureEvent alice{0, fz, "Alice", names};
  const everett::PremeasureEvent bob{1, fz, "Bob", names};
  const everett::OrderIndependenceReport rep =
      everett::order_independence(base, {alice, bob}, {bob, alice});

  // Branch stability under seeded random unitaries on the spectator slot.
  auto pm1 = everett::premeasure(base, 0, fz, "Alice", names);
  auto pm2 = everett::premeasure(pm1.state, 1, fz, "Bob", names);
  const std::vector<everett::PointerSlot> pointers{pm1.pointer, pm2.pointer};
  double max_drift = 0.0;
  for (std::size_t t = 0; t < config.everett.stability_trials; ++t) {
    const LinearOperator u =
        orderprop::random_unitary(2, orderprop::derive_seed(config.seed, t));
    const everett::BranchStabilityReport st =
        everett::branch_stability(pm2.state, pointers, 2, u);
    max_drift = std::max(max_drift, st.max_drift);
  }

  Table table;
  table.columns = {"label", "weight_alice_first", "weight_bob_first", "weight_diff"};
  for (std::size_t i = 0; i < rep.branches_a.size(); ++i) {
    const auto& ba = rep.branches_a[i];
    const double wb = rep.labels_match ? rep.branches_b[i].weight : 0.0;
    table.rows.push_back(
        {ba.label.str(), ba.weight, wb, std::abs(ba.weight - wb)});
  }

  Meta meta = base_meta(config);
  meta["labels_match"] = static_cast<std::int64_t>(rep.labels_match ? 1 : 0);
  meta["amplitude_max_diff"] = rep.max_amplitude_difference;
  meta["stability_trials"] = static_cast<std::int64_t>(config.everett.stability_trials);
  meta["stability_max_drift"] = max_drift;

  const bool violated = !rep.labels_match ||
                        rep.max_amplitude_difference > kSpreadTolerance ||
                        max_drift > kSpreadTolerance;
  RunResult res;
  res.exit_code = violated ? kExitViolation : kExitOk;
  res.output = emit_table(table, meta, config.format);
  return res;
}

}  // namespace

Experiment experiment_from_name(const std::string& name) {
  if (name == "epr") return Experiment::epr;
  if (name == "eraser") return Experiment::eraser;
  if (name == "wheeler") return Experiment::wheeler;
  if (name == "orderprop") return Experiment::orderprop;
  if (name == "everett") return Experiment::everett;
  throw ConfigError("experiment: expected one of epr|eraser|wheeler|orderprop|everett, got \"" +
                    name + "\"");
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::epr: return "epr";
    case Experiment::eraser: return "eraser";
    case Experiment::wheeler: return "wheeler";
    case Experiment::orderprop: return "orderprop";
    case Experiment::everett: return "everett";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string{"config is not valid JSON: "} + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("experiment")) throw ConfigError("experiment: required key is missing");

  RunConfig config;
  config.experiment = experiment_from_name(as_string(j["experiment"], "experiment"));

  std::set<std::string> allowed{"experiment", "seed", "out", "format"};
  switch (config.experiment) {
    case Experiment::epr:
      break;
    case Experiment::eraser:
      allowed.insert({"mode", "k", "d", "sin_theta_min", "sin_theta_max", "theta_bins"});
      break;
    case Experiment::wheeler:
      allowed.insert({"k", "d", "screen_distance", "theta_min", "theta_max",
                      "theta_bins", "telescope_aim_x", "telescope_aim_y",
                      "acceptance_halfwidth", "screen_in"});
      break;
    case Experiment::orderprop:
      allowed.insert({"trials", "max_dim", "max_len"});
      break;
    case Experiment::everett:
      allowed.insert({"stability_trials"});
      break;
  }
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' for experiment '" +
                        experiment_name(config.experiment) + "'");

  if (j.contains("seed")) config.seed = as_seed(j["seed"], "seed");
  if (j.contains("out")) config.out = as_string(j["out"], "out");
  if (j.contains("format")) config.format = parse_format(as_string(j["format"], "format"));

  auto& er = config.eraser;
  auto& wh = config.wheeler;
  switch (config.experiment) {
    case Experiment::epr:
      break;
    case Experiment::eraser:
      if (j.contains("mode")) er.mode = as_string(j["mode"], "mode");
      if (j.contains("k")) er.k = as_double(j["k"], "k");
      if (j.contains("d")) er.d = as_double(j["d"], "d");
      if (j.contains("sin_theta_min"))
        er.sin_theta_min = as_double(j["sin_theta_min"], "sin_theta_min");
      if (j.contains("sin_theta_max"))
        er.sin_theta_max = as_double(j["sin_theta_max"], "sin_theta_max");
      if (j.contains("theta_bins")) er.theta_bins = as_count(j["theta_bins"], "theta_bins");
      break;
    case Experiment::wheeler:
      if (j.contains("k")) wh.k = as_double(j["k"], "k");
      if (j.contains("d")) wh.d = as_double(j["d"], "d");
      if (j.contains("screen_distance"))
        wh.screen_distance = as_double(j["screen_distance"], "screen_distance");
      if (j.contains("theta_min")) wh.theta_min = as_double(j["theta_min"], "theta_min");
      if (j.contains("theta_max")) wh.theta_max = as_double(j["theta_max"], "theta_max");
      if (j.contains("theta_bins")) wh.theta_bins = as_count(j["theta_bins"], "theta_bins");
      if (j.contains("telescope_aim_x"))
        wh.telescope_aim_x = as_double(j["telescope_aim_x"], "telescope_aim_x");
      if (j.contains("telescope_aim_y"))
        wh.telescope_aim_y = as_double(j["telescope_aim_y"], "telescope_aim_y");
      if (j.contains("acceptance_halfwidth"))
        wh.acceptance_halfwidth =
            as_double(j["acceptance_halfwidth"], "acceptance_halfwidth");
      if (j.contains("screen_in")) wh.screen_in = as_bool(j["screen_in"], "screen_in");
      break;
    case Experiment::orderprop:
      if (j.contains("trials"))
        config.orderprop.trials = as_count(j["trials"], "trials");
      if (j.contains("max_dim"))
        config.orderprop.max_dim = as_count(j["max_dim"], "max_dim");
      if (j.contains("max_len"))
        config.orderprop.max_len = as_count(j["max_len"], "max_len");
      break;
    case Experiment::everett:
      if (j.contains("stability_trials"))
        config.everett.stability_trials =
            as_count(j["stability_trials"], "stability_trials");
      break;
  }

  validate(config);
  return config;
}

void validate(const RunConfig& config) {
  try {
    switch (config.experiment) {
      case Experiment::epr:
        break;
      case Experiment::eraser:
        build_eraser_config(config.eraser);
        break;
      case Experiment::wheeler:
        build_wheeler_config(config.wheeler);
        break;
      case Experiment::orderprop: {
        const auto& p = config.orderprop;
        if (p.trials < 1) throw ConfigError("trials: must be >= 1");
        if (p.max_dim < 2 || p.max_dim > 8)
          throw ConfigError("max_dim: must be in [2, 8]");
        if (p.max_len < 1 || 2 * p.max_len > 12)
          throw ConfigError("max_len: must be in [1, 6] (interleaving cap n+m <= 12)");
        break;
      }
      case Experiment::everett:
        if (config.everett.stability_trials < 1)
          throw ConfigError("stability_trials: must be >= 1");
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunResult render(const RunConfig& config) {
  switch (config.experiment) {
    case Experiment::epr: return run_epr(config);
    case Experiment::eraser: return run_eraser(config);
    case Experiment::wheeler: return run_wheeler(config);
    case Experiment::orderprop: return run_orderprop(config);
    case Experiment::everett: return run_everett(config);
  }
  throw ConfigError("experiment: unknown");
}

int run(const RunConfig& config) {
  const RunResult res = render(config);
  if (config.out.empty()) {
    std::fwrite(res.output.data(), 1, res.output.size(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) throw IoError("cannot open output path: " + config.out);
    out.write(res.output.data(),
              static_cast<std::streamsize>(res.output.size()));
    out.flush();
    if (!out) throw IoError("failed writing output path: " + config.out);
  }
  return res.exit_code;
}

}  // namespace qcond::cli
