// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Usage: acceptance <path-to-qcond-cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qcond/cli.hpp"
#include "qcond/eraser.hpp"
#include "qcond/everett.hpp"
#include "qcond/measure.hpp"
#include "qcond/orderprop.hpp"
#include "qcond/wheeler.hpp"

namespace {

using namespace qcond;
namespace fs = std::filesystem;

constexpr double kTolStrict = 1e-12;
std::string g_cli_path;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

ProjectiveFamily comp_family(std::size_t dim) {
  std::vector<std::vector<Complex>> basis(dim, std::vector<Complex>(dim, Complex{0.0}));
  for (std::size_t i = 0; i < dim; ++i) basis[i][i] = 1.0;
  return family_from_basis(basis);
}

StateVector singlet() {
  return make_state({2, 2}, {Complex{0.0}, Complex{1.0}, Complex{-1.0}, Complex{0.0}});
}

// 1. Singlet anti-correlation, identical for both measurement orders.
Check criterion_epr() {
  Check c;
  const ProjectiveFamily fz = comp_family(2);
  const JointDistribution a = joint_distribution(singlet(), {{0, fz}, {1, fz}});
  const JointDistribution b = joint_distribution(singlet(), {{1, fz}, {0, fz}});
  c.require(std::abs(a.at({0, 1}) - 0.5) < kTolStrict, "P(up,down) != 0.5");
  c.require(std::abs(a.at({1, 0}) - 0.5) < kTolStrict, "P(down,up) != 0.5");
  c.require(std::abs(a.at({0, 0})) < kTolStrict, "P(up,up) != 0");
  c.require(std::abs(a.at({1, 1})) < kTolStrict, "P(down,down) != 0");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      c.require(std::abs(a.at({i, j}) - b.at({j, i})) < kTolStrict,
                "order changed the distribution");
  return c;
}

// 2. Order-invariance fuzz campaign plus the same-slot control.
Check criterion_orderprop() {
  Check c;
  const orderprop::FuzzSummary summary = orderprop::fuzz_campaign(1000, 4, 3, 20260811);
  c.require(summary.worst_spread < kTolStrict,
            "worst spread " + std::to_string(summary.worst_spread));

  const StateVector up = make_state({2}, {Complex{1.0}, Complex{0.0}});
  const double r = 1.0 / std::sqrt(2.0);
  const ProjectiveFamily fx =
      family_from_basis({{Complex{r}, Complex{r}}, {Complex{r}, Complex{-r}}});
  const orderprop::InterleavingReport control = orderprop::check_interleavings(
      up, {MeasurementEvent{0, comp_family(2), 0}}, {MeasurementEvent{0, fx, 0}});
  c.require(control.max_spread > 0.1, "same-slot control spread too small");
  return c;
}

// 3. Bayes symmetry with the |alpha_IJ|^2 oracle on eigenbasis measurements.
Check criterion_bayes() {
  Check c;
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    orderprop::Rng rng(orderprop::derive_seed(3, trial));
    const std::size_t da = rng.uniform_int(2, 4);
    const std::size_t db = rng.uniform_int(2, 4);
    const StateVector s = orderprop::random_state({da, db}, rng);
    const std::size_t i = rng.uniform_int(0, da - 1);
    const std::size_t j = rng.uniform_int(0, db - 1);
    const BayesReport rep =
        bayes_symmetry_check(s, MeasurementEvent{0, comp_family(da), i},
                             MeasurementEvent{1, comp_family(db), j});
    const double alpha_sq = std::norm(s.amps[flat_index(s.dims, {i, j})]);
    worst = std::max({worst, std::abs(rep.forward - rep.reverse),
                      std::abs(rep.forward - alpha_sq),
                      std::abs(rep.reverse - alpha_sq)});
  }
  c.require(worst < kTolStrict, "worst deviation " + std::to_string(worst));
  return c;
}

// 4. Eraser detector marginals in paper mode.
Check criterion_marginals() {
  Check c;
  const JointDistribution m = eraser::idler_marginals(eraser::build_state(eraser::Mode::paper));
  for (std::size_t j = 0; j < 4; ++j)
    c.require(std::abs(m.at({j}) - 0.25) < kTolStrict,
              "D" + std::to_string(j + 1) + " marginal != 1/4");
  return c;
}

eraser::Config acceptance_eraser_config(eraser::Mode mode) {
  return eraser::make_config(1.0, 6.283185307179586,
                             eraser::sin_spaced_grid(-0.9, 0.9, 181), mode);
}

// 5. Conditional patterns and the two no-signaling shapes, 181 bins.
Check criterion_patterns() {
  Check c;
  for (const auto mode : {eraser::Mode::paper, eraser::Mode::unitary}) {
    const eraser::Config cfg = acceptance_eraser_config(mode);
    const StateVector s = eraser::build_state(mode);
    c.require(eraser::conditional_pattern(s, eraser::Detector::D3, cfg).visibility <
                  kTolStrict,
              "D3 visibility not flat");
    c.require(eraser::conditional_pattern(s, eraser::Detector::D4, cfg).visibility <
                  kTolStrict,
              "D4 visibility not flat");
    c.require(std::abs(eraser::conditional_pattern(s, eraser::Detector::D1, cfg)
                           .visibility -
                       1.0) < kTolStrict,
              "D1 visibility not 1");
  }

  const eraser::Config ucfg = acceptance_eraser_config(eraser::Mode::unitary);
  const eraser::ScreenTable utable =
      eraser::joint_screen_distribution(eraser::build_state(eraser::Mode::unitary), ucfg);
  for (std::size_t i = 0; i < utable.joint.size(); ++i) {
    c.require(std::abs(utable.joint[i][0] + utable.joint[i][1] - 0.5) < kTolStrict,
              "unitary D1+D2 joint not flat");
    c.require(std::abs(utable.row_sum(i) - 1.0) < kTolStrict,
              "unitary signal marginal not flat");
  }

  const eraser::Config pcfg = acceptance_eraser_config(eraser::Mode::paper);
  const eraser::ScreenTable ptable =
      eraser::joint_screen_distribution(eraser::build_state(eraser::Mode::paper), pcfg);
  double lo = ptable.row_sum(0), hi = lo;
  for (std::size_t i = 0; i < ptable.joint.size(); ++i) {
    lo = std::min(lo, ptable.row_sum(i));
    hi = std::max(hi, ptable.row_sum(i));
  }
  c.require(std::abs((hi - lo) / (hi + lo) - 0.5) < kTolStrict,
            "paper signal-marginal visibility != 1/2");
  return c;
}

cli::Table screen_to_table(const eraser::ScreenTable& t) {
  cli::Table table;
  table.columns = {"theta", "p_D1", "p_D2", "p_D3", "p_D4"};
  for (std::size_t i = 0; i < t.theta.size(); ++i)
    table.rows.push_back(
        {t.theta[i], t.joint[i][0], t.joint[i][1], t.joint[i][2], t.joint[i][3]});
  return table;
}

// 6. Delayed-choice equivalence: identical joint tables, byte-identical
// after serialization.
Check criterion_equivalence() {
  Check c;
  for (const auto mode : {eraser::Mode::paper, eraser::Mode::unitary}) {
    const eraser::Config cfg = acceptance_eraser_config(mode);
    const eraser::ScheduleEquivalenceReport rep =
        eraser::schedule_equivalence(eraser::build_state(mode), cfg);
    c.require(rep.max_abs_diff < kTolStrict, "numeric difference above tolerance");
    const std::string a = cli::emit_table(screen_to_table(rep.signal_first), {},
                                          cli::Format::csv);
    const std::string b = cli::emit_table(screen_to_table(rep.idler_first), {},
                                          cli::Format::csv);
    c.require(a == b, "serialized tables differ between schedule orders");
  }
  return c;
}

// 7. Wheeler far field: fringe maxima and telescope equality.
Check criterion_wheeler() {
  Check c;
  const double d = 10.0;
  const double two_pi = 6.283185307179586;
  std::vector<double> grid(701);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = -0.35 + 1e-3 * static_cast<double>(i);

  const wheeler::Config cfg =
      wheeler::make_config(two_pi, wheeler::Vec2{0.0, 0.5 * d},
                           wheeler::Vec2{0.0, -0.5 * d}, 1e4 * d, grid,
                           wheeler::Vec2{1e4 * d, 0.0}, 2.5e-5);
  const std::vector<double> exact = wheeler::exact_screen_intensity(cfg);
  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < exact.size(); ++i)
    if (exact[i] > exact[i - 1] && exact[i] > exact[i + 1])
      maxima.push_back(cfg.theta_grid[i]);
  c.require(maxima.size() == 7, "expected 7 interior maxima, found " +
                                    std::to_string(maxima.size()));
  for (int n = -3; n <= 3; ++n) {
    const double want = std::asin(0.1 * n);  // k d sin(theta) = 2 n pi
    double best = 1e9;
    for (double m : maxima) best = std::min(best, std::abs(m - want));
    c.require(best <= 1e-3, "maximum off the 2n pi position by more than a grid step");
  }

  double prev_gap = 1.0;
  for (const double ratio : {1e2, 1e3, 1e4}) {
    const double L = ratio * d;
    const wheeler::Vec2 aim{L * std::cos(0.3), L * std::sin(0.3)};
    const wheeler::Config tcfg = wheeler::make_config(
        two_pi, wheeler::Vec2{0.0, 0.5 * d}, wheeler::Vec2{0.0, -0.5 * d}, L,
        {-0.1, 0.0, 0.1}, aim, 1e-4 * d / ratio);
    const wheeler::TelescopeProbabilities p = wheeler::telescope_probabilities(tcfg);
    const double gap = std::abs(p.p1 - p.p2);
    if (ratio == 1e3)
      c.require(gap < 10.0 * d / L, "telescope gap above 10 d/L at L = 1e3 d");
    c.require(gap < prev_gap, "telescope gap not shrinking with L");
    prev_gap = gap;
  }
  return c;
}

// 8. Everett branch ledger: oracle equivalence, order independence,
// spectator stability.
Check criterion_everett() {
  Check c;
  const ProjectiveFamily fz = comp_family(2);
  const std::vector<std::string> names{"up", "down"};

  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    orderprop::Rng rng(orderprop::derive_seed(8, trial));
    const std::size_t da = rng.uniform_int(2, 4);
    const std::size_t db = rng.uniform_int(2, 4);
    const StateVector s = orderprop::random_state({da, db}, rng);
    const ProjectiveFamily fa = orderprop::random_family(da, rng);
    const ProjectiveFamily fb = orderprop::random_family(db, rng);
    auto pm1 = everett::premeasure(s, 0, fa, "A");
    auto pm2 = everett::premeasure(pm1.state, 1, fb, "B");
    const auto branches = everett::branch_decompose(pm2.state, {pm1.pointer, pm2.pointer});
    const JointDistribution dist = joint_distribution(s, {{0, fa}, {1, fb}});
    double covered = 0.0;
    for (const auto& b : branches) {
      worst = std::max(worst,
                       std::abs(b.weight - dist.at({b.outcomes[0], b.outcomes[1]})));
      covered += b.weight;
    }
    worst = std::max(worst, std::abs(covered - 1.0));
  }
  c.require(worst < kTolStrict, "branch/Born mismatch " + std::to_string(worst));

  const StateVector epr =
      make_state({2, 2}, {Complex{0.0}, Complex{1.0}, Complex{1.0}, Complex{0.0}});
  const everett::PremeasureEvent alice{0, fz, "Alice", names};
  const everett::PremeasureEvent bob{1, fz, "Bob", names};
  const everett::OrderIndependenceReport rep =
      everett::order_independence(epr, {alice, bob}, {bob, alice});
  c.require(rep.labels_match, "EPR branch labels differ between orders");
  c.require(rep.max_amplitude_difference < kTolStrict,
            "EPR branch amplitudes differ between orders");

  const StateVector base =
      tensor_state(epr, make_state({2}, {Complex{1.0}, Complex{0.0}}));
  auto pm1 = everett::premeasure(base, 0, fz, "Alice", names);
  auto pm2 = everett::premeasure(pm1.state, 1, fz, "Bob", names);
  const std::vector<everett::PointerSlot> pointers{pm1.pointer, pm2.pointer};
  double drift = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const LinearOperator u = orderprop::random_unitary(2, orderprop::derive_seed(88, t));
    drift = std::max(drift,
                     everett::branch_stability(pm2.state, pointers, 2, u).max_drift);
  }
  c.require(drift < kTolStrict, "spectator unitary drifted branch weights");
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Byte-identical CLI output for repeated (config, seed) runs.
Check criterion_determinism() {
  Check c;
  if (g_cli_path.empty()) {
    c.require(false, "CLI path not supplied (argv[1])");
    return c;
  }
  const fs::path dir = fs::temp_directory_path() / "qcond_acceptance";
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::string>> configs{
      {"epr", R"({"experiment": "epr"})"},
      {"eraser",
       R"({"experiment": "eraser", "mode": "unitary", "k": 1.0, "d": 6.283185307179586, "theta_bins": 61})"},
      {"wheeler", R"({"experiment": "wheeler", "theta_bins": 101})"},
      {"orderprop", R"({"experiment": "orderprop", "trials": 100})"},
      {"everett", R"({"experiment": "everett", "stability_trials": 25})"}};

  for (const auto& [name, body] : configs) {
    const fs::path cfg_path = dir / (name + ".json");
    std::ofstream(cfg_path) << body;
    const fs::path out1 = dir / (name + ".1.csv");
    const fs::path out2 = dir / (name + ".2.csv");
    for (const fs::path& out : {out1, out2}) {
      const int code = run_cli(name + " --config " + cfg_path.string() +
                               " --seed 4242 --out " + out.string());
      c.require(code == 0, name + " run exited with code " + std::to_string(code));
    }
    c.require(!slurp(out1).empty(), name + " produced no output");
    c.require(slurp(out1) == slurp(out2), name + " output not byte-identical");
  }
  fs::remove_all(dir);
  return c;
}

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;
  std::function<Check()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria{
      {1, "EPR anti-correlation, both measurement orders", 1.0, criterion_epr},
      {2, "order-invariance fuzz campaign (1000 trials) + same-slot control", 30.0,
       criterion_orderprop},
      {3, "Bayes symmetry on 1000 random bipartite states", 5.0, criterion_bayes},
      {4, "eraser detector marginals (1/4 each, paper mode)", 1.0, criterion_marginals},
      {5, "eraser conditional patterns and marginal shapes", 1.0, criterion_patterns},
      {6, "delayed-choice schedule equivalence, byte-identical tables", 1.0,
       criterion_equivalence},
      {7, "Wheeler far-field maxima and telescope equality", 5.0, criterion_wheeler},
      {8, "Everett branch weights vs Born rule, order and stability", 10.0,
       criterion_everett},
      {9, "byte-identical CLI reruns for every experiment", 30.0,
       criterion_determinism},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = crit.fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string{"exception: "} + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > crit.time_limit_s) {
      c.ok = false;
      c.detail = "runtime " + std::to_string(elapsed) + "s exceeds " +
                 std::to_string(crit.time_limit_s) + "s";
    }
    std::printf("[%s] criterion %d (%.2fs): %s%s%s\n", c.ok ? "PASS" : "FAIL", crit.id,
                elapsed, crit.title, c.ok ? "" : " - ", c.ok ? "" : c.detail.c_str());
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
