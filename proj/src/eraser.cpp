#include "qcond/eraser.hpp"

#include <cmath>
#include <stdexcept>

namespace qcond::eraser {

namespace {

constexpr std::size_t kSignalSlot = 0;
constexpr std::size_t kIdlerSlot = 1;
const std::vector<std::size_t> kDims{2, 4};

// Idler amplitudes over D1..D4 for one slit path, following the optics:
// the upper idler meets BS_A (transmission -> D4, reflection -> BS_C), the
// lower one BS_B (transmission -> D3, reflection -> BS_C), and BS_C mixes
// the two inner paths into D1/D2. reflect is the reflection amplitude
// relative to transmission: 1 in paper mode, i in unitary mode. Mirror
// phases are common to both inner paths and drop out of every observable.
std::array<Complex, 4> idler_branch(bool upper, Complex reflect) {
  const double t = 1.0 / std::sqrt(2.0);
  std::array<Complex, 4> c{};
  const Complex inner = reflect * t;
  if (upper) {
    c[3] = t;                   // D4
    c[0] = inner * t;           // BS_C transmission -> D1
    c[1] = inner * reflect * t; // BS_C reflection  -> D2
  } else {
    c[2] = t;                   // D3
    c[1] = inner * t;           // BS_C transmission -> D2
    c[0] = inner * reflect * t; // BS_C reflection  -> D1
  }
  return c;
}

double phase_at(double theta, const Config& config) {
  return config.k * config.d * std::sin(theta);
}

// Signal amplitudes (c_U, c_L) sitting in the chosen detector column.
std::pair<Complex, Complex> detector_column(const StateVector& state, Detector det) {
  const std::size_t j = static_cast<std::size_t>(det);
  return {state.amps[flat_index(state.dims, {0, j})],
          state.amps[flat_index(state.dims, {1, j})]};
}

}  // namespace

Config make_config(double k, double d, std::vector<double> theta_grid, Mode mode) {
  if (!(k > 0.0)) throw std::invalid_argument("eraser config: k must be > 0");
  if (!(d > 0.0)) throw std::invalid_argument("eraser config: d must be > 0");
  validate_theta_grid(theta_grid);
  return Config{k, d, std::move(theta_grid), mode};
}

std::vector<double> sin_spaced_grid(double sin_min, double sin_max, std::size_t bins) {
  if (bins < 2)
    throw std::invalid_argument(
        "theta_grid nonempty and strictly increasing: need at least 2 bins");
  if (!(sin_min < sin_max) || sin_min <= -1.0 || sin_max >= 1.0)
    throw std::invalid_argument("sin_spaced_grid: need -1 < sin_min < sin_max < 1");
  std::vector<double> grid(bins);
  const double step = (sin_max - sin_min) / static_cast<double>(bins - 1);
  for (std::size_t i = 0; i < bins; ++i)
    grid[i] = std::asin(sin_min + static_cast<double>(i) * step);
  return grid;
}

StateVector build_state(Mode mode) {
  const Complex reflect = mode == Mode::paper ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
  const auto upper = idler_branch(true, reflect);
  const auto lower = idler_branch(false, reflect);
  const double slit = 1.0 / std::sqrt(2.0);  // |I> -> (|U> + |L>)/sqrt(2)
  std::vector<Complex> amps(8);
  for (std::size_t j = 0; j < 4; ++j) {
    amps[flat_index(kDims, {0, j})] = slit * upper[j];
    amps[flat_index(kDims, {1, j})] = slit * lower[j];
  }
  return make_state(kDims, std::move(amps));
}

ProjectiveFamily detector_family() {
  std::vector<std::vector<Complex>> basis(4, std::vector<Complex>(4, Complex{0.0}));
  for (std::size_t j = 0; j < 4; ++j) basis[j][j] = 1.0;
  return family_from_basis(basis);
}

ProjectiveFamily screen_family(double theta, double k, double d) {
  // Click vector (e^{-i phi/2}|U> + e^{+i phi/2}|L>)/sqrt(2): its Born
  // amplitude <click|psi> reproduces the screen kernel phases.
  const double half = 0.5 * k * d * std::sin(theta);
  const Complex eu = std::exp(Complex{0.0, -half});
  const Complex el = std::exp(Complex{0.0, +half});
  const double t = 1.0 / std::sqrt(2.0);
  std::vector<Projector> ps;
  ps.push_back(rank1_projector({t * eu, t * el}, {2}));
  ps.push_back(rank1_projector({t * eu, -t * el}, {2}));
  return ProjectiveFamily{std::move(ps)};
}

JointDistribution idler_marginals(const StateVector& state) {
  return joint_distribution(state, {{kIdlerSlot, detector_family()}});
}

FringePattern conditional_pattern(const StateVector& state, Detector det,
                                  const Config& config) {
  const std::size_t j = static_cast<std::size_t>(det);
  const MeasurementEvent click{kIdlerSlot, detector_family(), j};
  if (born_probability(state, click) <= kTol)
    throw std::invalid_argument("conditional_pattern: zero-probability detector");
  const StateVector collapsed = collapse(state, click);
  const auto [cu, cl] = detector_column(collapsed, det);

  std::vector<double> raw(config.theta_grid.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double half = 0.5 * phase_at(config.theta_grid[i], config);
    raw[i] = std::norm(cu * std::exp(Complex{0.0, half}) +
                       cl * std::exp(Complex{0.0, -half}));
  }
  return make_fringe_pattern(config.theta_grid, std::move(raw));
}

double ScreenTable::row_sum(std::size_t i) const {
  const auto& r = joint[i];
  return r[0] + r[1] + r[2] + r[3];
}

ScreenTable joint_screen_distribution(const StateVector& state, const Config& config,
                                      ScheduleOrder order) {
  validate_theta_grid(config.theta_grid);
  const ProjectiveFamily idler_fam = detector_family();

  ScreenTable table;
  table.theta = config.theta_grid;
  table.joint.resize(config.theta_grid.size());

  double total = 0.0;
  for (std::size_t i = 0; i < config.theta_grid.size(); ++i) {
    const ProjectiveFamily sig_fam =
        screen_family(config.theta_grid[i], config.k, config.d);
    for (std::size_t j = 0; j < 4; ++j) {
      const MeasurementEvent signal{kSignalSlot, sig_fam, 0};
      const MeasurementEvent idler{kIdlerSlot, idler_fam, j};
      Schedule sched;
      if (order == ScheduleOrder::signal_first)
        sched.events = {signal, idler};
      else
        sched.events = {idler, signal};
      const double p = joint_probability(state, sched);
      table.joint[i][j] = p;
      total += p;
    }
  }

  // One global factor: grid mean of the detector-summed rows becomes 1.
  const double mean = total / static_cast<double>(config.theta_grid.size());
  if (mean <= 0.0)
    throw std::runtime_error("joint_screen_distribution: vanishing table");
  for (auto& row : table.joint)
    for (double& v : row) v /= mean;
  return table;
}

ScheduleEquivalenceReport schedule_equivalence(const StateVector& state,
                                               const Config& config) {
  ScheduleEquivalenceReport rep;
  rep.signal_first = joint_screen_distribution(state, config, ScheduleOrder::signal_first);
  rep.idler_first = joint_screen_distribution(state, config, ScheduleOrder::idler_first);
  rep.max_abs_diff = 0.0;
  for (std::size_t i = 0; i < rep.signal_first.joint.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j)
      rep.max_abs_diff = std::max(
          rep.max_abs_diff,
          std::abs(rep.signal_first.joint[i][j] - rep.idler_first.joint[i][j]));
  return rep;
}

}  // namespace qcond::eraser
