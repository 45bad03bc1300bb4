#pragma once

#include <array>
#include <vector>

#include "qcond/fringe.hpp"
#include "qcond/measure.hpp"

namespace qcond::eraser {

/// paper: beamsplitters with real equal prefactors and no reflection
/// phases; the idler branch vectors are then non-orthogonal and a damped
/// fringe leaks into the signal marginal. unitary: symmetric beamsplitter
/// with a quarter-wave phase on reflection; branch vectors are orthogonal
/// and no-signaling is exact.
enum class Mode { paper, unitary };

/// Idler detectors as labeled in the experiment: D3/D4 reveal which-path
/// information, D1/D2 erase it.
enum class Detector : std::size_t { D1 = 0, D2 = 1, D3 = 2, D4 = 3 };

inline constexpr std::array<Detector, 4> kDetectors{Detector::D1, Detector::D2,
                                                    Detector::D3, Detector::D4};

struct Config {
  double k = 1.0;                  // wavenumber, rad / length
  double d = 6.283185307179586;    // slit separation, length
  std::vector<double> theta_grid;  // screen angles, strictly increasing
  Mode mode = Mode::unitary;
};

/// Validates k > 0, d > 0 and the grid.
Config make_config(double k, double d, std::vector<double> theta_grid, Mode mode);

/// Angle grid with uniformly spaced sin(theta); exact dark-fringe angles
/// land on grid points when k*d and the sin spacing are commensurate.
std::vector<double> sin_spaced_grid(double sin_min, double sin_max, std::size_t bins);

/// The two-photon state over dims [2 (signal path U/L), 4 (idler detector)]:
/// slit superposition, pair production, then the beamsplitter cascade.
StateVector build_state(Mode mode);

/// Detector basis on the idler subsystem (computational, dim 4).
ProjectiveFamily detector_family();

/// Binary family {screen click at theta, its complement} on the signal
/// subsystem; the click vector carries the two-path phases exp(+-i k d sin(theta)/2).
ProjectiveFamily screen_family(double theta, double k, double d);

/// Born probabilities of D1..D4; sums to 1.
JointDistribution idler_marginals(const StateVector& state);

/// Collapses the idler onto one detector and evaluates the signal screen
/// kernel |c_U e^{i k d sin(theta)/2} + c_L e^{-i k d sin(theta)/2}|^2 over the grid.
FringePattern conditional_pattern(const StateVector& state, Detector det,
                                  const Config& config);

/// Joint density over (theta bin, detector). A single global factor
/// normalizes the grid mean of the detector-summed rows to 1, so row sums
/// are the signal marginal pattern and each column stays proportional to
/// idler marginal x conditional pattern.
struct ScreenTable {
  std::vector<double> theta;
  std::vector<std::array<double, 4>> joint;  // joint[i][j]: theta_grid[i], D(j+1)

  double row_sum(std::size_t i) const;
};

enum class ScheduleOrder { signal_first, idler_first };

/// Every entry is a two-event joint probability evaluated through the
/// measurement calculus in the requested order.
ScreenTable joint_screen_distribution(const StateVector& state, const Config& config,
                                      ScheduleOrder order = ScheduleOrder::signal_first);

struct ScheduleEquivalenceReport {
  ScreenTable signal_first;
  ScreenTable idler_first;
  double max_abs_diff = 0.0;
};

/// Runs the joint table with both schedule orders and reports the largest
/// entrywise difference (the delayed-choice invariance, instantiated).
ScheduleEquivalenceReport schedule_equivalence(const StateVector& state,
                                               const Config& config);

}  // namespace qcond::eraser
