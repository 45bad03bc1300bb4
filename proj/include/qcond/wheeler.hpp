#pragma once

#include <variant>
#include <vector>

#include "qcond/core.hpp"
#include "qcond/fringe.hpp"

namespace qcond::wheeler {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

/// Two-slit geometry in the plane containing slits and screen. The screen
/// lies at screen_distance from the slit midpoint along the symmetry axis;
/// theta is the angle of a screen position off that axis, positive toward r1.
struct Config {
  double k = 0.0;                  // wavenumber, rad / length
  Vec2 r1, r2;                     // slit positions
  double screen_distance = 0.0;
  std::vector<double> theta_grid;
  Vec2 telescope_aim;              // where the telescopes sit
  double acceptance_halfwidth = 0.0;  // momentum-window half angle, rad
};

/// Validates k > 0, distinct slits, screen_distance > slit separation, the
/// grid, and that the two slit directions seen from telescope_aim fall into
/// disjoint acceptance windows.
Config make_config(double k, Vec2 r1, Vec2 r2, double screen_distance,
                   std::vector<double> theta_grid, Vec2 telescope_aim,
                   double acceptance_halfwidth);

double slit_separation(const Config& config);

/// Screen position at angle theta (distance screen_distance from the slit
/// midpoint).
Vec2 screen_point(double theta, const Config& config);

/// Exact two-spherical-wave amplitude
/// (1/|r-r1|) e^{ik|r-r1|} + (1/|r-r2|) e^{ik|r-r2|}.
/// Throws "singular point" at a slit.
Complex psi_exact(Vec2 r, const Config& config);

/// Far-field path difference d sin(theta).
double path_difference(double theta, double d);

/// Far-field fringe law |1 + e^{i k d sin(theta)}|^2 = 2(1 + cos(k d sin(theta))),
/// raw (un-normalized) value at one angle.
double far_field_intensity(double theta, const Config& config);

/// far_field_intensity over the grid, normalized to grid-mean 1.
FringePattern far_field_pattern(const Config& config);

/// |psi_exact|^2 |r - r1|^2 over the grid: the exact pattern with the
/// leading spherical falloff removed, comparable to the far-field law.
std::vector<double> exact_screen_intensity(const Config& config);

struct TelescopeProbabilities {
  double p1 = 0.0;  // telescope aimed at slit 1
  double p2 = 0.0;
};

/// Inverse-square weights 1/|r_T - r_i|^2, normalized to p1 + p2 = 1.
TelescopeProbabilities telescope_probabilities(const Config& config);

using DelayedChoiceResult = std::variant<FringePattern, TelescopeProbabilities>;

/// screen_in -> the interference pattern; screen out -> telescope clicks.
/// Both derive from the same amplitudes; nothing is mutated in between.
DelayedChoiceResult delayed_choice(const Config& config, bool screen_in);

}  // namespace qcond::wheeler
