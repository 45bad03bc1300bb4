#pragma once

#include <vector>

namespace qcond {

/// Screen intensity over a grid of angles, normalized so the grid mean is 1.
/// visibility = (max - min) / (max + min); 1 for full interference, 0 flat.
struct FringePattern {
  std::vector<double> theta;
  std::vector<double> intensity;
  double visibility = 0.0;
};

/// Normalizes a raw nonnegative intensity profile to grid-mean 1 and
/// computes its visibility.
FringePattern make_fringe_pattern(std::vector<double> theta,
                                  std::vector<double> raw_intensity);

/// Throws unless the grid is nonempty, strictly increasing and contained in
/// (-pi/2, pi/2).
void validate_theta_grid(const std::vector<double>& theta_grid);

}  // namespace qcond
