#include "qcond/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcond {

FringePattern make_fringe_pattern(std::vector<double> theta,
                                  std::vector<double> raw_intensity) {
  if (theta.size() != raw_intensity.size())
    throw std::invalid_argument("fringe pattern: grid/intensity length mismatch");
  if (theta.empty()) throw std::invalid_argument("fringe pattern: empty grid");

  double sum = 0.0;
  for (double v : raw_intensity) {
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("fringe pattern: intensity must be finite and >= 0");
    sum += v;
  }
  const double mean = sum / static_cast<double>(raw_intensity.size());
  if (mean <= 0.0)
    throw std::invalid_argument("fringe pattern: intensity vanishes on the whole grid");
  for (double& v : raw_intensity) v /= mean;

  const auto [lo, hi] = std::minmax_element(raw_intensity.begin(), raw_intensity.end());
  const double denom = *hi + *lo;
  FringePattern pat{std::move(theta), std::move(raw_intensity), 0.0};
  pat.visibility = denom > 0.0 ? (*hi - *lo) / denom : 0.0;
  return pat;
}

void validate_theta_grid(const std::vector<double>& theta_grid) {
  if (theta_grid.empty())
    throw std::invalid_argument("theta_grid nonempty and strictly increasing: grid is empty");
  const double half_pi = 1.5707963267948966;
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    if (std::abs(theta_grid[i]) >= half_pi)
      throw std::invalid_argument("theta_grid: |theta| must be < pi/2");
    if (i > 0 && theta_grid[i] <= theta_grid[i - 1])
      throw std::invalid_argument("theta_grid nonempty and strictly increasing: not increasing");
  }
}

}  // namespace qcond
