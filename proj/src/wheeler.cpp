#include "qcond/wheeler.hpp"

#include <cmath>
#include <stdexcept>

namespace qcond::wheeler {

namespace {

Vec2 midpoint(const Config& c) {
  return Vec2{0.5 * (c.r1.x + c.r2.x), 0.5 * (c.r1.y + c.r2.y)};
}

// Unit vector from r2 toward r1 (transverse direction, positive theta side).
Vec2 transverse_unit(const Config& c) {
  const double d = distance(c.r1, c.r2);
  return Vec2{(c.r1.x - c.r2.x) / d, (c.r1.y - c.r2.y) / d};
}

// Symmetry-axis unit vector; the screen sits on this side.
Vec2 axis_unit(const Config& c) {
  const Vec2 u = transverse_unit(c);
  return Vec2{u.y, -u.x};
}

double angle_between(Vec2 a, Vec2 b) {
  const double na = std::hypot(a.x, a.y);
  const double nb = std::hypot(b.x, b.y);
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("wheeler config: invalid aim geometry (aim on a slit)");
  double c = (a.x * b.x + a.y * b.y) / (na * nb);
  c = std::max(-1.0, std::min(1.0, c));
  return std::acos(c);
}

}  // namespace

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Config make_config(double k, Vec2 r1, Vec2 r2, double screen_distance,
                   std::vector<double> theta_grid, Vec2 telescope_aim,
                   double acceptance_halfwidth) {
  if (!(k > 0.0)) throw std::invalid_argument("wheeler config: k must be > 0");
  const double d = distance(r1, r2);
  if (!(d > 0.0)) throw std::invalid_argument("wheeler config: slits must be distinct");
  if (!(screen_distance > d))
    throw std::invalid_argument("wheeler config: screen_distance must exceed slit separation");
  validate_theta_grid(theta_grid);
  if (!(acceptance_halfwidth > 0.0))
    throw std::invalid_argument("wheeler config: acceptance_halfwidth must be > 0");

  const Vec2 dir1{r1.x - telescope_aim.x, r1.y - telescope_aim.y};
  const Vec2 dir2{r2.x - telescope_aim.x, r2.y - telescope_aim.y};
  const double sep = angle_between(dir1, dir2);
  if (sep <= 2.0 * acceptance_halfwidth)
    throw std::invalid_argument(
        "wheeler config: invalid aim geometry (slit directions overlap one "
        "acceptance window)");

  return Config{k, r1, r2, screen_distance, std::move(theta_grid), telescope_aim,
                acceptance_halfwidth};
}

double slit_separation(const Config& config) { return distance(config.r1, config.r2); }

Vec2 screen_point(double theta, const Config& config) {
  const Vec2 m = midpoint(config);
  const Vec2 a = axis_unit(config);
  const Vec2 u = transverse_unit(config);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double L = config.screen_distance;
  return Vec2{m.x + L * (a.x * ct + u.x * st), m.y + L * (a.y * ct + u.y * st)};
}

Complex psi_exact(Vec2 r, const Config& config) {
  const double d1 = distance(r, config.r1);
  const double d2 = distance(r, config.r2);
  if (d1 < 1e-12 || d2 < 1e-12)
    throw std::invalid_argument("psi_exact: singular point (evaluation at a slit)");
  return (1.0 / d1) * std::exp(Complex{0.0, config.k * d1}) +
         (1.0 / d2) * std::exp(Complex{0.0, config.k * d2});
}

double path_difference(double theta, double d) { return d * std::sin(theta); }

double far_field_intensity(double theta, const Config& config) {
  const double phi = config.k * path_difference(theta, slit_separation(config));
  return 2.0 * (1.0 + std::cos(phi));
}

FringePattern far_field_pattern(const Config& config) {
  validate_theta_grid(config.theta_grid);
  std::vector<double> raw(config.theta_grid.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    raw[i] = far_field_intensity(config.theta_grid[i], config);
  return make_fringe_pattern(config.theta_grid, std::move(raw));
}

std::vector<double> exact_screen_intensity(const Config& config) {
  validate_theta_grid(config.theta_grid);
  std::vector<double> out(config.theta_grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec2 r = screen_point(config.theta_grid[i], config);
    const double d1 = distance(r, config.r1);
    out[i] = std::norm(psi_exact(r, config)) * d1 * d1;
  }
  return out;
}

TelescopeProbabilities telescope_probabilities(const Config& config) {
  const double d1 = distance(config.telescope_aim, config.r1);
  const double d2 = distance(config.telescope_aim, config.r2);
  if (d1 < 1e-12 || d2 < 1e-12)
    throw std::invalid_argument("telescope_probabilities: invalid aim geometry");
  const double w1 = 1.0 / (d1 * d1);
  const double w2 = 1.0 / (d2 * d2);
  return TelescopeProbabilities{w1 / (w1 + w2), w2 / (w1 + w2)};
}

DelayedChoiceResult delayed_choice(const Config& config, bool screen_in) {
  if (screen_in) return far_field_pattern(config);
  return telescope_probabilities(config);
}

}  // namespace qcond::wheeler
