#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "qcond/table.hpp"

namespace qcond::cli {

// Exit codes: 0 success, 2 config error, 3 invariant violation, 4 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitViolation = 3;
inline constexpr int kExitIo = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment { epr, eraser, wheeler, orderprop, everett };

Experiment experiment_from_name(const std::string& name);
std::string experiment_name(Experiment e);

struct EraserParams {
  std::string mode = "unitary";  // "paper" | "unitary"
  double k = 1.0;
  double d = 6.283185307179586;  // 2*pi: one full fringe cycle across sin(theta)
  double sin_theta_min = -0.9;
  double sin_theta_max = 0.9;
  std::size_t theta_bins = 181;
};

struct WheelerParams {
  double k = 6.283185307179586;
  double d = 10.0;                  // slits at (0, +-d/2)
  double screen_distance = 1.0e5;   // 1e4 * d
  double theta_min = -0.35;
  double theta_max = 0.35;
  std::size_t theta_bins = 701;     // 1e-3 rad steps
  std::optional<double> telescope_aim_x;  // default: (screen_distance, 0)
  std::optional<double> telescope_aim_y;
  std::optional<double> acceptance_halfwidth;  // default: quarter of the
                                               // slit angular separation
  bool screen_in = true;
};

struct OrderpropParams {
  std::size_t trials = 1000;
  std::size_t max_dim = 4;
  std::size_t max_len = 3;
};

struct EverettParams {
  std::size_t stability_trials = 100;
};

struct RunConfig {
  Experiment experiment = Experiment::epr;
  std::uint64_t seed = 0;
  std::string out;  // empty: stdout
  Format format = Format::csv;
  EraserParams eraser;
  WheelerParams wheeler;
  OrderpropParams orderprop;
  EverettParams everett;
};

/// Strict parse of a JSON config: unknown keys, bad types, bad enum values
/// and module-invariant violations all raise ConfigError with the offending
/// key in the message.
RunConfig parse_config(const std::string& text);

/// Re-checks every module invariant the config touches (used after flag
/// overrides; parse_config already calls it).
void validate(const RunConfig& config);

struct RunResult {
  int exit_code = kExitOk;
  std::string output;
};

/// Computes the experiment and serializes its primary table plus metadata;
/// no I/O. exit_code is kExitViolation when a verified invariant fails
/// (e.g. an interleaving spread above tolerance).
RunResult render(const RunConfig& config);

/// render() plus writing to config.out (stdout when empty).
int run(const RunConfig& config);

}  // namespace qcond::cli
