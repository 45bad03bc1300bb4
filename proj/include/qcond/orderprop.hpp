#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcond/measure.hpp"

namespace qcond::orderprop {

/// Generator identity recorded in every report so summaries are portable.
/// mt19937_64 is fully specified by the standard; normals come from a
/// hand-rolled Box-Muller transform because std::normal_distribution is
/// not bit-stable across library implementations.
inline constexpr const char* kGeneratorName = "mt19937_64/box-muller";

/// Deterministic seeded source of uniforms, normals and small integers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1), 53 usable bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller on (0,1] x [0,1) uniforms.
  double normal() {
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform integer in [lo, hi], both inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    std::uint64_t k = static_cast<std::uint64_t>(uniform01() * static_cast<double>(span));
    if (k >= span) k = span - 1;
    return lo + k;
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 output stream: per-trial seeds derived from the campaign seed,
/// independent of execution order.
std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index);

/// Normalized state with iid standard-normal real/imaginary amplitude parts.
StateVector random_state(std::vector<std::size_t> dims, std::uint64_t seed);
StateVector random_state(std::vector<std::size_t> dims, Rng& rng);

/// Rank-1 complete family from an orthonormalized random complex matrix.
ProjectiveFamily random_family(std::size_t dim, std::uint64_t seed);
ProjectiveFamily random_family(std::size_t dim, Rng& rng);

/// Unitary with the same construction (orthonormal random columns).
LinearOperator random_unitary(std::size_t dim, std::uint64_t seed);
LinearOperator random_unitary(std::size_t dim, Rng& rng);

struct InterleavingReport {
  std::size_t num_interleavings = 0;  // C(n+m, n)
  std::vector<double> probabilities;  // one per interleaving, lexicographic
  double max_spread = 0.0;            // max - min over probabilities
  std::uint64_t seed = 0;             // provenance tag copied into the report
};

/// Enumerates every interleaving of the two event sequences that preserves
/// both internal orders and evaluates the joint probability of each. The
/// order-invariance theorem applies when the sequences sit on distinct
/// slots; same-slot sequences are allowed as a control and generally show a
/// nonzero spread. Throws when n+m > 12.
InterleavingReport check_interleavings(const StateVector& s,
                                       const std::vector<MeasurementEvent>& seq_a,
                                       const std::vector<MeasurementEvent>& seq_b,
                                       std::uint64_t seed = 0);

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t dim_a = 0, dim_b = 0;
  std::size_t len_a = 0, len_b = 0;
  std::size_t num_interleavings = 0;
  double max_spread = 0.0;
};

struct FuzzSummary {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double worst_spread = 0.0;
  std::size_t worst_trial = 0;
  std::string generator;
  std::vector<TrialRecord> records;
};

/// Seeded bulk verification: random bipartite states, random per-slot
/// observable sequences, exhaustive interleaving enumeration per trial.
FuzzSummary fuzz_campaign(std::size_t trials, std::size_t max_dim,
                          std::size_t max_len, std::uint64_t seed);

}  // namespace qcond::orderprop
