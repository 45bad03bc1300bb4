#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcond/core.hpp"

namespace qcond::everett {

/// A pointer subsystem adjoined by a premeasurement: which slot it occupies,
/// whose device it is, and the outcome name shown per pointer basis state.
struct PointerSlot {
  std::size_t slot = 0;
  std::string observer;
  std::vector<std::string> outcome_names;
};

/// (observer, outcome) pairs, canonically sorted by observer id; ids are
/// unique within a label.
struct PointerLabel {
  std::vector<std::pair<std::string, std::string>> entries;

  std::string str() const;  // "Alice:up|Bob:down"
  bool operator==(const PointerLabel&) const = default;
  bool operator<(const PointerLabel& o) const { return entries < o.entries; }
};

/// One pointer-basis component of the global state: the Everett world.
/// outcomes[i] is the basis index of the i-th pointer slot (in the order the
/// pointer list was given). amplitude is the residual norm carrying the
/// phase of the first significant residual component; weight = |amplitude|^2
/// is the Born probability of the outcome tuple.
struct Branch {
  PointerLabel label;
  std::vector<std::size_t> outcomes;
  Complex amplitude;
  double weight = 0.0;
};

struct Premeasurement {
  StateVector state;    // enlarged by one subsystem, appended last
  PointerSlot pointer;  // where the new pointer lives
};

/// Honest-device premeasurement: adjoins a pointer subsystem of dimension =
/// family size, initialized to a reference state and entangled so outcome i
/// of the family is perfectly correlated with pointer state i. An isometry,
/// linear in s. Empty outcome_names default to "0", "1", ...
Premeasurement premeasure(const StateVector& s, std::size_t slot,
                          const ProjectiveFamily& family, std::string observer,
                          std::vector<std::string> outcome_names = {});

/// One branch per pointer-basis tuple with nonzero weight, sorted
/// lexicographically by label.
std::vector<Branch> branch_decompose(const StateVector& s,
                                     const std::vector<PointerSlot>& pointers);

/// A premeasurement to perform: subsystem slot, observable family, observer.
struct PremeasureEvent {
  std::size_t slot = 0;
  ProjectiveFamily family;
  std::string observer;
  std::vector<std::string> outcome_names;
};

struct OrderIndependenceReport {
  std::vector<Branch> branches_a;
  std::vector<Branch> branches_b;
  bool labels_match = false;
  double max_amplitude_difference = 0.0;  // after global-phase alignment
};

/// Applies the same premeasurements in two different global orders and
/// compares the resulting branch sets (labels, and amplitudes up to one
/// global phase). Per-observer event order must agree between the two.
OrderIndependenceReport order_independence(const StateVector& s,
                                           const std::vector<PremeasureEvent>& order_a,
                                           const std::vector<PremeasureEvent>& order_b);

struct BranchStabilityReport {
  std::vector<PointerLabel> labels;
  std::vector<double> weights_before;
  std::vector<double> weights_after;
  double max_drift = 0.0;
};

/// Applies a unitary on a slot carrying no pointer label and verifies the
/// branch weights are untouched. Throws "would re-measure pointer" if the
/// slot is a pointer slot.
BranchStabilityReport branch_stability(const StateVector& s,
                                       const std::vector<PointerSlot>& pointers,
                                       std::size_t slot,
                                       const LinearOperator& unitary);

}  // namespace qcond::everett
