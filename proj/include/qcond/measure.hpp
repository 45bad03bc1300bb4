#pragma once

#include <map>
#include <vector>

#include "qcond/core.hpp"

namespace qcond {

/// One projective measurement: which subsystem, which observable family,
/// which outcome of that family.
struct MeasurementEvent {
  std::size_t slot;
  ProjectiveFamily family;
  std::size_t outcome;
};

/// Measurement events in global time order, earliest first.
struct Schedule {
  std::vector<MeasurementEvent> events;
};

/// Map from outcome tuples (one index per measured family, in measurement
/// order) to probabilities. Entries below 1e-15 are stored as exact zeros.
struct JointDistribution {
  std::map<std::vector<std::size_t>, double> entries;

  double total() const;
  double at(const std::vector<std::size_t>& outcome) const;
};

/// A family attached to a subsystem, for building full distributions.
struct FamilySlot {
  std::size_t slot;
  ProjectiveFamily family;
};

/// P(A|B)P(B) vs P(B|A)P(A) vs the direct joint expectation; all three
/// agree for cross-slot events. Zero-probability conditioning is reported
/// as consistent by convention (both products vanish).
struct BayesReport {
  double forward;         // P(a|b) * P(b)
  double reverse;         // P(b|a) * P(a)
  double joint;           // <s| P_a P_b |s>
  double max_difference;  // max pairwise absolute difference
};

/// Born rule <s|P|s> for an operator already lifted to the joint space.
/// The imaginary part must vanish within kTol.
double born_probability(const StateVector& s, const LinearOperator& lifted);
double born_probability(const StateVector& s, const MeasurementEvent& ev);

/// P|s> renormalized. Throws "impossible outcome" when the outcome
/// probability is below kTol.
StateVector collapse(const StateVector& s, const LinearOperator& lifted);
StateVector collapse(const StateVector& s, const MeasurementEvent& ev);

/// Probability of `target` after conditioning on `given`.
double conditional_probability(const StateVector& s, const MeasurementEvent& target,
                               const MeasurementEvent& given);

/// Probability of obtaining every outcome in the schedule, earliest event
/// applied first: the squared norm of the ordered projector chain
/// ||P_n ... P_1 |s>||^2. Equals the product of stepwise conditional
/// probabilities.
double joint_probability(const StateVector& s, const Schedule& schedule);

/// The literal single-product expectation <s|P_1 P_2 ... P_n|s> with the
/// earliest event leftmost. Exposed for comparison with joint_probability;
/// not Hermitian for noncommuting same-slot sequences, so it can acquire an
/// imaginary part and is not used by any invariant.
Complex ordered_expectation(const StateVector& s, const Schedule& schedule);

/// Full distribution over outcome tuples of the listed families, measured
/// in list order. Entries sum to 1 for complete families.
JointDistribution joint_distribution(const StateVector& s,
                                     const std::vector<FamilySlot>& measurements);

/// Checks P(a|b)P(b) = P(b|a)P(a) = <s|P_a P_b|s> for events on different
/// slots.
BayesReport bayes_symmetry_check(const StateVector& s, const MeasurementEvent& a,
                                 const MeasurementEvent& b);

/// Lifts the event's outcome projector to the state's joint space.
Projector lifted_event_projector(const std::vector<std::size_t>& dims,
                                 const MeasurementEvent& ev);

}  // namespace qcond
