#include "qcond/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace qcond {

namespace {

constexpr double kZeroEntry = 1e-15;  // distribution entries below this are stored as 0

void validate_event(const std::vector<std::size_t>& dims, const MeasurementEvent& ev) {
  if (ev.slot >= dims.size())
    throw std::invalid_argument("measurement event: slot out of range");
  if (ev.family.projectors.empty())
    throw std::invalid_argument("measurement event: empty family");
  if (ev.family.projectors.front().side() != dims[ev.slot])
    throw std::invalid_argument("measurement event: family does not match subsystem dimension");
  if (ev.outcome >= ev.family.size())
    throw std::invalid_argument("measurement event: outcome out of range");
}

}  // namespace

double JointDistribution::total() const {
  double t = 0.0;
  for (const auto& [outcome, p] : entries) t += p;
  return t;
}

double JointDistribution::at(const std::vector<std::size_t>& outcome) const {
  auto it = entries.find(outcome);
  if (it == entries.end())
    throw std::out_of_range("joint distribution: no such outcome tuple");
  return it->second;
}

Projector lifted_event_projector(const std::vector<std::size_t>& dims,
                                 const MeasurementEvent& ev) {
  validate_event(dims, ev);
  return lift(ev.family.projectors[ev.outcome], dims, ev.slot);
}

double born_probability(const StateVector& s, const LinearOperator& lifted) {
  const StateVector ps = apply(lifted, s);
  const Complex val = inner_product(s.amps, ps.amps);
  if (std::abs(val.imag()) >= kTol)
    throw std::runtime_error("born_probability: expectation has imaginary part");
  return val.real();
}

double born_probability(const StateVector& s, const MeasurementEvent& ev) {
  return born_probability(s, lifted_event_projector(s.dims, ev));
}

StateVector collapse(const StateVector& s, const LinearOperator& lifted) {
  StateVector ps = apply(lifted, s);
  const double n2 = ps.norm_squared();
  if (n2 <= kTol)
    throw std::invalid_argument("collapse: impossible outcome (probability ~ 0)");
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : ps.amps) z *= inv;
  return ps;
}

StateVector collapse(const StateVector& s, const MeasurementEvent& ev) {
  return collapse(s, lifted_event_projector(s.dims, ev));
}

double conditional_probability(const StateVector& s, const MeasurementEvent& target,
                               const MeasurementEvent& given) {
  validate_event(s.dims, target);
  const Projector pg = lifted_event_projector(s.dims, given);
  if (born_probability(s, pg) <= kTol)
    throw std::invalid_argument("conditional_probability: conditioning on impossible event");
  return born_probability(collapse(s, pg), target);
}

double joint_probability(const StateVector& s, const Schedule& schedule) {
  StateVector cur = s;
  for (const MeasurementEvent& ev : schedule.events)
    cur = apply(lifted_event_projector(s.dims, ev), cur);
  return cur.norm_squared();
}

Complex ordered_expectation(const StateVector& s, const Schedule& schedule) {
  // Earliest event leftmost in the product, so it is applied last.
  StateVector cur = s;
  for (auto it = schedule.events.rbegin(); it != schedule.events.rend(); ++it)
    cur = apply(lifted_event_projector(s.dims, *it), cur);
  return inner_product(s.amps, cur.amps);
}

JointDistribution joint_distribution(const StateVector& s,
                                     const std::vector<FamilySlot>& measurements) {
  JointDistribution dist;
  std::vector<std::size_t> sizes;
  sizes.reserve(measurements.size());
  for (const auto& m : measurements) {
    MeasurementEvent probe{m.slot, m.family, 0};
    validate_event(s.dims, probe);
    sizes.push_back(m.family.size());
  }
  const std::size_t count = product_dim(sizes);
  for (std::size_t flat = 0; flat < count; ++flat) {
    const std::vector<std::size_t> outcome = multi_index(sizes, flat);
    Schedule sched;
    for (std::size_t k = 0; k < measurements.size(); ++k)
      sched.events.push_back({measurements[k].slot, measurements[k].family, outcome[k]});
    double p = joint_probability(s, sched);
    if (p < kZeroEntry) p = 0.0;
    dist.entries[outcome] = p;
  }
  return dist;
}

BayesReport bayes_symmetry_check(const StateVector& s, const MeasurementEvent& a,
                                 const MeasurementEvent& b) {
  validate_event(s.dims, a);
  validate_event(s.dims, b);
  if (a.slot == b.slot)
    throw std::invalid_argument("bayes_symmetry_check: events must be on different slots");

  const Projector pa = lifted_event_projector(s.dims, a);
  const Projector pb = lifted_event_projector(s.dims, b);
  const double prob_a = born_probability(s, pa);
  const double prob_b = born_probability(s, pb);

  // 0 * (undefined conditional) is 0 by convention.
  const double forward =
      prob_b <= kTol ? 0.0 : born_probability(collapse(s, pb), pa) * prob_b;
  const double reverse =
      prob_a <= kTol ? 0.0 : born_probability(collapse(s, pa), pb) * prob_a;

  // Cross-slot projectors commute, so the product is itself a projector and
  // the expectation is real: this is the |alpha_IJ|^2 of the eigenbasis case.
  const double joint = born_probability(s, compose(pa, pb));

  const double d1 = std::abs(forward - reverse);
  const double d2 = std::abs(forward - joint);
  const double d3 = std::abs(reverse - joint);
  return BayesReport{forward, reverse, joint, std::max({d1, d2, d3})};
}

}  // namespace qcond
