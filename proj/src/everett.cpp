#include "qcond/everett.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qcond::everett {

namespace {

constexpr double kZeroBranch = 1e-15;

std::vector<std::string> default_names(std::size_t count) {
  std::vector<std::string> names(count);
  for (std::size_t i = 0; i < count; ++i) names[i] = std::to_string(i);
  return names;
}

}  // namespace

std::string PointerLabel::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += '|';
    out += entries[i].first;
    out += ':';
    out += entries[i].second;
  }
  return out;
}

Premeasurement premeasure(const StateVector& s, std::size_t slot,
                          const ProjectiveFamily& family, std::string observer,
                          std::vector<std::string> outcome_names) {
  if (slot >= s.dims.size())
    throw std::invalid_argument("premeasure: slot out of range");
  if (family.projectors.empty() || family.projectors.front().side() != s.dims[slot])
    throw std::invalid_argument("premeasure: family does not match subsystem dimension");
  const std::size_t k = family.size();
  if (outcome_names.empty()) outcome_names = default_names(k);
  if (outcome_names.size() != k)
    throw std::invalid_argument("premeasure: outcome name count mismatch");

  // |psi> (x) |ready>  ->  sum_i (P_i |psi>) (x) |i>, the new subsystem
  // appended last (fastest index). Complete orthogonal P_i make this an
  // isometry, so the result stays normalized.
  std::vector<std::size_t> dims = s.dims;
  dims.push_back(k);
  std::vector<Complex> amps(s.amps.size() * k, Complex{0.0});
  for (std::size_t i = 0; i < k; ++i) {
    const StateVector branch = apply(lift(family.projectors[i], s.dims, slot), s);
    for (std::size_t f = 0; f < branch.amps.size(); ++f)
      amps[f * k + i] = branch.amps[f];
  }

  Premeasurement out;
  out.state = StateVector{std::move(dims), std::move(amps)};
  out.pointer = PointerSlot{s.dims.size(), std::move(observer), std::move(outcome_names)};
  return out;
}

std::vector<Branch> branch_decompose(const StateVector& s,
                                     const std::vector<PointerSlot>& pointers) {
  std::vector<std::size_t> sizes;
  for (const auto& p : pointers) {
    if (p.slot >= s.dims.size())
      throw std::invalid_argument("branch_decompose: pointer slot out of range");
    if (p.outcome_names.size() != s.dims[p.slot])
      throw std::invalid_argument("branch_decompose: outcome names do not match slot dimension");
    sizes.push_back(s.dims[p.slot]);
  }

  // Gather each pointer tuple's residual vector in one pass over the state.
  std::map<std::vector<std::size_t>, std::vector<Complex>> residuals;
  for (std::size_t f = 0; f < s.amps.size(); ++f) {
    const auto idx = multi_index(s.dims, f);
    std::vector<std::size_t> key(pointers.size());
    for (std::size_t p = 0; p < pointers.size(); ++p) key[p] = idx[pointers[p].slot];
    residuals[key].push_back(s.amps[f]);
  }

  std::vector<Branch> branches;
  for (const auto& [key, residual] : residuals) {
    const double w = norm_squared(residual);
    if (w < kZeroBranch) continue;
    Branch b;
    b.outcomes = key;
    b.weight = w;
    // Scalar amplitude: residual norm times the phase of its first
    // significant component (a canonical representative; comparisons
    // allow one global phase on top).
    Complex lead{1.0, 0.0};
    for (const Complex& z : residual)
      if (std::abs(z) > 1e-12) { lead = z / std::abs(z); break; }
    b.amplitude = std::sqrt(w) * lead;
    for (std::size_t p = 0; p < pointers.size(); ++p)
      b.label.entries.emplace_back(pointers[p].observer,
                                   pointers[p].outcome_names[key[p]]);
    std::sort(b.label.entries.begin(), b.label.entries.end());
    for (std::size_t i = 1; i < b.label.entries.size(); ++i)
      if (b.label.entries[i].first == b.label.entries[i - 1].first)
        throw std::invalid_argument("branch_decompose: duplicate observer id in label");
    branches.push_back(std::move(b));
  }
  std::sort(branches.begin(), branches.end(),
            [](const Branch& a, const Branch& b) { return a.label < b.label; });
  return branches;
}

namespace {

struct Chain {
  StateVector state;
  std::vector<PointerSlot> pointers;
};

Chain run_chain(const StateVector& s, const std::vector<PremeasureEvent>& order) {
  Chain c{s, {}};
  for (const auto& ev : order) {
    Premeasurement pm = premeasure(c.state, ev.slot, ev.family, ev.observer,
                                   ev.outcome_names);
    c.state = std::move(pm.state);
    c.pointers.push_back(std::move(pm.pointer));
  }
  return c;
}

void check_same_events(const std::vector<PremeasureEvent>& a,
                       const std::vector<PremeasureEvent>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("order_independence: event counts differ");
  // Same per-observer subsequences: collect (observer -> slot sequence).
  std::map<std::string, std::vector<std::size_t>> seq_a, seq_b;
  for (const auto& ev : a) seq_a[ev.observer].push_back(ev.slot);
  for (const auto& ev : b) seq_b[ev.observer].push_back(ev.slot);
  if (seq_a != seq_b)
    throw std::invalid_argument(
        "order_independence: orders do not contain the same per-observer events");
}

}  // namespace

OrderIndependenceReport order_independence(const StateVector& s,
                                           const std::vector<PremeasureEvent>& order_a,
                                           const std::vector<PremeasureEvent>& order_b) {
  check_same_events(order_a, order_b);
  const Chain ca = run_chain(s, order_a);
  const Chain cb = run_chain(s, order_b);

  OrderIndependenceReport rep;
  rep.branches_a = branch_decompose(ca.state, ca.pointers);
  rep.branches_b = branch_decompose(cb.state, cb.pointers);

  rep.labels_match = rep.branches_a.size() == rep.branches_b.size();
  if (rep.labels_match)
    for (std::size_t i = 0; i < rep.branches_a.size(); ++i)
      if (!(rep.branches_a[i].label == rep.branches_b[i].label)) {
        rep.labels_match = false;
        break;
      }
  if (!rep.labels_match) {
    rep.max_amplitude_difference = 1.0;
    return rep;
  }

  // Align one global phase using the largest-weight branch.
  Complex phase{1.0, 0.0};
  double best = -1.0;
  for (std::size_t i = 0; i < rep.branches_a.size(); ++i)
    if (rep.branches_a[i].weight > best &&
        std::abs(rep.branches_a[i].amplitude) > 1e-12) {
      best = rep.branches_a[i].weight;
      phase = rep.branches_b[i].amplitude / rep.branches_a[i].amplitude;
      phase /= std::abs(phase);
    }
  for (std::size_t i = 0; i < rep.branches_a.size(); ++i)
    rep.max_amplitude_difference =
        std::max(rep.max_amplitude_difference,
                 std::abs(rep.branches_b[i].amplitude -
                          phase * rep.branches_a[i].amplitude));
  return rep;
}

BranchStabilityReport branch_stability(const StateVector& s,
                                       const std::vector<PointerSlot>& pointers,
                                       std::size_t slot,
                                       const LinearOperator& unitary) {
  for (const auto& p : pointers)
    if (p.slot == slot)
      throw std::invalid_argument("branch_stability: would re-measure pointer");
  if (slot >= s.dims.size())
    throw std::invalid_argument("branch_stability: slot out of range");

  const auto before = branch_decompose(s, pointers);
  const StateVector after_state = apply(lift_operator(unitary, s.dims, slot), s);
  const auto after = branch_decompose(after_state, pointers);

  BranchStabilityReport rep;
  std::map<PointerLabel, double> after_weights;
  for (const auto& b : after) after_weights[b.label] = b.weight;
  for (const auto& b : before) {
    rep.labels.push_back(b.label);
    rep.weights_before.push_back(b.weight);
    const auto it = after_weights.find(b.label);
    const double wa = it == after_weights.end() ? 0.0 : it->second;
    rep.weights_after.push_back(wa);
    rep.max_drift = std::max(rep.max_drift, std::abs(wa - b.weight));
  }
  // A weight appearing only after the unitary is also drift.
  for (const auto& b : after) {
    bool known = false;
    for (const auto& lb : rep.labels)
      if (lb == b.label) { known = true; break; }
    if (!known) {
      rep.labels.push_back(b.label);
      rep.weights_before.push_back(0.0);
      rep.weights_after.push_back(b.weight);
      rep.max_drift = std::max(rep.max_drift, b.weight);
    }
  }
  return rep;
}

}  // namespace qcond::everett
