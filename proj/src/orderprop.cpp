#include "qcond/orderprop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcond::orderprop {

std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  std::uint64_t z = campaign_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

StateVector random_state(std::vector<std::size_t> dims, Rng& rng) {
  if (dims.empty()) throw std::invalid_argument("random_state: dims must be nonempty");
  const std::size_t n = product_dim(dims);
  std::vector<Complex> raw(n);
  double n2 = 0.0;
  do {
    for (Complex& z : raw) z = Complex{rng.normal(), rng.normal()};
    n2 = norm_squared(raw);
  } while (n2 <= kTol);  // astronomically unlikely, but keeps make_state happy
  return make_state(std::move(dims), std::move(raw));
}

StateVector random_state(std::vector<std::size_t> dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(std::move(dims), rng);
}

namespace {

// Orthonormal columns via modified Gram-Schmidt with one re-orthogonalization
// pass; machine-precision orthogonality for the dimensions used here.
std::vector<std::vector<Complex>> orthonormal_columns(std::size_t dim, Rng& rng) {
  std::vector<std::vector<Complex>> cols;
  cols.reserve(dim);
  while (cols.size() < dim) {
    std::vector<Complex> v(dim);
    for (Complex& z : v) z = Complex{rng.normal(), rng.normal()};
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) {
        const Complex g = inner_product(q, v);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= g * q[i];
      }
    const double r = std::sqrt(norm_squared(v));
    if (r < 1e-8) continue;  // degenerate draw, try a fresh vector
    for (Complex& z : v) z /= r;
    cols.push_back(std::move(v));
  }
  return cols;
}

}  // namespace

ProjectiveFamily random_family(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_family: dim must be >= 1");
  if (dim == 1) {
    return ProjectiveFamily{{make_projector(identity_operator({1}))}};
  }
  std::vector<Projector> ps;
  ps.reserve(dim);
  for (const auto& v : orthonormal_columns(dim, rng)) ps.push_back(rank1_projector(v, {dim}));
  return make_family(std::move(ps));
}

ProjectiveFamily random_family(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_family(dim, rng);
}

LinearOperator random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dim must be >= 1");
  const auto cols = orthonormal_columns(dim, rng);
  LinearOperator u = zero_operator({dim});
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) u.at(r, c) = cols[c][r];
  return u;
}

LinearOperator random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

InterleavingReport check_interleavings(const StateVector& s,
                                       const std::vector<MeasurementEvent>& seq_a,
                                       const std::vector<MeasurementEvent>& seq_b,
                                       std::uint64_t seed) {
  const std::size_t n = seq_a.size();
  const std::size_t m = seq_b.size();
  if (n + m > 12)
    throw std::invalid_argument("check_interleavings: state space too large (n+m > 12)");
  for (const auto& ev : seq_a)
    if (ev.slot != seq_a.front().slot)
      throw std::invalid_argument("check_interleavings: seq_a spans multiple slots");
  for (const auto& ev : seq_b)
    if (ev.slot != seq_b.front().slot)
      throw std::invalid_argument("check_interleavings: seq_b spans multiple slots");

  // Lexicographic enumeration of merge patterns: 0 draws from seq_a, 1 from
  // seq_b; next_permutation over the sorted multiset yields all C(n+m,n).
  std::vector<int> pattern(n + m, 0);
  std::fill(pattern.begin() + static_cast<std::ptrdiff_t>(n), pattern.end(), 1);
  std::sort(pattern.begin(), pattern.end());

  InterleavingReport report;
  report.seed = seed;
  do {
    Schedule sched;
    std::size_t ia = 0, ib = 0;
    for (int pick : pattern)
      sched.events.push_back(pick == 0 ? seq_a[ia++] : seq_b[ib++]);
    report.probabilities.push_back(joint_probability(s, sched));
  } while (std::next_permutation(pattern.begin(), pattern.end()));

  report.num_interleavings = report.probabilities.size();
  const auto [lo, hi] =
      std::minmax_element(report.probabilities.begin(), report.probabilities.end());
  report.max_spread = *hi - *lo;
  return report;
}

FuzzSummary fuzz_campaign(std::size_t trials, std::size_t max_dim,
                          std::size_t max_len, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("fuzz_campaign: trials must be >= 1");
  if (max_dim < 2) throw std::invalid_argument("fuzz_campaign: max_dim must be >= 2");
  if (max_len < 1) throw std::invalid_argument("fuzz_campaign: max_len must be >= 1");

  FuzzSummary summary;
  summary.seed = seed;
  summary.trials = trials;
  summary.generator = kGeneratorName;
  summary.records.reserve(trials);

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    Rng rng(trial_seed);

    TrialRecord rec;
    rec.seed = trial_seed;
    rec.dim_a = rng.uniform_int(2, max_dim);
    rec.dim_b = rng.uniform_int(2, max_dim);
    rec.len_a = rng.uniform_int(1, max_len);
    rec.len_b = rng.uniform_int(1, max_len);

    const StateVector s = random_state({rec.dim_a, rec.dim_b}, rng);
    std::vector<MeasurementEvent> seq_a, seq_b;
    for (std::size_t i = 0; i < rec.len_a; ++i) {
      ProjectiveFamily fam = random_family(rec.dim_a, rng);
      const std::size_t outcome = rng.uniform_int(0, fam.size() - 1);
      seq_a.push_back({0, std::move(fam), outcome});
    }
    for (std::size_t i = 0; i < rec.len_b; ++i) {
      ProjectiveFamily fam = random_family(rec.dim_b, rng);
      const std::size_t outcome = rng.uniform_int(0, fam.size() - 1);
      seq_b.push_back({1, std::move(fam), outcome});
    }

    const InterleavingReport rep = check_interleavings(s, seq_a, seq_b, trial_seed);
    rec.num_interleavings = rep.num_interleavings;
    rec.max_spread = rep.max_spread;
    if (rec.max_spread > summary.worst_spread) {
      summary.worst_spread = rec.max_spread;
      summary.worst_trial = t;
    }
    summary.records.push_back(rec);
  }
  return summary;
}

}  // namespace qcond::orderprop
