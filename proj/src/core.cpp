#include "qcond/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcond {

std::size_t product_dim(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

std::size_t flat_index(const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& idx) {
  if (idx.size() != dims.size())
    throw std::invalid_argument("flat_index: index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (idx[k] >= dims[k]) throw std::invalid_argument("flat_index: index out of range");
    flat = flat * dims[k] + idx[k];
  }
  return flat;
}

std::vector<std::size_t> multi_index(const std::vector<std::size_t>& dims,
                                     std::size_t flat) {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    idx[k] = flat % dims[k];
    flat /= dims[k];
  }
  return idx;
}

double StateVector::norm_squared() const { return qcond::norm_squared(amps); }

double StateVector::norm() const { return std::sqrt(norm_squared()); }

std::size_t LinearOperator::side() const { return product_dim(dims); }

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner_product: length mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm_squared(const std::vector<Complex>& v) {
  double acc = 0.0;
  for (const Complex& z : v) acc += std::norm(z);
  return acc;
}

LinearOperator zero_operator(std::vector<std::size_t> dims) {
  const std::size_t n = product_dim(dims);
  return LinearOperator{std::move(dims), std::vector<Complex>(n * n, Complex{0.0})};
}

LinearOperator identity_operator(std::vector<std::size_t> dims) {
  LinearOperator op = zero_operator(std::move(dims));
  const std::size_t n = op.side();
  for (std::size_t i = 0; i < n; ++i) op.at(i, i) = 1.0;
  return op;
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  if (a.dims != b.dims) throw std::invalid_argument("compose: dims mismatch");
  const std::size_t n = a.side();
  LinearOperator out = zero_operator(a.dims);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a.at(r, k);
      for (std::size_t c = 0; c < n; ++c) out.at(r, c) += ark * b.at(k, c);
    }
  return out;
}

LinearOperator adjoint(const LinearOperator& a) {
  const std::size_t n = a.side();
  LinearOperator out = zero_operator(a.dims);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.at(c, r) = std::conj(a.at(r, c));
  return out;
}

LinearOperator subtract(const LinearOperator& a, const LinearOperator& b) {
  if (a.dims != b.dims) throw std::invalid_argument("subtract: dims mismatch");
  LinearOperator out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] -= b.entries[i];
  return out;
}

double max_abs(const LinearOperator& a) {
  double m = 0.0;
  for (const Complex& z : a.entries) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const LinearOperator& a, const LinearOperator& b) {
  return max_abs(subtract(a, b));
}

bool is_hermitian(const LinearOperator& a, double tol) {
  return max_abs_diff(a, adjoint(a)) < tol;
}

bool is_idempotent(const LinearOperator& a, double tol) {
  return max_abs_diff(compose(a, a), a) < tol;
}

Projector make_projector(LinearOperator op) {
  if (!is_hermitian(op)) throw std::invalid_argument("make_projector: not Hermitian");
  if (!is_idempotent(op)) throw std::invalid_argument("make_projector: not idempotent");
  return Projector{{std::move(op)}};
}

Projector rank1_projector(const std::vector<Complex>& v,
                          std::vector<std::size_t> dims) {
  const std::size_t n = product_dim(dims);
  if (v.size() != n) throw std::invalid_argument("rank1_projector: length mismatch");
  Projector p{{std::move(dims), std::vector<Complex>(n * n)}};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) p.entries[r * n + c] = v[r] * std::conj(v[c]);
  return p;
}

ProjectiveFamily make_family(std::vector<Projector> projectors) {
  if (projectors.empty()) throw std::invalid_argument("make_family: empty family");
  const auto& dims = projectors.front().dims;
  LinearOperator sum = zero_operator(dims);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].dims != dims)
      throw std::invalid_argument("make_family: mixed dims");
    for (std::size_t j = i + 1; j < projectors.size(); ++j)
      if (max_abs(compose(projectors[i], projectors[j])) >= kTol)
        throw std::invalid_argument("make_family: projectors not orthogonal");
    for (std::size_t e = 0; e < sum.entries.size(); ++e)
      sum.entries[e] += projectors[i].entries[e];
  }
  if (max_abs_diff(sum, identity_operator(dims)) >= kTol)
    throw std::invalid_argument("make_family: family not complete");
  return ProjectiveFamily{std::move(projectors)};
}

StateVector make_state(std::vector<std::size_t> dims, std::vector<Complex> raw) {
  for (std::size_t d : dims)
    if (d == 0) throw std::invalid_argument("make_state: zero subsystem dimension");
  if (raw.size() != product_dim(dims))
    throw std::invalid_argument("make_state: amplitude count does not match dims");
  const double n2 = norm_squared(raw);
  if (n2 <= 0.0 || !std::isfinite(n2))
    throw std::invalid_argument("make_state: unnormalizable (zero or non-finite norm)");
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : raw) z *= inv;
  return StateVector{std::move(dims), std::move(raw)};
}

StateVector tensor_state(const StateVector& a, const StateVector& b) {
  StateVector out;
  out.dims = a.dims;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  out.amps.resize(a.amps.size() * b.amps.size());
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    for (std::size_t j = 0; j < b.amps.size(); ++j)
      out.amps[i * b.amps.size() + j] = a.amps[i] * b.amps[j];
  return out;
}

LinearOperator lift_operator(const LinearOperator& op,
                             const std::vector<std::size_t>& dims,
                             std::size_t slot) {
  if (slot >= dims.size()) throw std::invalid_argument("lift: slot out of range");
  if (op.side() != dims[slot])
    throw std::invalid_argument("lift: operator does not match subsystem dimension");
  const std::size_t n = product_dim(dims);
  LinearOperator out = zero_operator(dims);
  for (std::size_t r = 0; r < n; ++r) {
    const auto ri = multi_index(dims, r);
    for (std::size_t c = 0; c < n; ++c) {
      const auto ci = multi_index(dims, c);
      bool same = true;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (k != slot && ri[k] != ci[k]) { same = false; break; }
      if (same) out.at(r, c) = op.at(ri[slot], ci[slot]);
    }
  }
  return out;
}

Projector lift(const Projector& p, const std::vector<std::size_t>& dims,
               std::size_t slot) {
  // Tensoring with identities preserves hermiticity and idempotence by
  // block structure; no re-validation needed.
  return Projector{{lift_operator(p, dims, slot)}};
}

StateVector apply(const LinearOperator& op, const StateVector& s) {
  if (op.dims != s.dims) throw std::invalid_argument("apply: dims mismatch");
  const std::size_t n = s.amps.size();
  StateVector out{s.dims, std::vector<Complex>(n, Complex{0.0})};
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) acc += op.entries[r * n + c] * s.amps[c];
    out.amps[r] = acc;
  }
  return out;
}

ProjectiveFamily family_from_basis(const std::vector<std::vector<Complex>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("family_from_basis: empty basis");
  const std::size_t n = vectors.front().size();
  if (vectors.size() != n)
    throw std::invalid_argument("family_from_basis: basis must span the space (need " +
                                std::to_string(n) + " vectors)");
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors[i].size() != n)
      throw std::invalid_argument("family_from_basis: mixed vector lengths");
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = inner_product(vectors[i], vectors[j]);
      const Complex want = (i == j) ? Complex{1.0} : Complex{0.0};
      if (std::abs(g - want) >= kBasisTol)
        throw std::invalid_argument("family_from_basis: vectors not orthonormal");
    }
  }
  std::vector<Projector> ps;
  ps.reserve(n);
  for (const auto& v : vectors) ps.push_back(rank1_projector(v, {n}));
  return ProjectiveFamily{std::move(ps)};
}

}  // namespace qcond
