#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qcond {

using Complex = std::complex<double>;

/// Absolute max-norm tolerance for structural checks: normalization,
/// hermiticity, idempotence, orthogonality, completeness.
inline constexpr double kTol = 1e-12;

/// Looser tolerance accepted for user-supplied orthonormal bases.
inline constexpr double kBasisTol = 1e-10;

// Row-major flat indexing over subsystem dimensions, last subsystem fastest.
std::size_t product_dim(const std::vector<std::size_t>& dims);
std::size_t flat_index(const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& idx);
std::vector<std::size_t> multi_index(const std::vector<std::size_t>& dims,
                                     std::size_t flat);

/// Amplitude vector over a tensor product of finite subsystems.
/// Values produced by make_state / tensor_state / collapse are unit-norm;
/// apply() may return an unnormalized vector (see below).
struct StateVector {
  std::vector<std::size_t> dims;
  std::vector<Complex> amps;

  std::size_t dim() const { return amps.size(); }
  double norm_squared() const;
  double norm() const;
};

/// Dense square operator on the joint space, row-major entries.
struct LinearOperator {
  std::vector<std::size_t> dims;
  std::vector<Complex> entries;  // side x side, side = product(dims)

  std::size_t side() const;
  Complex at(std::size_t r, std::size_t c) const { return entries[r * side() + c]; }
  Complex& at(std::size_t r, std::size_t c) { return entries[r * side() + c]; }
};

/// Hermitian idempotent operator. Construct through make_projector,
/// family_from_basis or lift so the invariants are guaranteed.
struct Projector : LinearOperator {};

/// Complete family of pairwise-orthogonal projectors for one observable.
struct ProjectiveFamily {
  std::vector<Projector> projectors;

  std::size_t size() const { return projectors.size(); }
};

LinearOperator zero_operator(std::vector<std::size_t> dims);
LinearOperator identity_operator(std::vector<std::size_t> dims);
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);  // a*b
LinearOperator adjoint(const LinearOperator& a);
LinearOperator subtract(const LinearOperator& a, const LinearOperator& b);

/// Largest entry magnitude; the max-norm used by every structural check.
double max_abs(const LinearOperator& a);
double max_abs_diff(const LinearOperator& a, const LinearOperator& b);

bool is_hermitian(const LinearOperator& a, double tol = kTol);
bool is_idempotent(const LinearOperator& a, double tol = kTol);

/// Validates hermiticity and idempotence, then brands the operator.
Projector make_projector(LinearOperator op);

/// Rank-1 projector v v~ from a unit vector (not re-validated; callers
/// pass vectors that are orthonormal by construction).
Projector rank1_projector(const std::vector<Complex>& v,
                          std::vector<std::size_t> dims);

/// Validates pairwise orthogonality and completeness.
ProjectiveFamily make_family(std::vector<Projector> projectors);

/// Normalized state from raw amplitudes. Throws "unnormalizable" for a
/// zero vector, std::invalid_argument on a length mismatch.
StateVector make_state(std::vector<std::size_t> dims, std::vector<Complex> raw);

/// Tensor product; dims concatenate and the index of b varies fastest.
StateVector tensor_state(const StateVector& a, const StateVector& b);

/// Embeds a single-subsystem operator into the joint space:
/// identity x ... x op x ... x identity.
LinearOperator lift_operator(const LinearOperator& op,
                             const std::vector<std::size_t>& dims,
                             std::size_t slot);
Projector lift(const Projector& p, const std::vector<std::size_t>& dims,
               std::size_t slot);

/// Matrix-vector product. The result is NOT renormalized; the caller
/// decides (collapse does, expectation values must not).
StateVector apply(const LinearOperator& op, const StateVector& s);

/// One rank-1 projector per basis vector; the basis must be orthonormal
/// within kBasisTol.
ProjectiveFamily family_from_basis(const std::vector<std::vector<Complex>>& vectors);

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b);
double norm_squared(const std::vector<Complex>& v);

}  // namespace qcond
