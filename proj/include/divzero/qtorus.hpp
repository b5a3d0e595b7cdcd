#pragma once

// Quantum tori C_q at roots of unity.

#include "divzero/cyc.hpp"
#include "divzero/scalar.hpp"

#include <optional>
#include <vector>

namespace divzero {

/// Rows of a d x d integer matrix.
using IntMatrix = std::vector<std::vector<long>>;

/// q_ij = zeta_N^{k_ij} with k_ii = 0 and k_ij + k_ji = 0 mod N.
class QMatrix {
 public:
  QMatrix(int N, IntMatrix exps);

  int d() const { return static_cast<int>(k_.size()); }
  int N() const { return n_; }
  const IntMatrix& exps() const { return k_; }
  /// Exponent reduced into [0, N).
  long k(int i, int j) const;
  Cyc entry(int i, int j) const { return Cyc::root_of_unity(n_, k(i, j)); }

  bool is_commutative() const;

  /// The orders l when q is block-normal: q_{2i,2i+1} (0-based) is a primitive l_i-th root
  /// of unity, l_{2i} = l_{2i+1}, a trailing odd coordinate has l = 1, and every other
  /// entry is 1. Empty otherwise.
  std::optional<std::vector<long>> block_orders() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  int n_;
  IntMatrix k_;
};

/// Block-normal q with q_{2i,2i+1} = zeta_{l}, N = lcm(l).
QMatrix block_normal_q(const std::vector<long>& l);

struct QMonomial {
  Cyc coeff;
  DegVec n;
  bool is_zero() const { return coeff.is_zero(); }
};

bool operator==(const QMonomial& a, const QMonomial& b);

/// Exponent of zeta_N in sigma(m, n): sum_{i<j} k_ji m_j n_i, reduced mod N.
long sigma_exponent(const QMatrix& q, const DegVec& m, const DegVec& n);
/// Exponent of zeta_N in f(m, n): sum_{i,j} k_ji m_j n_i, reduced mod N.
long f_exponent(const QMatrix& q, const DegVec& m, const DegVec& n);

Cyc sigma(const QMatrix& q, const DegVec& m, const DegVec& n);
Cyc f_form(const QMatrix& q, const DegVec& m, const DegVec& n);

QMonomial torus_mul(const QMatrix& q, const QMonomial& a, const QMonomial& b);
/// [t^m, t^n] = (sigma(m,n) - sigma(n,m)) t^{m+n}.
QMonomial torus_commutator(const QMatrix& q, const DegVec& m, const DegVec& n);

/// Residuals of f(m,n) = sigma(m,n)/sigma(n,m), f(m+n,r) = f(m,r) f(n,r) and
/// sigma(m,n) sigma(m+n,r) = sigma(n,r) sigma(m,n+r).
struct CocycleResidual {
  Cyc commutation;
  Cyc bimultiplicative;
  Cyc associativity;
  bool is_zero() const {
    return commutation.is_zero() && bimultiplicative.is_zero() && associativity.is_zero();
  }
};
CocycleResidual cocycle_identities_residual(const QMatrix& q, const DegVec& m, const DegVec& n,
                                            const DegVec& r);

/// Lattice basis, one vector per entry.
using Lattice = std::vector<DegVec>;

/// Basis of {n in Z^d : A n = 0 mod N}, A with d columns, in Hermite normal form.
Lattice smith_kernel_mod(const IntMatrix& a, long N);

/// Row-style Hermite normal form of a full-rank lattice basis: upper triangular,
/// positive diagonal, entries above each pivot reduced into [0, pivot).
Lattice hermite_normal_form(const Lattice& basis);

/// Rad_q = {n : f(n, m) = 1 for all m}, in Hermite normal form.
Lattice rad_q(const QMatrix& q);
bool in_rad(const QMatrix& q, const DegVec& n);

}  // namespace divzero
