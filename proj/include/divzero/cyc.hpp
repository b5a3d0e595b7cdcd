#pragma once

#include "divzero/rat.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace divzero {

/// Raised when mixed-order arithmetic would need a field Q(zeta_M) with M
/// above the configured limit.
class CycOrderError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
std::vector<BigInt> cyclotomic_polynomial(int n);

int euler_phi(int n);

/// Largest common order admitted by mixed-order arithmetic (default 360).
int cyc_order_limit();
void set_cyc_order_limit(int limit);

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1),
/// reduced modulo the N-th cyclotomic polynomial.
///
/// Binary operations on elements of different orders embed both operands in
/// Q(zeta_lcm). Values never shrink back to a smaller order on their own, so
/// compare with == (which embeds) rather than comparing coeffs() directly.
class Cyc {
 public:
  Cyc() : order_(1), coeffs_{Rat(0)} {}
  Cyc(long v) : order_(1), coeffs_{Rat(v)} {}        // NOLINT(google-explicit-constructor)
  Cyc(const Rat& r) : order_(1), coeffs_{r} {}       // NOLINT(google-explicit-constructor)
  Cyc(int order, std::vector<Rat> coeffs);

  /// zeta_N^k, with k reduced mod N.
  static Cyc root_of_unity(int n, long k);

  int order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws std::domain_error unless is_rational().
  Rat to_rat() const;

  /// Same value written over Q(zeta_m); requires order() | m.
  Cyc embed(int m) const;
  /// Equal value at the smallest order dividing order() that can hold it.
  Cyc reduced() const;

  Cyc inverse() const;

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o) { return *this *= o.inverse(); }
  Cyc operator-() const;

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }

  friend bool operator==(const Cyc& a, const Cyc& b);

  /// Rationals print as "p/q"; others as "[c0, c1, ...]@N".
  std::string str() const;

 private:
  int order_;
  std::vector<Rat> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Cyc& c);

inline bool is_zero(const Cyc& c) { return c.is_zero(); }

}  // namespace divzero
