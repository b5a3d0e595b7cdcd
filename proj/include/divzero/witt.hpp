#pragma once

// Elements and brackets of the Witt algebra W_d and its divergence-zero
// subalgebras Lhat_d (with the degree derivations) and L_d (without).

#include "divzero/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace divzero {

/// Finite sum of homogeneous derivations D(u, r) = t^r sum_i u_i d_i, one
/// coefficient vector per degree; zero vectors are never stored.
template <ExactScalar S>
class AlgElem {
 public:
  using Terms = std::map<DegVec, Vec<S>, DegLess>;

  explicit AlgElem(int d = 0) : d_(d) {}

  static AlgElem term(const Vec<S>& u, const DegVec& r) {
    AlgElem x(static_cast<int>(r.size()));
    x.add(u, r);
    return x;
  }

  int d() const { return d_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient vector at degree r (zero if absent).
  Vec<S> at(const DegVec& r) const {
    auto it = terms_.find(r);
    return it == terms_.end() ? zeros<S>(d_) : it->second;
  }

  void add(const Vec<S>& u, const DegVec& r) {
    if (u.size() != d_ || r.size() != d_)
      throw std::invalid_argument("AlgElem: term of dimension " + std::to_string(u.size()) +
                                  " in W_" + std::to_string(d_));
    if (divzero::is_zero(u)) return;
    auto [it, inserted] = terms_.try_emplace(r, u);
    if (!inserted) {
      it->second += u;
      if (divzero::is_zero(it->second)) terms_.erase(it);
    }
  }

  AlgElem& operator+=(const AlgElem& o) {
    check_same(o);
    for (const auto& [r, u] : o.terms_) add(u, r);
    return *this;
  }
  AlgElem& operator-=(const AlgElem& o) { return *this += o * S(-1); }
  AlgElem& operator*=(const S& c) {
    if (divzero::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [r, u] : terms_) u *= c;
    return *this;
  }

  friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
  friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
  friend AlgElem operator*(AlgElem a, const S& c) { return a *= c; }

  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    if (a.d_ != b.d_ || a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
      if (!deg_equal(ia->first, ib->first) || !equal(ia->second, ib->second)) return false;
    return true;
  }

  void check_same(const AlgElem& o) const {
    if (o.d_ != d_)
      throw std::invalid_argument("dimension mismatch: W_" + std::to_string(d_) + " vs W_" +
                                  std::to_string(o.d_));
  }

 private:
  int d_;
  Terms terms_;
};

/// A single homogeneous derivation D(u, r).
template <ExactScalar S>
struct DTerm {
  Vec<S> u;
  DegVec r;
  AlgElem<S> elem() const { return AlgElem<S>::term(u, r); }
};

/// [D(u,r), D(v,s)] = D((u|s) v - (v|r) u, r + s), extended bilinearly.
template <ExactScalar S>
AlgElem<S> bracket_witt(const AlgElem<S>& x, const AlgElem<S>& y) {
  x.check_same(y);
  AlgElem<S> out(x.d());
  for (const auto& [r, u] : x.terms()) {
    const Vec<S> rs = to_scalar<S>(r);
    for (const auto& [s, v] : y.terms()) {
      const S us = dot(u, to_scalar<S>(s));
      const S vr = dot(v, rs);
      out.add(v * us - u * vr, r + s);
    }
  }
  return out;
}

/// d_{r,i} = t^r (r_{i+1} d_i - r_i d_{i+1}), with 0-based i in [0, d-2].
template <ExactScalar S>
DTerm<S> d_basis(const DegVec& r, int i) {
  const int d = static_cast<int>(r.size());
  if (i < 0 || i > d - 2)
    throw std::out_of_range("d_basis: index " + std::to_string(i) + " out of range for d = " +
                            std::to_string(d));
  Vec<S> u = zeros<S>(d);
  u[i] = S(static_cast<long>(r[i + 1]));
  u[i + 1] = S(static_cast<long>(-r[i]));
  return {u, r};
}

/// Every term of nonzero degree r satisfies (u | r) = 0.
template <ExactScalar S>
bool in_Lhat(const AlgElem<S>& x) {
  for (const auto& [r, u] : x.terms())
    if (!is_zero(dot(u, to_scalar<S>(r)))) return false;
  return true;
}

/// in_Lhat and no degree-zero (Cartan) part.
template <ExactScalar S>
bool in_L(const AlgElem<S>& x) {
  if (!in_Lhat(x)) return false;
  return x.terms().find(DegVec::Zero(x.d())) == x.terms().end();
}

/// Given n != 0 and (u | n) = 0, returns u' with (u' | m) = 0 and
/// (u' - x u | m - x n) = 0 for every scalar x.
///
/// Writes u = sum_{i != j} a_i (n_i e_j - n_j e_i) for the first j with n_j != 0,
/// then substitutes m for n.
template <ExactScalar S>
Vec<S> lemma_orthg(const DegVec& m, const DegVec& n, const Vec<S>& u) {
  const Eigen::Index d = n.size();
  if (m.size() != d || u.size() != d) throw std::invalid_argument("lemma_orthg: dimension mismatch");
  Eigen::Index j = 0;
  while (j < d && n[j] == 0) ++j;
  if (j == d) throw std::invalid_argument("lemma_orthg: n must be nonzero");
  if (!is_zero(dot(u, to_scalar<S>(n)))) throw std::invalid_argument("lemma_orthg: (u | n) != 0");
  const S nj(static_cast<long>(n[j]));
  Vec<S> out = zeros<S>(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i == j || is_zero(u[i])) continue;
    const S a = -u[i] / nj;
    out[j] += a * S(static_cast<long>(m[i]));
    out[i] -= a * S(static_cast<long>(m[j]));
  }
  return out;
}

/// [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
template <ExactScalar S, class Bracket>
AlgElem<S> jacobi_residual(const AlgElem<S>& x, const AlgElem<S>& y, const AlgElem<S>& z,
                           Bracket&& br) {
  return br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y));
}

template <ExactScalar S>
AlgElem<S> jacobi_residual(const AlgElem<S>& x, const AlgElem<S>& y, const AlgElem<S>& z) {
  return jacobi_residual(x, y, z, [](const AlgElem<S>& a, const AlgElem<S>& b) {
    return bracket_witt(a, b);
  });
}

}  // namespace divzero
