#pragma once

// Eigen glue for the exact scalar types. Only the container and coefficient-wise
// parts of Eigen are used with these scalars; nothing here has a meaningful
// epsilon, so decompositions that compare against one must not be used.

#include "divzero/cyc.hpp"
#include "divzero/rat.hpp"

#include <Eigen/Core>

#include <concepts>
#include <limits>

namespace Eigen {

template <>
struct NumTraits<divzero::Rat> : GenericNumTraits<divzero::Rat> {
  using Real = divzero::Rat;
  using NonInteger = divzero::Rat;
  using Literal = divzero::Rat;
  using Nested = divzero::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 50
  };
  static inline int digits10() { return 0; }
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
};

template <>
struct NumTraits<divzero::Cyc> : GenericNumTraits<divzero::Cyc> {
  using Real = divzero::Cyc;
  using NonInteger = divzero::Cyc;
  using Literal = divzero::Cyc;
  using Nested = divzero::Cyc;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 100,
    MulCost = 200
  };
  static inline int digits10() { return 0; }
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
};

}  // namespace Eigen

namespace divzero {

/// Exact field scalar usable throughout the library: Rat or Cyc.
template <class S>
concept ExactScalar = std::same_as<S, Rat> || std::same_as<S, Cyc>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using DegVec = Eigen::VectorXi;

template <ExactScalar S>
Vec<S> zeros(Eigen::Index n) {
  return Vec<S>::Constant(n, S(0));
}

template <ExactScalar S>
bool is_zero(const Vec<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return false;
  return true;
}

template <ExactScalar S>
bool equal(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

/// Standard bilinear form (u | v), exact.
template <ExactScalar S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  S acc(0);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) acc += a[i] * b[i];
  return acc;
}

template <ExactScalar S>
Vec<S> to_scalar(const DegVec& n) {
  Vec<S> out(n.size());
  for (Eigen::Index i = 0; i < n.size(); ++i) out[i] = S(static_cast<long>(n[i]));
  return out;
}

template <ExactScalar S>
Vec<S> to_scalar(const Vec<Rat>& v) {
  if constexpr (std::same_as<S, Rat>) {
    return v;
  } else {
    Vec<S> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = S(v[i]);
    return out;
  }
}

/// Lexicographic order on degree vectors, for ordered maps.
struct DegLess {
  bool operator()(const DegVec& a, const DegVec& b) const {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
  }
};

inline bool deg_equal(const DegVec& a, const DegVec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

inline DegVec deg(std::initializer_list<int> xs) {
  DegVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v[i++] = x;
  return v;
}

inline int inf_norm(const DegVec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0; }

}  // namespace divzero
