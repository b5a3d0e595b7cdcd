#pragma once

// Random elements for the property suites.

#include "divzero/graded.hpp"
#include "divzero/random.hpp"
#include "divzero/witt.hpp"

#include <string>

namespace divzero {

enum class Algebra { W, Lhat, L };

inline std::string to_string(Algebra a) {
  switch (a) {
    case Algebra::W: return "W";
    case Algebra::Lhat: return "Lhat";
    case Algebra::L: return "L";
  }
  return "?";
}

/// u minus its projection onto r, so that (u | r) = 0. r must be nonzero.
template <ExactScalar S>
Vec<S> project_divergence_free(const Vec<S>& u, const DegVec& r) {
  const Vec<S> rs = to_scalar<S>(r);
  return u - rs * (dot(u, rs) / dot(rs, rs));
}

/// Sum of `terms` random homogeneous terms with degrees in [-radius, radius]^d.
template <ExactScalar S>
AlgElem<S> random_element(Sampler& s, Algebra alg, int d, int radius, int terms, int order = 1) {
  AlgElem<S> x(d);
  for (int t = 0; t < terms; ++t) {
    DegVec r = s.degree(d, radius);
    if (alg == Algebra::L)
      while (r.isZero()) r = s.degree(d, radius);
    Vec<S> u = s.vec<S>(d, order);
    if (alg != Algebra::W && !r.isZero()) u = project_divergence_free(u, r);
    x.add(u, r);
  }
  return x;
}

/// Sum of `terms` random fibers with degrees in [-radius, radius]^d.
template <ExactScalar S>
GradedVec<S> random_graded(Sampler& s, int d, int dim, int radius, int terms, int order = 1) {
  GradedVec<S> out(d, dim);
  for (int t = 0; t < terms; ++t) out.add(s.degree(d, radius), s.vec<S>(dim, order));
  return out;
}

}  // namespace divzero
