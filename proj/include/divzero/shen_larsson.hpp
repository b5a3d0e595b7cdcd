#pragma once

// The modules F^alpha(V) = V (x) A_d over W_d, Lhat_d and L_d, the wedge submodules W and
// W', and submodule closure inside a degree box.

#include "divzero/closure.hpp"
#include "divzero/rep.hpp"
#include "divzero/sampling.hpp"
#include "divzero/witt.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

namespace divzero {

struct ModuleParams {
  int d;
  Vec<Rat> alpha;
  Rep rep;

  ModuleParams(Rep rep_, Vec<Rat> alpha_) : d(rep_.d()), alpha(std::move(alpha_)), rep(std::move(rep_)) {
    if (alpha.size() != d)
      throw std::invalid_argument("alpha has length " + std::to_string(alpha.size()) + ", expected " +
                                  std::to_string(d));
  }

  int dim() const { return rep.dim(); }

  /// -alpha when alpha is integral.
  std::optional<DegVec> integral_point() const {
    DegVec p(d);
    for (int i = 0; i < d; ++i) {
      if (!alpha[i].is_integer()) return std::nullopt;
      p[i] = static_cast<int>(-alpha[i].floor().get_si());
    }
    return p;
  }
};

/// D(u, r) on the single fiber v (x) t^n: ((u | n + alpha) v + (r u^T) v) at degree n + r.
template <ExactScalar S>
Vec<S> act_fiber(const ModuleParams& p, const Vec<S>& u, const DegVec& r, const DegVec& n,
                 const Vec<S>& v) {
  const S c = dot(u, Vec<S>(to_scalar<S>(n) + to_scalar<S>(p.alpha)));
  return v * c + act_outer(p.rep, to_scalar<S>(r), u, v);
}

namespace detail {
template <ExactScalar S>
void check_module(const ModuleParams& p, int d, int dim) {
  if (d != p.d) throw std::invalid_argument("algebra element over d = " + std::to_string(d) +
                                            ", module over d = " + std::to_string(p.d));
  if (dim != p.dim()) throw std::invalid_argument("module vector has dim " + std::to_string(dim) +
                                                  ", rep has dim " + std::to_string(p.dim()));
}
}  // namespace detail

template <ExactScalar S>
GradedVec<S> act(const ModuleParams& p, const AlgElem<S>& x, const GradedVec<S>& v) {
  detail::check_module<S>(p, x.d(), v.dim());
  if (v.d() != p.d) throw std::invalid_argument("module vector degree has wrong dimension");
  GradedVec<S> out(p.d, p.dim());
  for (const auto& [r, u] : x.terms())
    for (const auto& [n, w] : v.fibers()) out.add(n + r, act_fiber(p, u, r, n, w));
  return out;
}

/// d_{r,i} acting directly: (r_{i+1}(n_i + a_i) - r_i(n_{i+1} + a_{i+1})) w
///   + sum_k r_k (r_{i+1} E_{k,i} - r_i E_{k,i+1}) w.
template <ExactScalar S>
GradedVec<S> act_d_basis(const ModuleParams& p, const DegVec& r, int i, const GradedVec<S>& v) {
  detail::check_module<S>(p, static_cast<int>(r.size()), v.dim());
  if (i < 0 || i > p.d - 2) throw std::out_of_range("act_d_basis: index out of range");
  const S ri(static_cast<long>(r[i])), rj(static_cast<long>(r[i + 1]));
  GradedVec<S> out(p.d, p.dim());
  for (const auto& [n, w] : v.fibers()) {
    const S ni = S(static_cast<long>(n[i])) + S(p.alpha[i]);
    const S nj = S(static_cast<long>(n[i + 1])) + S(p.alpha[i + 1]);
    Vec<S> img = w * (rj * ni - ri * nj);
    for (int k = 0; k < p.d; ++k) {
      if (r[k] == 0) continue;
      const S rk(static_cast<long>(r[k]));
      img += act_E(p.rep, k, i, w) * (rk * rj) - act_E(p.rep, k, i + 1, w) * (rk * ri);
    }
    out.add(n + r, img);
  }
  return out;
}

/// act([x,y], v) - act(x, act(y, v)) + act(y, act(x, v)).
template <ExactScalar S>
GradedVec<S> module_axiom_residual(const ModuleParams& p, const AlgElem<S>& x, const AlgElem<S>& y,
                                   const GradedVec<S>& v) {
  return act(p, bracket_witt(x, y), v) - act(p, x, act(p, y, v)) + act(p, y, act(p, x, v));
}

/// Image of y -> y ^ (alpha + n) from wedge^{k-1} into wedge^k C^d, basis as in Rep::exterior.
template <ExactScalar S>
SpanBasis<S> w_fiber_basis(int d, int k, const Vec<Rat>& alpha, const DegVec& n) {
  if (k < 1 || k > d) throw std::invalid_argument("w_fiber_basis: k must lie in [1, d]");
  const auto top = k_subsets(d, k);
  std::map<std::vector<int>, int> index;
  for (std::size_t a = 0; a < top.size(); ++a) index[top[a]] = static_cast<int>(a);
  const Vec<S> a = to_scalar<S>(n) + to_scalar<S>(alpha);
  std::vector<Vec<S>> images;
  for (const auto& s : k_subsets(d, k - 1)) {
    Vec<S> img = zeros<S>(static_cast<Eigen::Index>(top.size()));
    for (int j = 0; j < d; ++j) {
      if (is_zero(a[j]) || std::binary_search(s.begin(), s.end(), j)) continue;
      // e_S ^ e_j = (-1)^{#{s in S : s > j}} e_{S u {j}}
      const long after = std::count_if(s.begin(), s.end(), [j](int x) { return x > j; });
      auto t = s;
      t.insert(std::upper_bound(t.begin(), t.end(), j), j);
      img[index.at(t)] += after % 2 ? S(-a[j]) : a[j];
    }
    images.push_back(std::move(img));
  }
  return span_of<S>(static_cast<Eigen::Index>(top.size()), images);
}

template <ExactScalar S>
SpanBasis<S> w_fiber_basis(const ModuleParams& p, const DegVec& n) {
  const int k = p.rep.wedge_degree();
  if (k < 1) throw std::invalid_argument("W submodule needs an exterior power, got " + to_string(p.rep.kind()));
  return w_fiber_basis<S>(p.d, k, p.alpha, n);
}

template <ExactScalar S>
bool w_membership(const ModuleParams& p, const GradedVec<S>& v) {
  detail::check_module<S>(p, v.d(), v.dim());
  if (p.rep.wedge_degree() < 1)
    throw std::invalid_argument("W submodule needs an exterior power, got " + to_string(p.rep.kind()));
  for (const auto& [n, w] : v.fibers())
    if (!span_contains(w_fiber_basis<S>(p, n), w)) return false;
  return true;
}

/// Decomposition of F^alpha(C) for the trivial rep (k = d).
struct TrivialSplit {
  bool irreducible;
  DegVec point;  // -alpha when split

  /// Degree n lies in the summand C t^{-alpha}.
  bool in_point_summand(const DegVec& n) const { return !irreducible && deg_equal(n, point); }
  /// Degree n lies in the summand spanned by t^n with alpha + n != 0.
  bool in_complement(const DegVec& n) const { return irreducible || !deg_equal(n, point); }
};

inline TrivialSplit trivial_split(const ModuleParams& p) {
  if (p.rep.kind() != Rep::Kind::Trivial)
    throw std::invalid_argument("trivial_split: rep is " + to_string(p.rep.kind()) + ", not trivial");
  if (auto pt = p.integral_point()) return {false, *pt};
  return {true, DegVec()};
}

/// Basis of the degree-r part of L_d used by the closure engine: the d_{r,i}, completed
/// by r_j e_i - r_i e_j (i < j) when they do not span the hyperplane (u | r) = 0.
template <ExactScalar S>
std::vector<DTerm<S>> l_degree_basis(const DegVec& r) {
  const int d = static_cast<int>(r.size());
  std::vector<DTerm<S>> out;
  if (r.isZero()) return out;
  SpanBasis<S> span(d);
  auto take = [&](Vec<S> u) {
    auto [next, grew] = span_extend(span, std::vector<Vec<S>>{u});
    if (!grew) return;
    span = std::move(next);
    out.push_back({std::move(u), r});
  };
  for (int i = 0; i + 1 < d; ++i) take(d_basis<S>(r, i).u);
  for (int i = 0; i < d && span.rank() < d - 1; ++i)
    for (int j = i + 2; j < d && span.rank() < d - 1; ++j) {
      Vec<S> u = zeros<S>(d);
      u[i] = S(static_cast<long>(r[j]));
      u[j] = S(static_cast<long>(-r[i]));
      take(std::move(u));
    }
  return out;
}

/// Homogeneous spanning terms of the algebra with |r|_inf <= radius, ordered by (r, i).
template <ExactScalar S>
std::vector<DTerm<S>> algebra_terms(Algebra alg, int d, int radius) {
  std::vector<DTerm<S>> out;
  for (const auto& r : Box::cube(d, radius).points()) {
    if (alg == Algebra::W || (alg == Algebra::Lhat && r.isZero())) {
      for (int j = 0; j < d; ++j) {
        Vec<S> u = zeros<S>(d);
        u[j] = S(1);
        out.push_back({std::move(u), r});
      }
      continue;
    }
    for (auto& t : l_degree_basis<S>(r)) out.push_back(std::move(t));
  }
  return out;
}

template <ExactScalar S>
std::vector<Generator<S>> module_generators(const ModuleParams& p, Algebra alg, int radius) {
  std::vector<Generator<S>> gens;
  for (auto& t : algebra_terms<S>(alg, p.d, radius)) {
    std::string name = "D(" + std::to_string(gens.size()) + ")";
    gens.push_back({t.r, std::move(name), [p, t](const DegVec& n, const Vec<S>& v) {
                      return act_fiber(p, t.u, t.r, n, v);
                    }});
  }
  return gens;
}

/// Number of (generator, W basis vector) pairs with source degree in `box` whose image
/// leaves the W fibers. Zero means W is invariant under the sampled generators.
template <ExactScalar S>
int w_invariance_violations(const ModuleParams& p, Algebra alg, int radius, const Box& box) {
  int bad = 0;
  const auto gens = module_generators<S>(p, alg, radius);
  for (const auto& n : box.points()) {
    const auto src = w_fiber_basis<S>(p, n);
    for (const auto& g : gens) {
      const DegVec m = n + g.shift;
      const auto dst = w_fiber_basis<S>(p, m);
      for (const auto& w : src.rows())
        if (!span_contains(dst, g.apply(n, w))) ++bad;
    }
  }
  return bad;
}

struct Label {
  enum class Kind { Full, W, WPrime, Other };
  Kind kind = Kind::Other;
  int dim_v_prime = 0;

  std::string str() const {
    switch (kind) {
      case Kind::Full: return "Full";
      case Kind::W: return "W";
      case Kind::WPrime: return "WPrime(" + std::to_string(dim_v_prime) + ")";
      case Kind::Other: return "Other";
    }
    return "?";
  }
  friend bool operator==(const Label&, const Label&) = default;
};

struct ClosureOptions {
  Algebra algebra = Algebra::L;
  int gen_radius = 2;
  Box working;
  Box target;
  int max_iters = 50;
};

template <ExactScalar S>
struct ClosureResult {
  Algebra algebra;
  int gen_radius;
  Box working;
  Box target;
  FiberMap<S> fiber_bases;               // every target degree, including zero fibers
  std::map<DegVec, int, DegLess> fiber_dims;  // target degrees only
  std::optional<Label> label;            // set when saturated
  int iterations = 0;
  bool saturated = false;
  std::vector<long> history;
};

class ClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <ExactScalar S>
Label classify(const ClosureResult<S>& res, const ModuleParams& p);

template <ExactScalar S = Rat>
ClosureResult<S> closure(const ModuleParams& p, const std::type_identity_t<std::vector<GradedVec<S>>>& seeds,
                         const ClosureOptions& opt) {
  if (std::all_of(seeds.begin(), seeds.end(), [](const auto& s) { return s.is_zero(); }))
    throw std::invalid_argument("closure: no nonzero seeds");
  if (opt.working.d() != p.d || opt.target.d() != p.d)
    throw std::invalid_argument("closure: box dimension does not match d");
  if (!opt.working.contains(opt.target)) throw std::invalid_argument("closure: target box not inside working box");
  if (opt.gen_radius < 0) throw std::invalid_argument("closure: negative gen_radius");
  SaturationEngine<S> eng(module_generators<S>(p, opt.algebra, opt.gen_radius), opt.working, p.dim(),
                          opt.max_iters);
  for (const auto& s : seeds) {
    detail::check_module<S>(p, s.d(), s.dim());
    eng.add_seed(s);
  }
  eng.run();
  ClosureResult<S> res{opt.algebra, opt.gen_radius, opt.working, opt.target, {}, {}, {}, 0, false, {}};
  for (const auto& n : opt.target.points()) {
    res.fiber_bases.emplace(n, eng.fiber(n));
    res.fiber_dims.emplace(n, eng.fiber_dim(n));
  }
  res.iterations = eng.iterations();
  res.saturated = eng.saturated();
  res.history = eng.history();
  if (res.saturated) res.label = classify(res, p);
  return res;
}

/// Compares saturated target fibers with Full, W and W + V' t^{-alpha}. W-type labels are
/// re-verified: the fibers must be closed under every generator within the target box.
template <ExactScalar S>
Label classify(const ClosureResult<S>& res, const ModuleParams& p) {
  if (!res.saturated) throw ClosureError("classify: closure did not saturate");
  bool full = true;
  for (const auto& [n, dim] : res.fiber_dims) full = full && dim == p.dim();
  if (full) return {Label::Kind::Full, 0};
  if (p.rep.wedge_degree() < 1) return {};

  const auto point = p.integral_point();
  std::optional<int> v_prime;
  for (const auto& [n, b] : res.fiber_bases) {
    if (point && deg_equal(n, *point) && b.rank() > 0) {
      v_prime = b.rank();
      continue;
    }
    if (!(b == w_fiber_basis<S>(p, n))) return {};
  }
  for (const auto& g : module_generators<S>(p, res.algebra, res.gen_radius))
    for (const auto& [n, b] : res.fiber_bases) {
      const DegVec m = n + g.shift;
      if (!res.target.contains(m)) continue;
      for (const auto& w : b.rows())
        if (!span_contains(res.fiber_bases.at(m), g.apply(n, w))) return {};
    }
  if (v_prime) return {Label::Kind::WPrime, *v_prime};
  return {Label::Kind::W, 0};
}

}  // namespace divzero
