#pragma once

// Derivations of a quantum torus, the modules F_q^alpha(V), their congruence-class
// decomposition and the isomorphisms onto the classical modules.

#include "divzero/closure.hpp"
#include "divzero/qtorus.hpp"
#include "divzero/shen_larsson.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace divzero {

/// A key violates the Rad_q split: inner degrees must lie outside Rad_q, outer ones inside.
class QDerKeyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by operations that need block-normal q.
class BlockFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite sum of inner derivations c ad t^m (m not in Rad_q) and outer terms
/// D(u, r) = t^r sum u_i d_i (r in Rad_q).
class QDerElem {
 public:
  using Inner = std::map<DegVec, Cyc, DegLess>;
  using Outer = std::map<DegVec, Vec<Cyc>, DegLess>;

  explicit QDerElem(int d = 0) : d_(d) {}
  static QDerElem ad(const DegVec& m, const Cyc& c = Cyc(1));
  static QDerElem outer(const Vec<Cyc>& u, const DegVec& r);
  /// Every term of x as an outer term.
  static QDerElem from_witt(const AlgElem<Cyc>& x);

  int d() const { return d_; }
  const Inner& inner() const { return inner_; }
  const Outer& outer() const { return outer_; }
  bool is_zero() const { return inner_.empty() && outer_.empty(); }

  void add_inner(const DegVec& m, const Cyc& c);
  void add_outer(const DegVec& r, const Vec<Cyc>& u);

  QDerElem& operator+=(const QDerElem& o);
  QDerElem& operator-=(const QDerElem& o) { return *this += o * Cyc(-1); }
  QDerElem& operator*=(const Cyc& c);
  friend QDerElem operator+(QDerElem a, const QDerElem& b) { return a += b; }
  friend QDerElem operator-(QDerElem a, const QDerElem& b) { return a -= b; }
  friend QDerElem operator*(QDerElem a, const Cyc& c) { return a *= c; }
  friend bool operator==(const QDerElem& a, const QDerElem& b);

  /// Outer part as a Witt algebra element.
  AlgElem<Cyc> outer_part() const;

  /// Throws QDerKeyError unless every key respects Rad_q.
  void check(const QMatrix& q) const;

 private:
  int d_;
  Inner inner_;
  Outer outer_;
};

/// Global sign of the outer-outer bracket. Classical:
///   [D(u,r), D(v,s)] = sigma(r,s) ((u|s) D(v,r+s) - (v|r) D(u,r+s)),
/// which reduces to the Witt bracket when q = 1. AsPrinted is its negative.
enum class OuterSign { Classical, AsPrinted };
std::string to_string(OuterSign s);
std::string describe(OuterSign s);

QDerElem bracket_qder(const QMatrix& q, const QDerElem& x, const QDerElem& y,
                      OuterSign sign = OuterSign::Classical);

QDerElem jacobi_residual_q(const QMatrix& q, const QDerElem& x, const QDerElem& y, const QDerElem& z,
                           OuterSign sign = OuterSign::Classical);

/// L_d(q): outer terms are divergence-free and there is no degree-zero outer part.
bool in_Lq(const QDerElem& x);
/// Lhat_d(q): outer terms with r != 0 are divergence-free.
bool in_Lqhat(const QDerElem& x);

enum class QAlgebra { Der, Lq, Lqhat };
std::string to_string(QAlgebra a);

/// Random element with inner degrees in [-radius, radius]^d outside Rad_q and outer
/// degrees c . (Rad_q basis), c in [-radius, radius]^d.
QDerElem random_qder(Sampler& s, const QMatrix& q, QAlgebra alg, int radius, int terms);

/// F_q^alpha(V): quantum torus, alpha and the gl_d-module.
struct QModuleParams {
  QMatrix q;
  ModuleParams base;

  QModuleParams(QMatrix q_, ModuleParams base_);
  int d() const { return base.d; }
  int dim() const { return base.dim(); }
};

/// Both actions on a single fiber t^n (x) v.
Vec<Cyc> act_q_inner(const QModuleParams& p, const DegVec& m, const DegVec& n, const Vec<Cyc>& v);
Vec<Cyc> act_q_outer(const QModuleParams& p, const Vec<Cyc>& u, const DegVec& r, const DegVec& n,
                     const Vec<Cyc>& v);

GradedVec<Cyc> act_q(const QModuleParams& p, const QDerElem& x, const GradedVec<Cyc>& v);

/// act_q([x,y], v) - act_q(x, act_q(y, v)) + act_q(y, act_q(x, v)).
GradedVec<Cyc> module_axiom_residual_q(const QModuleParams& p, const QDerElem& x, const QDerElem& y,
                                       const GradedVec<Cyc>& v, OuterSign sign = OuterSign::Classical);

/// The outer sign under which act_q is a representation on `samples` random triples,
/// trying Classical first. Throws std::runtime_error if neither passes.
OuterSign select_outer_sign(const QModuleParams& p, std::uint64_t seed, int samples = 20);

/// The orders l of a block-normal q; throws BlockFormError otherwise.
std::vector<long> block_orders_or_throw(const QMatrix& q);

/// Congruence class of n: n mod l componentwise, in [0, l_j).
DegVec congruence_class(const std::vector<long>& l, const DegVec& n);

/// All classes I, lexicographic.
std::vector<DegVec> all_classes(const std::vector<long>& l);

std::map<DegVec, GradedVec<Cyc>, DegLess> decompose_classes(const QMatrix& q, const GradedVec<Cyc>& v);

/// Sum of the nonzero-class components.
GradedVec<Cyc> g_q_component(const QMatrix& q, const GradedVec<Cyc>& v);

/// D(u, n) -> D(L u, L^{-1} n) on outer terms in Lhat(q).
AlgElem<Cyc> iso_algebra(const QMatrix& q, const QDerElem& x);

/// The classical module F^{alpha_i}(V^(l)) a class-i component is isomorphic to.
ModuleParams iso_target(const QModuleParams& p, const DegVec& cls);

/// t^{n+i} (x) v -> t^{L^{-1} n} (x) v.
GradedVec<Cyc> iso_module(const QModuleParams& p, const DegVec& cls, const GradedVec<Cyc>& v);

/// iso_module(x . v) - iso_algebra(x) . iso_module(v).
GradedVec<Cyc> equivariance_residual(const QModuleParams& p, const DegVec& cls, const QDerElem& x,
                                     const GradedVec<Cyc>& v);

/// ad t^m kills every class-0 basis vector t^n (x) e_a for n in the box and
/// m outside Rad_q with |m|_inf <= radius.
bool ad_annihilation_check(const QModuleParams& p, const Box& box, int radius);

struct QClosureOptions {
  QAlgebra algebra = QAlgebra::Lq;
  int gen_radius = 2;
  Box working;
  Box target;
  int max_iters = 50;
};

struct QClosureResult {
  QAlgebra algebra;
  Box working;
  Box target;
  FiberMap<Cyc> fiber_bases;                                  // every target degree
  std::map<DegVec, int, DegLess> fiber_dims;                  // target degrees
  std::map<DegVec, std::map<DegVec, int, DegLess>, DegLess> class_dims;  // class -> degree -> dim
  bool g_q_full = false;          // every target fiber outside Rad_q has dim V
  bool confined_to_class0 = false;  // nothing outside class 0 anywhere in the working box
  int iterations = 0;
  bool saturated = false;
  std::vector<long> history;
};

std::vector<Generator<Cyc>> qmodule_generators(const QModuleParams& p, QAlgebra alg, int radius);

QClosureResult closure_q(const QModuleParams& p, const std::vector<GradedVec<Cyc>>& seeds,
                         const QClosureOptions& opt);

}  // namespace divzero
