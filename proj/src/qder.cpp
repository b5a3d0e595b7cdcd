#include "divzero/qder.hpp"

#include <algorithm>
#include <stdexcept>

namespace divzero {

namespace {

void check_deg(int d, const DegVec& n) {
  if (n.size() != d)
    throw std::invalid_argument("degree of dimension " + std::to_string(n.size()) + ", expected " +
                                std::to_string(d));
}

std::string deg_str(const DegVec& n) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < n.size(); ++i) out += (i ? "," : "") + std::to_string(n[i]);
  return out + ")";
}

Cyc sigma_diff(const QMatrix& q, const DegVec& m, const DegVec& n) {
  const long a = sigma_exponent(q, m, n), b = sigma_exponent(q, n, m);
  if (a == b) return Cyc(0);
  return Cyc::root_of_unity(q.N(), a) - Cyc::root_of_unity(q.N(), b);
}

}  // namespace

QDerElem QDerElem::ad(const DegVec& m, const Cyc& c) {
  QDerElem x(static_cast<int>(m.size()));
  x.add_inner(m, c);
  return x;
}

QDerElem QDerElem::outer(const Vec<Cyc>& u, const DegVec& r) {
  QDerElem x(static_cast<int>(r.size()));
  x.add_outer(r, u);
  return x;
}

QDerElem QDerElem::from_witt(const AlgElem<Cyc>& x) {
  QDerElem out(x.d());
  for (const auto& [r, u] : x.terms()) out.add_outer(r, u);
  return out;
}

void QDerElem::add_inner(const DegVec& m, const Cyc& c) {
  check_deg(d_, m);
  if (c.is_zero()) return;
  auto [it, inserted] = inner_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) inner_.erase(it);
  }
}

void QDerElem::add_outer(const DegVec& r, const Vec<Cyc>& u) {
  check_deg(d_, r);
  if (u.size() != d_) throw std::invalid_argument("outer term vector has the wrong length");
  if (divzero::is_zero(u)) return;
  auto [it, inserted] = outer_.try_emplace(r, u);
  if (!inserted) {
    it->second += u;
    if (divzero::is_zero(it->second)) outer_.erase(it);
  }
}

QDerElem& QDerElem::operator+=(const QDerElem& o) {
  if (o.d_ != d_) throw std::invalid_argument("QDerElem: dimension mismatch");
  for (const auto& [m, c] : o.inner_) add_inner(m, c);
  for (const auto& [r, u] : o.outer_) add_outer(r, u);
  return *this;
}

QDerElem& QDerElem::operator*=(const Cyc& c) {
  if (c.is_zero()) {
    inner_.clear();
    outer_.clear();
    return *this;
  }
  for (auto& [m, a] : inner_) a *= c;
  for (auto& [r, u] : outer_) u *= c;
  return *this;
}

bool operator==(const QDerElem& a, const QDerElem& b) {
  if (a.d_ != b.d_ || a.inner_.size() != b.inner_.size() || a.outer_.size() != b.outer_.size()) return false;
  for (auto ia = a.inner_.begin(), ib = b.inner_.begin(); ia != a.inner_.end(); ++ia, ++ib)
    if (!deg_equal(ia->first, ib->first) || !(ia->second == ib->second)) return false;
  for (auto ia = a.outer_.begin(), ib = b.outer_.begin(); ia != a.outer_.end(); ++ia, ++ib)
    if (!deg_equal(ia->first, ib->first) || !equal(ia->second, ib->second)) return false;
  return true;
}

AlgElem<Cyc> QDerElem::outer_part() const {
  AlgElem<Cyc> out(d_);
  for (const auto& [r, u] : outer_) out.add(u, r);
  return out;
}

void QDerElem::check(const QMatrix& q) const {
  if (d_ != q.d()) throw std::invalid_argument("QDerElem over d = " + std::to_string(d_) + ", q over d = " +
                                               std::to_string(q.d()));
  for (const auto& [m, c] : inner_)
    if (in_rad(q, m)) throw QDerKeyError("inner term ad t^" + deg_str(m) + " has its degree in Rad_q");
  for (const auto& [r, u] : outer_)
    if (!in_rad(q, r)) throw QDerKeyError("outer term D(u, " + deg_str(r) + ") has its degree outside Rad_q");
}

std::string to_string(OuterSign s) { return s == OuterSign::Classical ? "classical" : "as-printed"; }

std::string describe(OuterSign s) {
  return s == OuterSign::Classical ? "[D(u,r),D(v,s)] = sigma(r,s)((u|s)D(v,r+s) - (v|r)D(u,r+s))"
                                   : "[D(u,r),D(v,s)] = sigma(r,s)((v|r)D(u,r+s) - (u|s)D(v,r+s))";
}

QDerElem bracket_qder(const QMatrix& q, const QDerElem& x, const QDerElem& y, OuterSign sign) {
  x.check(q);
  y.check(q);
  QDerElem out(x.d());
  auto add_ad = [&](const DegVec& m, const Cyc& c) {
    if (c.is_zero()) return;
    // [D(u,r), ad t^m] with r in Rad never lands in Rad; [ad t^m, ad t^n] has a zero
    // coefficient whenever m + n is in Rad
    if (in_rad(q, m)) throw std::logic_error("bracket_qder: nonzero inner term at a Rad_q degree " + deg_str(m));
    out.add_inner(m, c);
  };
  for (const auto& [m, a] : x.inner())
    for (const auto& [n, b] : y.inner()) add_ad(m + n, a * b * sigma_diff(q, m, n));
  for (const auto& [r, u] : x.outer())
    for (const auto& [m, c] : y.inner())
      add_ad(r + m, c * dot(u, to_scalar<Cyc>(m)) * sigma(q, r, m));
  for (const auto& [m, c] : x.inner())
    for (const auto& [r, u] : y.outer())
      add_ad(r + m, -(c * dot(u, to_scalar<Cyc>(m)) * sigma(q, r, m)));
  const Cyc sgn(sign == OuterSign::Classical ? 1 : -1);
  for (const auto& [r, u] : x.outer()) {
    const Vec<Cyc> rs = to_scalar<Cyc>(r);
    for (const auto& [s, v] : y.outer()) {
      const Cyc c = sigma(q, r, s) * sgn;
      out.add_outer(r + s, Vec<Cyc>((v * dot(u, to_scalar<Cyc>(s)) - u * dot(v, rs)) * c));
    }
  }
  return out;
}

QDerElem jacobi_residual_q(const QMatrix& q, const QDerElem& x, const QDerElem& y, const QDerElem& z,
                           OuterSign sign) {
  auto br = [&](const QDerElem& a, const QDerElem& b) { return bracket_qder(q, a, b, sign); };
  return br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y));
}

bool in_Lqhat(const QDerElem& x) {
  for (const auto& [r, u] : x.outer())
    if (!dot(u, to_scalar<Cyc>(r)).is_zero()) return false;
  return true;
}

bool in_Lq(const QDerElem& x) {
  return in_Lqhat(x) && x.outer().find(DegVec::Zero(x.d())) == x.outer().end();
}

std::string to_string(QAlgebra a) {
  switch (a) {
    case QAlgebra::Der: return "Der";
    case QAlgebra::Lq: return "Lq";
    case QAlgebra::Lqhat: return "Lqhat";
  }
  return "?";
}

QDerElem random_qder(Sampler& s, const QMatrix& q, QAlgebra alg, int radius, int terms) {
  const int d = q.d();
  const Lattice rad = rad_q(q);
  bool inner_possible = false;  // Rad_q != Z^d
  for (int i = 0; i < d; ++i) inner_possible = inner_possible || rad[i][i] > 1;
  QDerElem x(d);
  for (int t = 0; t < terms; ++t) {
    if (inner_possible && s.coin()) {
      DegVec m = s.degree(d, radius);
      while (in_rad(q, m)) m = s.degree(d, radius);
      x.add_inner(m, s.cyc(q.N()));
      continue;
    }
    DegVec r = DegVec::Zero(d);
    do {
      r.setZero();
      for (const auto& b : rad) r += b * static_cast<int>(s.uniform(-radius, radius));
    } while (alg == QAlgebra::Lq && r.isZero());
    Vec<Cyc> u = s.vec<Cyc>(d, q.N());
    if (alg != QAlgebra::Der && !r.isZero()) u = project_divergence_free(u, r);
    x.add_outer(r, u);
  }
  return x;
}

QModuleParams::QModuleParams(QMatrix q_, ModuleParams base_) : q(std::move(q_)), base(std::move(base_)) {
  if (q.d() != base.d)
    throw std::invalid_argument("q over d = " + std::to_string(q.d()) + ", module over d = " +
                                std::to_string(base.d));
}


Vec<Cyc> act_q_inner(const QModuleParams& p, const DegVec& m, const DegVec& n, const Vec<Cyc>& v) {
  return v * sigma_diff(p.q, m, n);
}

Vec<Cyc> act_q_outer(const QModuleParams& p, const Vec<Cyc>& u, const DegVec& r, const DegVec& n,
                     const Vec<Cyc>& v) {
  return act_fiber(p.base, u, r, n, v) * sigma(p.q, r, n);
}

GradedVec<Cyc> act_q(const QModuleParams& p, const QDerElem& x, const GradedVec<Cyc>& v) {
  x.check(p.q);
  detail::check_module<Cyc>(p.base, v.d(), v.dim());
  GradedVec<Cyc> out(p.d(), p.dim());
  for (const auto& [m, c] : x.inner())
    for (const auto& [n, w] : v.fibers()) out.add(m + n, act_q_inner(p, m, n, w) * c);
  for (const auto& [r, u] : x.outer())
    for (const auto& [n, w] : v.fibers()) out.add(r + n, act_q_outer(p, u, r, n, w));
  return out;
}

GradedVec<Cyc> module_axiom_residual_q(const QModuleParams& p, const QDerElem& x, const QDerElem& y,
                                       const GradedVec<Cyc>& v, OuterSign sign) {
  return act_q(p, bracket_qder(p.q, x, y, sign), v) - act_q(p, x, act_q(p, y, v)) +
         act_q(p, y, act_q(p, x, v));
}

OuterSign select_outer_sign(const QModuleParams& p, std::uint64_t seed, int samples) {
  for (OuterSign sign : {OuterSign::Classical, OuterSign::AsPrinted}) {
    Sampler s(seed);
    bool ok = true;
    for (int t = 0; t < samples && ok; ++t) {
      const auto x = random_qder(s, p.q, QAlgebra::Der, 2, 2);
      const auto y = random_qder(s, p.q, QAlgebra::Der, 2, 2);
      const auto v = random_graded<Cyc>(s, p.d(), p.dim(), 2, 2, p.q.N());
      ok = module_axiom_residual_q(p, x, y, v, sign).is_zero();
    }
    if (ok) return sign;
  }
  throw std::runtime_error("select_outer_sign: no outer bracket sign makes the action a representation");
}

std::vector<long> block_orders_or_throw(const QMatrix& q) {
  auto l = q.block_orders();
  if (!l) throw BlockFormError("q is not block-normal; class decomposition needs block-normal q");
  return *l;
}

DegVec congruence_class(const std::vector<long>& l, const DegVec& n) {
  if (static_cast<Eigen::Index>(l.size()) != n.size()) throw std::invalid_argument("congruence_class: dimension mismatch");
  DegVec c(n.size());
  for (Eigen::Index i = 0; i < n.size(); ++i) {
    const long li = l[static_cast<std::size_t>(i)];
    c[i] = static_cast<int>(((n[i] % li) + li) % li);
  }
  return c;
}

std::vector<DegVec> all_classes(const std::vector<long>& l) {
  DegVec hi(static_cast<Eigen::Index>(l.size()));
  for (std::size_t i = 0; i < l.size(); ++i) hi[static_cast<Eigen::Index>(i)] = static_cast<int>(l[i] - 1);
  return Box(DegVec::Zero(hi.size()), hi).points();
}

std::map<DegVec, GradedVec<Cyc>, DegLess> decompose_classes(const QMatrix& q, const GradedVec<Cyc>& v) {
  const auto l = block_orders_or_throw(q);
  if (v.d() != q.d()) throw std::invalid_argument("decompose_classes: dimension mismatch");
  std::map<DegVec, GradedVec<Cyc>, DegLess> out;
  for (const auto& c : all_classes(l)) out.emplace(c, GradedVec<Cyc>(v.d(), v.dim()));
  for (const auto& [n, w] : v.fibers()) out.at(congruence_class(l, n)).add(n, w);
  return out;
}

GradedVec<Cyc> g_q_component(const QMatrix& q, const GradedVec<Cyc>& v) {
  GradedVec<Cyc> out(v.d(), v.dim());
  for (const auto& [c, part] : decompose_classes(q, v))
    if (!c.isZero()) out += part;
  return out;
}

AlgElem<Cyc> iso_algebra(const QMatrix& q, const QDerElem& x) {
  const auto l = block_orders_or_throw(q);
  x.check(q);
  if (!x.inner().empty()) throw std::invalid_argument("iso_algebra: inner terms have no classical image");
  AlgElem<Cyc> out(x.d());
  for (const auto& [r, u] : x.outer()) {
    Vec<Cyc> lu = u;
    DegVec rl = r;
    for (int i = 0; i < x.d(); ++i) {
      lu[i] *= Cyc(l[static_cast<std::size_t>(i)]);
      rl[i] = static_cast<int>(r[i] / l[static_cast<std::size_t>(i)]);
    }
    out.add(lu, rl);
  }
  return out;
}

ModuleParams iso_target(const QModuleParams& p, const DegVec& cls) {
  const auto l = block_orders_or_throw(p.q);
  if (!deg_equal(congruence_class(l, cls), cls)) throw std::invalid_argument("iso_target: not a class representative");
  Vec<Rat> a(p.d());
  for (int i = 0; i < p.d(); ++i)
    a[i] = (p.base.alpha[i] + Rat(cls[i])) / Rat(l[static_cast<std::size_t>(i)]);
  return ModuleParams(Rep::twisted(p.base.rep, l), a);
}

GradedVec<Cyc> iso_module(const QModuleParams& p, const DegVec& cls, const GradedVec<Cyc>& v) {
  const auto l = block_orders_or_throw(p.q);
  detail::check_module<Cyc>(p.base, v.d(), v.dim());
  GradedVec<Cyc> out(v.d(), v.dim());
  for (const auto& [n, w] : v.fibers()) {
    if (!deg_equal(congruence_class(l, n), cls))
      throw std::invalid_argument("iso_module: fiber at " + deg_str(n) + " is not in class " + deg_str(cls));
    DegVec m(n.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) m[i] = static_cast<int>((n[i] - cls[i]) / l[static_cast<std::size_t>(i)]);
    out.add(m, w);
  }
  return out;
}

GradedVec<Cyc> equivariance_residual(const QModuleParams& p, const DegVec& cls, const QDerElem& x,
                                     const GradedVec<Cyc>& v) {
  const ModuleParams target = iso_target(p, cls);
  return iso_module(p, cls, act_q(p, x, v)) - act(target, iso_algebra(p.q, x), iso_module(p, cls, v));
}

bool ad_annihilation_check(const QModuleParams& p, const Box& box, int radius) {
  const auto l = block_orders_or_throw(p.q);
  for (const auto& n : box.points()) {
    if (!congruence_class(l, n).isZero()) continue;
    for (const auto& m : Box::cube(p.d(), radius).points()) {
      if (in_rad(p.q, m)) continue;
      for (int a = 0; a < p.dim(); ++a) {
        Vec<Cyc> e = zeros<Cyc>(p.dim());
        e[a] = Cyc(1);
        if (!act_q(p, QDerElem::ad(m), GradedVec<Cyc>::single(n, e)).is_zero()) return false;
      }
    }
  }
  return true;
}

std::vector<Generator<Cyc>> qmodule_generators(const QModuleParams& p, QAlgebra alg, int radius) {
  std::vector<Generator<Cyc>> gens;
  const int d = p.d();
  for (const auto& r : Box::cube(d, radius).points()) {
    if (!in_rad(p.q, r)) {
      gens.push_back({r, "ad t^" + deg_str(r),
                      [p, r](const DegVec& n, const Vec<Cyc>& v) { return act_q_inner(p, r, n, v); }});
      continue;
    }
    std::vector<DTerm<Cyc>> terms;
    if (alg == QAlgebra::Der || (alg == QAlgebra::Lqhat && r.isZero())) {
      for (int j = 0; j < d; ++j) {
        Vec<Cyc> u = zeros<Cyc>(d);
        u[j] = Cyc(1);
        terms.push_back({u, r});
      }
    } else {
      terms = l_degree_basis<Cyc>(r);
    }
    for (auto& t : terms)
      gens.push_back({r, "D" + deg_str(r), [p, t](const DegVec& n, const Vec<Cyc>& v) {
                        return act_q_outer(p, t.u, t.r, n, v);
                      }});
  }
  return gens;
}

QClosureResult closure_q(const QModuleParams& p, const std::vector<GradedVec<Cyc>>& seeds,
                         const QClosureOptions& opt) {
  const auto l = block_orders_or_throw(p.q);
  if (std::all_of(seeds.begin(), seeds.end(), [](const auto& s) { return s.is_zero(); }))
    throw std::invalid_argument("closure_q: no nonzero seeds");
  if (opt.working.d() != p.d() || opt.target.d() != p.d())
    throw std::invalid_argument("closure_q: box dimension does not match d");
  if (!opt.working.contains(opt.target)) throw std::invalid_argument("closure_q: target box not inside working box");
  if (opt.gen_radius < 0) throw std::invalid_argument("closure_q: negative gen_radius");
  SaturationEngine<Cyc> eng(qmodule_generators(p, opt.algebra, opt.gen_radius), opt.working, p.dim(),
                            opt.max_iters);
  for (const auto& s : seeds) {
    detail::check_module<Cyc>(p.base, s.d(), s.dim());
    eng.add_seed(s);
  }
  eng.run();
  QClosureResult res;
  res.algebra = opt.algebra;
  res.working = opt.working;
  res.target = opt.target;
  res.g_q_full = true;
  for (const auto& n : opt.target.points()) {
    const int dim = eng.fiber_dim(n);
    res.fiber_bases.emplace(n, eng.fiber(n));
    res.fiber_dims.emplace(n, dim);
    const DegVec c = congruence_class(l, n);
    res.class_dims[c].emplace(n, dim);
    if (!c.isZero() && dim != p.dim()) res.g_q_full = false;
  }
  res.confined_to_class0 = true;
  for (const auto& [n, b] : eng.fibers())
    if (b.rank() > 0 && !congruence_class(l, n).isZero()) res.confined_to_class0 = false;
  res.iterations = eng.iterations();
  res.saturated = eng.saturated();
  res.history = eng.history();
  return res;
}

}  // namespace divzero
