#include "divzero/jobs.hpp"

#include "divzero/sampling.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

namespace divzero::jobs {

namespace {

constexpr int kMaxDim = 8;
constexpr long kMaxListedClasses = 4096;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

/// Object reader that remembers consumed keys so leftovers can be rejected.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  const Json* find(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  const Json& get(const std::string& key) {
    if (const Json* v = find(key)) return *v;
    throw ConfigError(at(key), "missing required field");
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  std::string at(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown field");
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

long as_int(const Json& j, const std::string& field, long lo, long hi) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi)
    throw ConfigError(field, std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

long opt_int(Fields& f, const std::string& key, long def, long lo, long hi) {
  const Json* j = f.find(key);
  return j ? as_int(*j, f.at(key), lo, hi) : def;
}

std::string as_string(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const Json& j, const std::string& field) {
  if (!j.is_boolean()) throw ConfigError(field, "expected true or false");
  return j.get<bool>();
}

const Json& as_array(const Json& j, const std::string& field, long size = -1) {
  if (!j.is_array()) throw ConfigError(field, "expected an array");
  if (size >= 0 && static_cast<long>(j.size()) != size)
    throw ConfigError(field, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  return j;
}

DegVec as_degree(const Json& j, const std::string& field, int d) {
  as_array(j, field, d);
  DegVec n(d);
  for (int i = 0; i < d; ++i) n[i] = static_cast<int>(as_int(j[static_cast<std::size_t>(i)], index(field, i), -1000000, 1000000));
  return n;
}

std::vector<long> as_long_list(const Json& j, const std::string& field, long lo, long hi) {
  as_array(j, field);
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], index(field, i), lo, hi));
  return out;
}

Vec<Rat> rat_vec(const Json& j, const std::string& field, int n) {
  as_array(j, field, n);
  Vec<Rat> v(n);
  for (int i = 0; i < n; ++i) v[i] = rat_from_json(j[static_cast<std::size_t>(i)], index(field, i));
  return v;
}

Vec<Cyc> cyc_vec(const Json& j, const std::string& field, int n) {
  as_array(j, field, n);
  Vec<Cyc> v(n);
  for (int i = 0; i < n; ++i) v[i] = cyc_from_json(j[static_cast<std::size_t>(i)], index(field, i));
  return v;
}

// ---- report encodings

Json deg_json(const DegVec& n) {
  Json out = Json::array();
  for (int i = 0; i < n.size(); ++i) out.push_back(n[i]);
  return out;
}

template <ExactScalar S>
Json vec_json(const Vec<S>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

template <ExactScalar S>
Json elem_json(const AlgElem<S>& x) {
  Json out = Json::array();
  for (const auto& [r, u] : x.terms()) out.push_back(Json{{"u", vec_json(u)}, {"r", deg_json(r)}});
  return out;
}

Json qder_json(const QDerElem& x) {
  Json inner = Json::array(), outer = Json::array();
  for (const auto& [m, c] : x.inner()) inner.push_back(Json{{"m", deg_json(m)}, {"c", to_json(c)}});
  for (const auto& [r, u] : x.outer()) outer.push_back(Json{{"u", vec_json(u)}, {"r", deg_json(r)}});
  return Json{{"inner", inner}, {"outer", outer}};
}

template <ExactScalar S>
Json graded_json(const GradedVec<S>& v) {
  Json out = Json::array();
  for (const auto& [n, w] : v.fibers()) out.push_back(Json{{"n", deg_json(n)}, {"coords", vec_json(w)}});
  return out;
}

Json box_json(const Box& b) { return Json{{"lo", deg_json(b.lo)}, {"hi", deg_json(b.hi)}}; }

Json q_json(const QMatrix& q) {
  Json exps = Json::array();
  for (const auto& row : q.exps()) exps.push_back(row);
  return Json{{"N", q.N()}, {"exps", exps}};
}

/// Counts failures of one property and keeps the first counterexample.
struct Tally {
  std::string name;
  long samples = 0;
  long violations = 0;
  Json first = nullptr;

  void record(bool ok, const std::function<Json()>& example) {
    ++samples;
    if (ok) return;
    if (violations++ == 0) first = example();
  }

  Json json() const {
    Json out{{"name", name}, {"samples", samples}, {"violations", violations}};
    if (violations) out["first_violation"] = first;
    return out;
  }
};

Outcome tally_outcome(const std::vector<Tally>& ts) {
  for (const auto& t : ts)
    if (t.violations) return Outcome::Violation;
  return Outcome::Pass;
}

Json tallies_json(const std::vector<Tally>& ts) {
  Json out = Json::array();
  for (const auto& t : ts) out.push_back(t.json());
  return out;
}

// ---- shared config pieces

const std::set<std::string>& allowed_keys(Command cmd) {
  static const std::map<Command, std::set<std::string>> keys{
      {Command::VerifyAlgebra, {"algebra", "d", "q", "samples", "radius", "terms", "triples"}},
      {Command::VerifyModule,
       {"algebra", "d", "q", "alpha", "rep", "samples", "radius", "terms", "gen_radius", "sign_samples", "box"}},
      {Command::Closure,
       {"algebra", "d", "q", "alpha", "rep", "seeds", "gen_radius", "working_box", "target_box", "max_iters",
        "expect"}},
      {Command::QtorusInfo, {"q", "samples", "radius"}}};
  return keys.at(cmd);
}

void common_fields(Fields& f, const Json& cfg, Command cmd) {
  const auto& keys = allowed_keys(cmd);
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (it.key() != "schema_version" && it.key() != "job" && !keys.count(it.key()))
      throw ConfigError(it.key(), "unknown field");
  if (const Json* v = f.find("schema_version")) {
    const auto s = as_string(*v, "schema_version");
    if (s != "1") throw ConfigError("schema_version", "unsupported version \"" + s + "\" (expected \"1\")");
  }
  if (const Json* v = f.find("job")) {
    const auto s = as_string(*v, "job");
    if (s != to_string(cmd)) throw ConfigError("job", "\"" + s + "\" does not match command " + to_string(cmd));
  }
}

struct AlgSpec {
  bool quantum = false;
  Algebra classical = Algebra::L;
  QAlgebra q = QAlgebra::Lq;
  std::string name;
};

AlgSpec parse_algebra(const Json& j, const std::string& field) {
  const auto s = as_string(j, field);
  if (s == "W") return {false, Algebra::W, QAlgebra::Lq, s};
  if (s == "Lhat") return {false, Algebra::Lhat, QAlgebra::Lq, s};
  if (s == "L") return {false, Algebra::L, QAlgebra::Lq, s};
  if (s == "Der") return {true, Algebra::L, QAlgebra::Der, s};
  if (s == "Lq") return {true, Algebra::L, QAlgebra::Lq, s};
  if (s == "Lqhat") return {true, Algebra::L, QAlgebra::Lqhat, s};
  throw ConfigError(field, "unknown algebra \"" + s + "\" (W, Lhat, L, Der, Lq, Lqhat)");
}

/// Algebra, q and d, checked against each other.
struct Setting {
  AlgSpec alg;
  std::optional<QMatrix> q;
  int d = 0;
};

Setting parse_setting(Fields& f, bool algebra_required) {
  Setting s;
  if (const Json* j = f.find("q")) s.q = q_from_json(*j, "q");
  if (const Json* j = f.find("algebra")) {
    s.alg = parse_algebra(*j, "algebra");
  } else if (algebra_required) {
    throw ConfigError("algebra", "missing required field");
  } else {
    s.alg = parse_algebra(s.q ? "Lq" : "L", "algebra");
  }
  if (s.alg.quantum && !s.q) throw ConfigError("q", "required for algebra " + s.alg.name);
  if (!s.alg.quantum && s.q) throw ConfigError("q", "only valid with algebra Der, Lq or Lqhat");
  if (const Json* j = f.find("d")) {
    s.d = static_cast<int>(as_int(*j, "d", 1, kMaxDim));
    if (s.q && s.q->d() != s.d)
      throw ConfigError("d", std::to_string(s.d) + " does not match q of size " + std::to_string(s.q->d()));
  } else if (s.q) {
    s.d = s.q->d();
  } else {
    throw ConfigError("d", "missing required field");
  }
  return s;
}

ModuleParams parse_module(Fields& f, int d) {
  const Vec<Rat> alpha = rat_vec(f.get("alpha"), "alpha", d);
  return ModuleParams(rep_from_json(f.get("rep"), d, "rep"), alpha);
}

std::vector<GradedVec<Cyc>> parse_seeds(const Json& j, int d, int dim) {
  as_array(j, "seeds");
  if (j.empty()) throw ConfigError("seeds", "at least one seed is required");
  std::vector<GradedVec<Cyc>> out;
  bool any = false;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = index("seeds", i);
    Fields f(j[i], path);
    GradedVec<Cyc> v(d, dim);
    auto term = [&](Fields& t) {
      v.add(as_degree(t.get("n"), t.at("n"), d), cyc_vec(t.get("coords"), t.at("coords"), dim));
    };
    if (f.has("terms")) {
      const Json& terms = as_array(f.get("terms"), f.at("terms"));
      for (std::size_t k = 0; k < terms.size(); ++k) {
        Fields t(terms[k], index(f.at("terms"), k));
        term(t);
        t.finish();
      }
    } else {
      term(f);
    }
    f.finish();
    any = any || !v.is_zero();
    out.push_back(std::move(v));
  }
  if (!any) throw ConfigError("seeds", "every seed is zero");
  return out;
}

std::optional<GradedVec<Rat>> rational(const GradedVec<Cyc>& v) {
  GradedVec<Rat> out(v.d(), v.dim());
  for (const auto& [n, w] : v.fibers()) {
    Vec<Rat> r(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (!w[i].is_rational()) return std::nullopt;
      r[i] = w[i].to_rat();
    }
    out.add(n, r);
  }
  return out;
}

// ---- verify-algebra

bool in_algebra(Algebra a, const AlgElem<Rat>& x) {
  switch (a) {
    case Algebra::W: return true;
    case Algebra::Lhat: return in_Lhat(x);
    case Algebra::L: return in_L(x);
  }
  return false;
}

bool in_algebra(QAlgebra a, const QDerElem& x) {
  switch (a) {
    case QAlgebra::Der: return true;
    case QAlgebra::Lq: return in_Lq(x);
    case QAlgebra::Lqhat: return in_Lqhat(x);
  }
  return false;
}

AlgElem<Rat> parse_elem(const Json& j, const std::string& field, int d) {
  as_array(j, field);
  AlgElem<Rat> x(d);
  for (std::size_t i = 0; i < j.size(); ++i) {
    Fields t(j[i], index(field, i));
    const Vec<Rat> u = rat_vec(t.get("u"), t.at("u"), d);
    x.add(u, as_degree(t.get("r"), t.at("r"), d));
    t.finish();
  }
  return x;
}

Json verify_algebra(const Json& cfg, const RunOptions& opt, Outcome& outcome) {
  Fields f(cfg, "");
  common_fields(f, cfg, Command::VerifyAlgebra);
  const Setting set = parse_setting(f, true);
  const long samples = opt_int(f, "samples", 200, 0, 1000000);
  const int radius = static_cast<int>(opt_int(f, "radius", 3, 0, 100));
  const int terms = static_cast<int>(opt_int(f, "terms", 3, 1, 100));
  std::vector<std::array<AlgElem<Rat>, 3>> given;
  if (const Json* j = f.find("triples")) {
    if (set.alg.quantum) throw ConfigError("triples", "explicit triples are supported for W, Lhat and L only");
    as_array(*j, "triples");
    for (std::size_t t = 0; t < j->size(); ++t) {
      const std::string path = index("triples", t);
      as_array((*j)[t], path, 3);
      std::array<AlgElem<Rat>, 3> xyz;
      for (std::size_t k = 0; k < 3; ++k) {
        xyz[k] = parse_elem((*j)[t][k], index(path, k), set.d);
        if (!in_algebra(set.alg.classical, xyz[k]))
          throw ConfigError(index(path, k), "element is not in " + set.alg.name);
      }
      given.push_back(std::move(xyz));
    }
  }
  f.finish();

  Json out{{"algebra", set.alg.name}, {"d", set.d}};
  Sampler s(opt.seed);
  std::vector<Tally> ts{{"antisymmetry"}, {"jacobi"}, {"subalgebra_closure"}};
  if (!set.alg.quantum) {
    auto check = [&](const AlgElem<Rat>& x, const AlgElem<Rat>& y, const AlgElem<Rat>& z) {
      auto ex = [&] { return Json{{"x", elem_json(x)}, {"y", elem_json(y)}, {"z", elem_json(z)}}; };
      const auto xy = bracket_witt(x, y);
      ts[0].record((xy + bracket_witt(y, x)).is_zero(), ex);
      ts[1].record(jacobi_residual(x, y, z).is_zero(), ex);
      ts[2].record(in_algebra(set.alg.classical, xy) && in_algebra(set.alg.classical, bracket_witt(y, z)) &&
                       in_algebra(set.alg.classical, bracket_witt(z, x)),
                   ex);
    };
    for (const auto& [x, y, z] : given) check(x, y, z);
    for (long t = 0; t < samples; ++t) {
      const auto x = random_element<Rat>(s, set.alg.classical, set.d, radius, terms);
      const auto y = random_element<Rat>(s, set.alg.classical, set.d, radius, terms);
      const auto z = random_element<Rat>(s, set.alg.classical, set.d, radius, terms);
      check(x, y, z);
    }
  } else {
    const QMatrix& q = *set.q;
    out["q"] = q_json(q);
    out["outer_sign"] = to_string(OuterSign::Classical);
    out["outer_sign_formula"] = describe(OuterSign::Classical);
    ts.push_back({"bracket_keys"});
    for (long t = 0; t < samples; ++t) {
      const auto x = random_qder(s, q, set.alg.q, radius, terms);
      const auto y = random_qder(s, q, set.alg.q, radius, terms);
      const auto z = random_qder(s, q, set.alg.q, radius, terms);
      auto ex = [&] { return Json{{"x", qder_json(x)}, {"y", qder_json(y)}, {"z", qder_json(z)}}; };
      const auto xy = bracket_qder(q, x, y);
      ts[0].record((xy + bracket_qder(q, y, x)).is_zero(), ex);
      ts[1].record(jacobi_residual_q(q, x, y, z).is_zero(), ex);
      ts[2].record(in_algebra(set.alg.q, xy) && in_algebra(set.alg.q, bracket_qder(q, y, z)) &&
                       in_algebra(set.alg.q, bracket_qder(q, z, x)),
                   ex);
      bool keys = true;
      try {
        xy.check(q);
      } catch (const QDerKeyError&) {
        keys = false;
      }
      ts[3].record(keys, ex);
    }
  }
  out["checks"] = tallies_json(ts);
  outcome = tally_outcome(ts);
  return out;
}

// ---- verify-module

Json verify_module(const Json& cfg, const RunOptions& opt, Outcome& outcome) {
  Fields f(cfg, "");
  common_fields(f, cfg, Command::VerifyModule);
  const Setting set = parse_setting(f, false);
  const ModuleParams p = parse_module(f, set.d);
  const long samples = opt_int(f, "samples", 200, 0, 1000000);
  const int radius = static_cast<int>(opt_int(f, "radius", 3, 0, 100));
  const int terms = static_cast<int>(opt_int(f, "terms", 2, 1, 100));
  const int gen_radius = static_cast<int>(opt_int(f, "gen_radius", 2, 1, 20));
  const int sign_samples = static_cast<int>(opt_int(f, "sign_samples", 20, 1, 10000));
  const Box box = f.has("box") ? box_from_json(f.get("box"), set.d, "box") : Box::cube(set.d, 1);
  f.finish();

  Json out{{"algebra", set.alg.name}, {"d", set.d}, {"rep", to_string(p.rep.kind())}, {"dim", p.dim()}};
  Sampler s(opt.seed);
  std::vector<Tally> ts;
  if (!set.alg.quantum) {
    Tally axiom{"module_axiom"};
    for (long t = 0; t < samples; ++t) {
      const auto x = random_element<Rat>(s, set.alg.classical, set.d, radius, terms);
      const auto y = random_element<Rat>(s, set.alg.classical, set.d, radius, terms);
      const auto v = random_graded<Rat>(s, set.d, p.dim(), radius, terms);
      axiom.record(module_axiom_residual(p, x, y, v).is_zero(), [&] {
        return Json{{"x", elem_json(x)}, {"y", elem_json(y)}, {"v", graded_json(v)}};
      });
    }
    ts.push_back(axiom);
    if (p.rep.wedge_degree() >= 1 && set.alg.classical != Algebra::W) {
      Tally w{"w_invariance"};
      w.samples = box.size();
      w.violations = w_invariance_violations<Rat>(p, set.alg.classical, gen_radius, box);
      ts.push_back(w);
    }
    if (p.rep.kind() == Rep::Kind::Trivial) {
      const auto split = trivial_split(p);
      out["trivial_split"] = split.irreducible ? Json{{"irreducible", true}}
                                               : Json{{"irreducible", false}, {"point", deg_json(split.point)}};
    }
  } else {
    const QModuleParams qp(*set.q, p);
    out["q"] = q_json(qp.q);
    OuterSign sign = OuterSign::Classical;
    Tally oracle{"outer_sign_oracle"};
    try {
      sign = select_outer_sign(qp, opt.seed, sign_samples);
      oracle.record(true, [] { return Json(); });
    } catch (const std::runtime_error& e) {
      oracle.record(false, [&] { return Json(e.what()); });
    }
    out["outer_sign"] = to_string(sign);
    out["outer_sign_formula"] = describe(sign);
    ts.push_back(oracle);

    Tally axiom{"module_axiom"};
    for (long t = 0; t < samples; ++t) {
      const auto x = random_qder(s, qp.q, set.alg.q, radius, terms);
      const auto y = random_qder(s, qp.q, set.alg.q, radius, terms);
      const auto v = random_graded<Cyc>(s, set.d, p.dim(), radius, terms, qp.q.N());
      axiom.record(module_axiom_residual_q(qp, x, y, v, sign).is_zero(), [&] {
        return Json{{"x", qder_json(x)}, {"y", qder_json(y)}, {"v", graded_json(v)}};
      });
    }
    ts.push_back(axiom);

    Tally cocycle{"cocycle"};
    for (long t = 0; t < samples; ++t) {
      const DegVec m = s.degree(set.d, radius), n = s.degree(set.d, radius), r = s.degree(set.d, radius);
      const QMonomial a{Cyc(1), m}, b{Cyc(1), n}, c{Cyc(1), r};
      cocycle.record(cocycle_identities_residual(qp.q, m, n, r).is_zero() &&
                         torus_mul(qp.q, torus_mul(qp.q, a, b), c) == torus_mul(qp.q, a, torus_mul(qp.q, b, c)),
                     [&] { return Json{{"m", deg_json(m)}, {"n", deg_json(n)}, {"r", deg_json(r)}}; });
    }
    ts.push_back(cocycle);

    if (qp.q.block_orders()) {
      Tally ad{"ad_annihilates_class0"};
      ad.record(ad_annihilation_check(qp, box, gen_radius), [] { return Json(); });
      ts.push_back(ad);
    }
  }
  out["checks"] = tallies_json(ts);
  outcome = tally_outcome(ts);
  return out;
}

// ---- closure

template <ExactScalar S>
Json bases_json(const FiberMap<S>& fibers) {
  Json out = Json::array();
  for (const auto& [n, b] : fibers) {
    if (!b.rank()) continue;
    Json rows = Json::array();
    for (const auto& row : b.rows()) rows.push_back(vec_json(row));
    out.push_back(Json{{"n", deg_json(n)}, {"basis", rows}});
  }
  return out;
}

Json dims_json(const std::map<DegVec, int, DegLess>& dims) {
  Json out = Json::array();
  for (const auto& [n, k] : dims) out.push_back(Json{{"n", deg_json(n)}, {"dim", k}});
  return out;
}

template <ExactScalar S>
Json classical_closure(const ModuleParams& p, const std::vector<GradedVec<S>>& seeds, const ClosureOptions& co,
                       const std::optional<std::string>& expect, Outcome& outcome) {
  const auto res = closure<S>(p, seeds, co);
  Json out{{"algebra", to_string(co.algebra)},
           {"gen_radius", co.gen_radius},
           {"working_box", box_json(co.working)},
           {"target_box", box_json(co.target)},
           {"saturated", res.saturated},
           {"iterations", res.iterations},
           {"history", res.history},
           {"label", res.label ? Json(res.label->str()) : Json(nullptr)},
           {"fiber_dims", dims_json(res.fiber_dims)},
           {"fiber_bases", bases_json(res.fiber_bases)}};
  outcome = Outcome::Pass;
  if (!res.saturated) {
    outcome = Outcome::Violation;
    out["reason"] = "not saturated within max_iters";
  } else if (expect && res.label->str() != *expect) {
    outcome = Outcome::Violation;
    out["reason"] = "label " + res.label->str() + ", expected " + *expect;
  }
  return out;
}

Json closure_job(const Json& cfg, const RunOptions&, Outcome& outcome) {
  Fields f(cfg, "");
  common_fields(f, cfg, Command::Closure);
  const Setting set = parse_setting(f, false);
  const ModuleParams p = parse_module(f, set.d);
  const auto seeds = parse_seeds(f.get("seeds"), set.d, p.dim());
  const int gen_radius = static_cast<int>(opt_int(f, "gen_radius", 2, 1, 20));
  const Box working = f.has("working_box") ? box_from_json(f.get("working_box"), set.d, "working_box")
                                           : Box::cube(set.d, 3);
  const Box target =
      f.has("target_box") ? box_from_json(f.get("target_box"), set.d, "target_box") : Box::cube(set.d, 1);
  const int max_iters = static_cast<int>(opt_int(f, "max_iters", 50, 1, 100000));
  if (!working.contains(target)) throw ConfigError("target_box", "must lie inside working_box");
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (const auto& [n, w] : seeds[i].fibers())
      if (!working.contains(n)) throw ConfigError(index("seeds", i), "degree outside working_box");

  std::optional<std::string> expect_label;
  std::optional<bool> expect_full, expect_class0;
  if (const Json* j = f.find("expect")) {
    Fields e(*j, "expect");
    if (!set.alg.quantum) {
      if (const Json* l = e.find("label")) expect_label = as_string(*l, "expect.label");
    } else {
      if (const Json* g = e.find("g_q_full")) expect_full = as_bool(*g, "expect.g_q_full");
      if (const Json* c = e.find("confined_to_class0")) expect_class0 = as_bool(*c, "expect.confined_to_class0");
    }
    e.finish();
  }
  if (set.q && !set.q->block_orders()) throw ConfigError("q", "closure needs block-normal q");
  f.finish();

  if (!set.alg.quantum) {
    ClosureOptions co{set.alg.classical, gen_radius, working, target, max_iters};
    std::vector<GradedVec<Rat>> rat_seeds;
    for (const auto& v : seeds)
      if (auto r = rational(v)) rat_seeds.push_back(*r);
    if (rat_seeds.size() == seeds.size()) return classical_closure<Rat>(p, rat_seeds, co, expect_label, outcome);
    return classical_closure<Cyc>(p, seeds, co, expect_label, outcome);
  }

  const QModuleParams qp(*set.q, p);
  const QClosureOptions qo{set.alg.q, gen_radius, working, target, max_iters};
  const auto res = closure_q(qp, seeds, qo);
  Json classes = Json::array();
  for (const auto& [cls, dims] : res.class_dims)
    classes.push_back(Json{{"class", deg_json(cls)}, {"fiber_dims", dims_json(dims)}});
  Json out{{"algebra", to_string(qo.algebra)},
           {"q", q_json(qp.q)},
           {"gen_radius", gen_radius},
           {"working_box", box_json(working)},
           {"target_box", box_json(target)},
           {"saturated", res.saturated},
           {"iterations", res.iterations},
           {"history", res.history},
           {"g_q_full", res.g_q_full},
           {"confined_to_class0", res.confined_to_class0},
           {"fiber_dims", dims_json(res.fiber_dims)},
           {"classes", classes},
           {"fiber_bases", bases_json(res.fiber_bases)}};
  outcome = Outcome::Pass;
  std::vector<std::string> reasons;
  if (!res.saturated) reasons.push_back("not saturated within max_iters");
  if (expect_full && res.g_q_full != *expect_full)
    reasons.push_back(std::string("g_q_full is ") + (res.g_q_full ? "true" : "false"));
  if (expect_class0 && res.confined_to_class0 != *expect_class0)
    reasons.push_back(std::string("confined_to_class0 is ") + (res.confined_to_class0 ? "true" : "false"));
  if (!reasons.empty()) {
    outcome = Outcome::Violation;
    std::string r = reasons[0];
    for (std::size_t i = 1; i < reasons.size(); ++i) r += "; " + reasons[i];
    out["reason"] = r;
  }
  return out;
}

// ---- qtorus-info

Json qtorus_info(const Json& cfg, const RunOptions& opt, Outcome& outcome) {
  Fields f(cfg, "");
  common_fields(f, cfg, Command::QtorusInfo);
  const QMatrix q = q_from_json(f.get("q"), "q");
  const long samples = opt_int(f, "samples", 5, 0, 100000);
  const int radius = static_cast<int>(opt_int(f, "radius", 2, 0, 100));
  f.finish();

  Json out{{"d", q.d()}, {"q", q_json(q)}, {"commutative", q.is_commutative()}};
  const auto l = q.block_orders();
  out["block_orders"] = l ? Json(*l) : Json(nullptr);
  const Lattice rad = rad_q(q);
  Json rows = Json::array();
  for (const auto& b : rad) rows.push_back(deg_json(b));
  out["rad_basis"] = rows;

  // rad is upper triangular, so 0 <= n_i < h_ii enumerates Z^d / Rad_q once
  DegVec hi(q.d());
  long count = 1;
  for (int i = 0; i < q.d(); ++i) {
    hi[i] = rad[static_cast<std::size_t>(i)][i] - 1;
    count *= rad[static_cast<std::size_t>(i)][i];
  }
  Json classes{{"count", count}};
  if (count <= kMaxListedClasses) {
    Json reps = Json::array();
    for (const auto& n : Box(DegVec::Zero(q.d()), hi).points()) reps.push_back(deg_json(n));
    classes["representatives"] = reps;
  }
  out["classes"] = classes;

  Sampler s(opt.seed);
  Json table = Json::array();
  Tally cocycle{"cocycle"};
  for (long t = 0; t < samples; ++t) {
    const DegVec m = s.degree(q.d(), radius), n = s.degree(q.d(), radius), r = s.degree(q.d(), radius);
    table.push_back(Json{{"m", deg_json(m)},
                         {"n", deg_json(n)},
                         {"sigma", to_json(sigma(q, m, n))},
                         {"f", to_json(f_form(q, m, n))}});
    cocycle.record(cocycle_identities_residual(q, m, n, r).is_zero(),
                   [&] { return Json{{"m", deg_json(m)}, {"n", deg_json(n)}, {"r", deg_json(r)}}; });
  }
  out["samples"] = table;
  out["checks"] = tallies_json({cocycle});
  outcome = tally_outcome({cocycle});
  return out;
}

// ---- text grids

DegVec deg_from(const Json& j) {
  DegVec n(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) n[static_cast<Eigen::Index>(i)] = j[i].get<int>();
  return n;
}

std::map<DegVec, int, DegLess> dims_from(const Json& j) {
  std::map<DegVec, int, DegLess> out;
  for (const auto& e : j) out[deg_from(e["n"])] = e["dim"].get<int>();
  return out;
}

std::string deg_str(const DegVec& n) {
  std::string s = "(";
  for (int i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

// Columns n1, rows n2 from the top down, one block per value of (n3, ..., nd).
void grid(std::ostream& os, const Box& b, const std::function<std::string(const DegVec&)>& cell) {
  const int d = b.d();
  std::vector<DegVec> slices{DegVec()};
  if (d > 2) slices = Box(b.lo.tail(d - 2), b.hi.tail(d - 2)).points();
  const std::string corner = d == 1 ? "n1" : "n2\\n1";
  int w = 3;
  for (int x = b.lo[0]; x <= b.hi[0]; ++x) w = std::max<int>(w, static_cast<int>(std::to_string(x).size()) + 1);
  for (const auto& rest : slices) {
    if (d > 2) {
      os << "  ";
      for (int i = 0; i < rest.size(); ++i) os << (i ? " " : "") << "n" << i + 3 << "=" << rest[i];
      os << "\n";
    }
    os << "  " << std::setw(7) << corner;
    for (int x = b.lo[0]; x <= b.hi[0]; ++x) os << std::setw(w) << x;
    os << "\n";
    const int ylo = d == 1 ? 0 : b.lo[1], yhi = d == 1 ? 0 : b.hi[1];
    for (int y = yhi; y >= ylo; --y) {
      os << "  " << std::setw(7) << (d == 1 ? std::string() : std::to_string(y));
      for (int x = b.lo[0]; x <= b.hi[0]; ++x) {
        DegVec n(d);
        n[0] = x;
        if (d > 1) n[1] = y;
        if (d > 2) n.tail(d - 2) = rest;
        os << std::setw(w) << cell(n);
      }
      os << "\n";
    }
  }
}

}  // namespace

// ---- public API

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Violation: return "violation";
    case Outcome::Error: return "error";
  }
  return "?";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Violation: return 1;
    case Outcome::Error: return 2;
  }
  return 2;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::VerifyAlgebra: return "verify-algebra";
    case Command::VerifyModule: return "verify-module";
    case Command::Closure: return "closure";
    case Command::QtorusInfo: return "qtorus-info";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (auto c : {Command::VerifyAlgebra, Command::VerifyModule, Command::Closure, Command::QtorusInfo})
    if (to_string(c) == name) return c;
  throw ConfigError("job", "unknown job \"" + name + "\"");
}

Json to_json(const Rat& x) { return x.str(); }

Json to_json(const Cyc& x) {
  const Cyc r = x.reduced();
  if (r.is_rational()) return r.to_rat().str();
  Json coeffs = Json::array();
  for (const auto& c : r.coeffs()) coeffs.push_back(c.str());
  return Json{{"order", r.order()}, {"coeffs", coeffs}};
}

Rat rat_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw ConfigError(field, "expected a rational string \"p/q\"");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
}

Cyc cyc_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) return Cyc(rat_from_json(j, field));
  Fields f(j, field);
  const int order = static_cast<int>(as_int(f.get("order"), f.at("order"), 1, cyc_order_limit()));
  const Json& cs = as_array(f.get("coeffs"), f.at("coeffs"), euler_phi(order));
  std::vector<Rat> coeffs;
  for (std::size_t i = 0; i < cs.size(); ++i) coeffs.push_back(rat_from_json(cs[i], index(f.at("coeffs"), i)));
  f.finish();
  return Cyc(order, std::move(coeffs));
}

Rep rep_from_json(const Json& j, int d, const std::string& field) {
  Fields f(j, field);
  const std::string kind = as_string(f.get("kind"), f.at("kind"));
  auto done = [&](Rep r) {
    f.finish();
    return r;
  };
  try {
    if (kind == "natural") return done(Rep::natural(d));
    if (kind == "trivial") return done(Rep::trivial(d));
    if (kind == "exterior") return done(Rep::exterior(d, static_cast<int>(as_int(f.get("k"), f.at("k"), 1, d))));
    if (kind == "symmetric")
      return done(Rep::symmetric(d, static_cast<int>(as_int(f.get("m"), f.at("m"), 0, 8))));
    if (kind == "twisted") {
      const auto l = as_long_list(f.get("l"), f.at("l"), 1, 1000000);
      if (static_cast<int>(l.size()) != d) throw ConfigError(f.at("l"), "expected " + std::to_string(d) + " entries");
      return done(Rep::twisted(rep_from_json(f.get("inner"), d, f.at("inner")), l));
    }
    if (kind == "tensor") {
      const Json& fs = as_array(f.get("factors"), f.at("factors"));
      if (fs.empty()) throw ConfigError(f.at("factors"), "expected at least one factor");
      std::vector<Rep> factors;
      for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(rep_from_json(fs[i], d, index(f.at("factors"), i)));
      return done(Rep::tensor(factors));
    }
    if (kind == "cyclic") {
      const Rep parent = rep_from_json(f.get("parent"), d, f.at("parent"));
      return done(Rep::cyclic(parent, rat_vec(f.get("seed"), f.at("seed"), parent.dim())));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(f.at("kind"), "unknown rep kind \"" + kind + "\"");
}

QMatrix q_from_json(const Json& j, const std::string& field) {
  Fields f(j, field);
  if (f.has("l") == (f.has("N") || f.has("exps")))
    throw ConfigError(field, "give either \"l\" or both \"N\" and \"exps\"");
  try {
    if (f.has("l")) {
      const auto l = as_long_list(f.get("l"), f.at("l"), 1, cyc_order_limit());
      if (l.empty() || static_cast<int>(l.size()) > kMaxDim) throw ConfigError(f.at("l"), "expected 1 to 8 entries");
      f.finish();
      return block_normal_q(l);
    }
    const int N = static_cast<int>(as_int(f.get("N"), f.at("N"), 1, cyc_order_limit()));
    const Json& rows = as_array(f.get("exps"), f.at("exps"));
    if (rows.empty() || static_cast<int>(rows.size()) > kMaxDim)
      throw ConfigError(f.at("exps"), "expected 1 to 8 rows");
    IntMatrix k;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string path = index(f.at("exps"), i);
      as_array(rows[i], path, static_cast<long>(rows.size()));
      k.push_back(as_long_list(rows[i], path, -1000000, 1000000));
    }
    f.finish();
    return QMatrix(N, k);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

Box box_from_json(const Json& j, int d, const std::string& field) {
  if (j.is_number_integer()) return Box::cube(d, static_cast<int>(as_int(j, field, 0, 1000)));
  Fields f(j, field);
  Box b;
  if (f.has("radius")) {
    const int r = static_cast<int>(as_int(f.get("radius"), f.at("radius"), 0, 1000));
    const DegVec c = f.has("center") ? as_degree(f.get("center"), f.at("center"), d) : DegVec(DegVec::Zero(d));
    b = Box::cube(d, r, c);
  } else {
    const DegVec lo = as_degree(f.get("lo"), f.at("lo"), d), hi = as_degree(f.get("hi"), f.at("hi"), d);
    if ((lo.array() > hi.array()).any()) throw ConfigError(field, "lo exceeds hi");
    b = Box(lo, hi);
  }
  f.finish();
  return b;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
}

Report run(Command cmd, const Json& config, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  Report r{cmd, Outcome::Pass, Json{{"job", to_string(cmd)}, {"seed", opt.seed}, {"outcome", nullptr}}};
  Json details;
  switch (cmd) {
    case Command::VerifyAlgebra: details = verify_algebra(config, opt, r.outcome); break;
    case Command::VerifyModule: details = verify_module(config, opt, r.outcome); break;
    case Command::Closure: details = closure_job(config, opt, r.outcome); break;
    case Command::QtorusInfo: details = qtorus_info(config, opt, r.outcome); break;
  }
  r.body["outcome"] = to_string(r.outcome);
  r.body["config"] = config;
  for (auto it = details.begin(); it != details.end(); ++it) r.body[it.key()] = it.value();
  if (opt.timing)
    r.body["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return r;
}

Report error_report(Command cmd, const std::string& message, const RunOptions& opt) {
  return {cmd, Outcome::Error,
          Json{{"job", to_string(cmd)}, {"seed", opt.seed}, {"outcome", to_string(Outcome::Error)}, {"error", message}}};
}

std::string render_json(const Report& r) { return r.body.dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream os;
  const Json& b = r.body;
  os << to_string(r.command) << ": " << to_string(r.outcome) << "\n";
  if (r.outcome == Outcome::Error || r.command != Command::Closure) {
    if (b.contains("error")) os << "error: " << b["error"].get<std::string>() << "\n";
    if (r.command != Command::Closure) os << b.dump(2) << "\n";
    return os.str();
  }
  os << "algebra " << b["algebra"].get<std::string>() << ", iterations " << b["iterations"].get<int>()
     << (b["saturated"].get<bool>() ? ", saturated" : ", NOT saturated");
  if (b.contains("label") && !b["label"].is_null()) os << ", label " << b["label"].get<std::string>();
  if (b.contains("g_q_full"))
    os << ", g_q_full " << (b["g_q_full"].get<bool>() ? "yes" : "no") << ", confined_to_class0 "
       << (b["confined_to_class0"].get<bool>() ? "yes" : "no");
  os << "\n";
  if (b.contains("reason")) os << "reason: " << b["reason"].get<std::string>() << "\n";
  const Box target(deg_from(b["target_box"]["lo"]), deg_from(b["target_box"]["hi"]));
  const auto dims = dims_from(b["fiber_dims"]);
  if (!b.contains("classes")) {
    os << "fiber dimensions over the target box\n";
    grid(os, target, [&](const DegVec& n) { return std::to_string(dims.at(n)); });
    return os.str();
  }
  for (const auto& c : b["classes"]) {
    const auto cd = dims_from(c["fiber_dims"]);
    os << "class " << deg_str(deg_from(c["class"])) << "\n";
    grid(os, target, [&](const DegVec& n) {
      auto it = cd.find(n);
      return it == cd.end() ? std::string(".") : std::to_string(it->second);
    });
  }
  return os.str();
}

}  // namespace divzero::jobs
