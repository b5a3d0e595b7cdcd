#include "divzero/graded.hpp"
#include "divzero/qtorus.hpp"
#include "divzero/random.hpp"

#include "doctest.h"

using namespace divzero;

namespace {

const QMatrix q3(3, {{0, -1}, {1, 0}});
const Cyc z3 = Cyc::root_of_unity(3, 1);

Cyc power(const Cyc& x, long e) {
  Cyc out(1);
  const Cyc base = e < 0 ? x.inverse() : x;
  for (long i = 0; i < std::abs(e); ++i) out *= base;
  return out;
}

// products of the entries q_ji taken literally
Cyc sigma_oracle(const QMatrix& q, const DegVec& m, const DegVec& n) {
  Cyc out(1);
  for (int i = 0; i < q.d(); ++i)
    for (int j = i + 1; j < q.d(); ++j) out *= power(q.entry(j, i), static_cast<long>(m[j]) * n[i]);
  return out;
}

Cyc f_oracle(const QMatrix& q, const DegVec& m, const DegVec& n) {
  Cyc out(1);
  for (int i = 0; i < q.d(); ++i)
    for (int j = 0; j < q.d(); ++j) out *= power(q.entry(j, i), static_cast<long>(m[j]) * n[i]);
  return out;
}

// membership in the row lattice of an upper-triangular basis by back substitution
bool lattice_contains(const Lattice& hnf, DegVec n) {
  for (std::size_t c = 0; c < hnf.size(); ++c) {
    const int p = hnf[c][static_cast<Eigen::Index>(c)];
    if (n[static_cast<Eigen::Index>(c)] % p != 0) return false;
    n -= hnf[c] * (n[static_cast<Eigen::Index>(c)] / p);
  }
  return n.isZero();
}

Lattice diag_lattice(const std::vector<long>& l) {
  Lattice out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    DegVec v = DegVec::Zero(static_cast<Eigen::Index>(l.size()));
    v[static_cast<Eigen::Index>(i)] = static_cast<int>(l[i]);
    out.push_back(v);
  }
  return out;
}

bool same_lattice(const Lattice& a, const Lattice& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!deg_equal(a[i], b[i])) return false;
  return true;
}

std::vector<QMatrix> sample_qs() {
  return {q3, block_normal_q({2, 2}), block_normal_q({3, 3}), block_normal_q({2, 2, 1}),
          QMatrix(6, {{0, 1, 3}, {-1, 0, 2}, {3, -2, 0}}), QMatrix(4, {{0, 2}, {2, 0}})};
}

}  // namespace

TEST_CASE("QMatrix validation") {
  CHECK_THROWS_AS(QMatrix(3, {{1, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(QMatrix(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(QMatrix(0, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(QMatrix(3, {{0, 1}}), std::invalid_argument);
  CHECK_NOTHROW(QMatrix(3, {{0, 2}, {1, 0}}));
  CHECK(q3.entry(1, 0) == z3);
}

TEST_CASE("sigma and f examples") {
  CHECK(sigma(q3, deg({0, 1}), deg({1, 0})) == z3);
  CHECK(sigma(q3, deg({1, 0}), deg({0, 1})) == Cyc(1));
  CHECK(sigma(q3, deg({4, -2}), deg({0, 0})) == Cyc(1));
  CHECK(f_form(q3, deg({0, 1}), deg({1, 0})) == z3);
  CHECK(f_form(q3, deg({0, 0}), deg({2, 5})) == Cyc(1));
  CHECK_THROWS_AS(sigma(q3, deg({0, 1, 0}), deg({1, 0})), std::invalid_argument);
  Sampler s(1);
  for (const auto& q : sample_qs())
    for (int t = 0; t < 30; ++t) {
      const DegVec m = s.degree(q.d(), 4), n = s.degree(q.d(), 4);
      CHECK(sigma(q, m, n) == sigma_oracle(q, m, n));
      CHECK(f_form(q, m, n) == f_oracle(q, m, n));
      CHECK(f_form(q, m, m) == Cyc(1));
    }
}

TEST_CASE("torus multiplication and commutators") {
  const QMonomial a{Cyc(1), deg({0, 1})}, b{Cyc(1), deg({1, 0})};
  CHECK(torus_mul(q3, a, b) == QMonomial{z3, deg({1, 1})});
  const QMonomial one{Cyc(1), deg({0, 0})};
  CHECK(torus_mul(q3, one, a) == a);
  const DegVec n = deg({2, -1});
  CHECK(torus_mul(q3, {Cyc(1), n}, {Cyc(1), DegVec(-n)}) == QMonomial{sigma(q3, n, -n), deg({0, 0})});
  CHECK(torus_commutator(q3, deg({0, 1}), deg({1, 0})) == QMonomial{z3 - Cyc(1), deg({1, 1})});
  CHECK(torus_commutator(q3, n, n).is_zero());
  CHECK(torus_commutator(q3, n, deg({3, -6})).is_zero());

  Sampler s(2);
  for (const auto& q : sample_qs())
    for (int t = 0; t < 50; ++t) {
      const QMonomial x{s.cyc(q.N()), s.degree(q.d(), 3)};
      const QMonomial y{s.cyc(q.N()), s.degree(q.d(), 3)};
      const QMonomial z{s.cyc(q.N()), s.degree(q.d(), 3)};
      CHECK(torus_mul(q, torus_mul(q, x, y), z) == torus_mul(q, x, torus_mul(q, y, z)));
      CHECK(cocycle_identities_residual(q, x.n, y.n, z.n).is_zero());
      CHECK(cocycle_identities_residual(q, DegVec::Zero(q.d()), y.n, z.n).is_zero());
    }
  const QMatrix comm = block_normal_q({1, 1});
  CHECK(comm.is_commutative());
  CHECK(cocycle_identities_residual(comm, deg({1, 2}), deg({3, 4}), deg({5, 6})).is_zero());
}

TEST_CASE("block_normal_q") {
  const auto q = block_normal_q({2, 2});
  CHECK(q.N() == 2);
  CHECK(q.exps() == IntMatrix{{0, 1}, {-1, 0}});
  CHECK(block_normal_q({1, 1, 1}).is_commutative());
  const auto q33 = block_normal_q({3, 3, 1});
  CHECK(q33.N() == 3);
  CHECK(q33.exps() == IntMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}});
  CHECK_THROWS_AS(block_normal_q({2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(block_normal_q({2, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(block_normal_q({0, 0}), std::invalid_argument);
  CHECK(*block_normal_q({6, 6, 2, 2}).block_orders() == std::vector<long>{6, 6, 2, 2});
  CHECK(*QMatrix(3, {{0, 2}, {1, 0}}).block_orders() == std::vector<long>{3, 3});
  CHECK_FALSE(QMatrix(6, {{0, 1, 3}, {-1, 0, 2}, {3, -2, 0}}).block_orders().has_value());
}

TEST_CASE("smith_kernel_mod and rad_q") {
  CHECK(same_lattice(smith_kernel_mod({{0, 0}, {0, 0}}, 5), diag_lattice({1, 1})));
  CHECK(same_lattice(smith_kernel_mod({{4, 0}, {0, 4}}, 4), diag_lattice({1, 1})));
  CHECK(same_lattice(smith_kernel_mod({{0, -1}, {1, 0}}, 3), diag_lattice({3, 3})));
  CHECK(same_lattice(rad_q(q3), diag_lattice({3, 3})));
  CHECK(same_lattice(rad_q(block_normal_q({1, 1, 1})), diag_lattice({1, 1, 1})));
  for (const auto& l : std::vector<std::vector<long>>{{2, 2}, {3, 3}, {2, 2, 1}, {6, 6}, {4, 4, 3, 3}})
    CHECK(same_lattice(rad_q(block_normal_q(l)), diag_lattice(l)));
  // k = (2, 4) mod 6: 2a + 4b = 0 mod 6 <=> a + 2b = 0 mod 3
  const auto lat = smith_kernel_mod({{2, 4}}, 6);
  CHECK(same_lattice(lat, {deg({1, 1}), deg({0, 3})}));
}

TEST_CASE("rad_q agrees with brute force membership") {
  for (const auto& q : sample_qs()) {
    const auto lat = rad_q(q);
    for (const auto& n : Box::cube(q.d(), 6 / q.d() + 1).points()) {
      bool oracle = true;
      for (int i = 0; i < q.d(); ++i) oracle = oracle && f_oracle(q, n, DegVec::Unit(q.d(), i)) == Cyc(1);
      CHECK(lattice_contains(lat, n) == oracle);
      CHECK(in_rad(q, n) == oracle);
    }
  }
}

TEST_CASE("commutators span exactly the non-radical degrees") {
  for (const auto& q : sample_qs()) {
    for (const auto& n : Box::cube(q.d(), 2).points()) {
      bool hit = false;
      for (const auto& m : Box::cube(q.d(), 3).points())
        hit = hit || !torus_commutator(q, m, n - m).is_zero();
      CHECK(hit == !in_rad(q, n));
    }
  }
}
