#include "divzero/linalg.hpp"
#include "divzero/sampling.hpp"
#include "divzero/witt.hpp"

#include "doctest.h"

using namespace divzero;

namespace {

Vec<Rat> v(std::initializer_list<long> xs) {
  Vec<Rat> out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) out[i++] = Rat(x);
  return out;
}

AlgElem<Rat> D(std::initializer_list<long> u, std::initializer_list<int> r) {
  return AlgElem<Rat>::term(v(u), deg(r));
}

}  // namespace

TEST_CASE("bracket examples") {
  CHECK(bracket_witt(D({1, 0}, {0, 1}), D({0, 1}, {1, 0})) == D({-1, 1}, {1, 1}));
  CHECK(bracket_witt(D({1, 2}, {0, 0}), D({3, -1}, {0, 0})).is_zero());
  Sampler s(1);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_element<Rat>(s, Algebra::W, 3, 2, 3);
    CHECK(bracket_witt(x, x).is_zero());
  }
  CHECK_THROWS_AS(bracket_witt(D({1, 0}, {0, 1}), D({1, 0, 0}, {0, 0, 1})), std::invalid_argument);
}

TEST_CASE("AlgElem combines like degrees and drops zeros") {
  auto x = D({1, 0}, {1, 1}) + D({-1, 0}, {1, 1});
  CHECK(x.is_zero());
  auto y = D({1, 0}, {1, 1}) + D({0, 2}, {1, 1});
  CHECK(y.terms().size() == 1);
  CHECK(equal(y.at(deg({1, 1})), v({1, 2})));
  CHECK((y * Rat(0)).is_zero());
}

TEST_CASE("d_basis") {
  const auto t = d_basis<Rat>(deg({1, 2}), 0);
  CHECK(equal(t.u, v({2, -1})));
  CHECK(dot(t.u, to_scalar<Rat>(t.r)).is_zero());
  CHECK(d_basis<Rat>(deg({0, 0, 0}), 1).elem().is_zero());
  CHECK(equal(d_basis<Rat>(deg({1, 0, 1}), 1).u, v({0, 1, 0})));
  CHECK_THROWS_AS(d_basis<Rat>(deg({1, 2}), 1), std::out_of_range);
  CHECK_THROWS_AS(d_basis<Rat>(deg({1, 2}), -1), std::out_of_range);
}

TEST_CASE("d_basis u-vectors span the divergence-free hyperplane when r has no zero entry") {
  for (int d = 2; d <= 4; ++d) {
    Sampler s(static_cast<std::uint64_t>(d));
    for (int t = 0; t < 30; ++t) {
      DegVec r = s.degree(d, 3);
      if (r.isZero()) continue;
      std::vector<Vec<Rat>> us;
      for (int i = 0; i + 1 < d; ++i) {
        us.push_back(d_basis<Rat>(r, i).u);
        CHECK(dot(us.back(), to_scalar<Rat>(r)).is_zero());
      }
      const int rank = rank_of<Rat>(d, us);
      CHECK(rank <= d - 1);
      if ((r.array() != 0).all()) CHECK(rank == d - 1);
    }
  }
  // with adjacent zeros the adjacent-pair vectors are degenerate: r = (1,0,0) gives only -e_2
  std::vector<Vec<Rat>> us{d_basis<Rat>(deg({1, 0, 0}), 0).u, d_basis<Rat>(deg({1, 0, 0}), 1).u};
  CHECK(rank_of<Rat>(3, us) == 1);
}

TEST_CASE("membership predicates") {
  CHECK(in_L(D({2, -1}, {1, 2})));
  CHECK(in_Lhat(D({1, 0}, {0, 0})));
  CHECK_FALSE(in_L(D({1, 0}, {0, 0})));
  CHECK_FALSE(in_Lhat(D({1, 0}, {1, 0})));
  CHECK_FALSE(in_L(D({1, 0}, {1, 0})));
  CHECK(in_L(AlgElem<Rat>(2)));
}

TEST_CASE("subalgebra closure") {
  for (int d = 2; d <= 4; ++d) {
    Sampler s(100 + d);
    for (int t = 0; t < 30; ++t) {
      const auto x = random_element<Rat>(s, Algebra::Lhat, d, 3, 3);
      const auto y = random_element<Rat>(s, Algebra::Lhat, d, 3, 3);
      REQUIRE(in_Lhat(x));
      CHECK(in_Lhat(bracket_witt(x, y)));
      const auto a = random_element<Rat>(s, Algebra::L, d, 3, 3);
      const auto b = random_element<Rat>(s, Algebra::L, d, 3, 3);
      REQUIRE(in_L(a));
      CHECK(in_L(bracket_witt(a, b)));
    }
  }
}

TEST_CASE("lemma_orthg") {
  CHECK(equal(lemma_orthg<Rat>(deg({2, 3}), deg({1, 0}), v({0, 1})), v({-3, 2})));
  CHECK(is_zero(lemma_orthg<Rat>(deg({2, 3}), deg({1, 0}), v({0, 0}))));
  CHECK_THROWS_AS(lemma_orthg<Rat>(deg({2, 3}), deg({0, 0}), v({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(lemma_orthg<Rat>(deg({2, 3}), deg({1, 0}), v({1, 1})), std::invalid_argument);

  for (int d = 2; d <= 4; ++d) {
    Sampler s(40 + d);
    for (int t = 0; t < 40; ++t) {
      DegVec n = s.degree(d, 3);
      if (n.isZero()) continue;
      const DegVec m = s.degree(d, 3);
      const Vec<Rat> u = project_divergence_free(s.vec<Rat>(d), n);
      const Vec<Rat> up = lemma_orthg<Rat>(m, n, u);
      CHECK(dot(up, to_scalar<Rat>(m)).is_zero());
      // m = n reproduces u
      CHECK(equal(lemma_orthg<Rat>(n, n, u), u));
      for (long x : {-2L, -1L, 0L, 1L, 3L}) {
        const Vec<Rat> lhs = up - u * Rat(x);
        const DegVec rhs = m - n * static_cast<int>(x);
        CHECK(dot(lhs, to_scalar<Rat>(rhs)).is_zero());
      }
    }
  }
}

TEST_CASE("jacobi") {
  CHECK(jacobi_residual(D({1, 0}, {1, 0}), D({0, 1}, {0, 1}), D({1, 1}, {1, 1})).is_zero());
  const auto a = D({1, 2}, {1, -1});
  CHECK(jacobi_residual(a, a, D({0, 1}, {2, 0})).is_zero());
  for (int d = 2; d <= 3; ++d) {
    Sampler s(7 * d);
    for (int t = 0; t < 30; ++t) {
      const auto x = random_element<Rat>(s, Algebra::W, d, 3, 2);
      const auto y = random_element<Rat>(s, Algebra::W, d, 3, 2);
      const auto z = random_element<Rat>(s, Algebra::W, d, 3, 2);
      CHECK(jacobi_residual(x, y, z).is_zero());
      CHECK((bracket_witt(x, y) + bracket_witt(y, x)).is_zero());
    }
  }
}
