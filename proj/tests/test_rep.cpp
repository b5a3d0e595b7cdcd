#include "divzero/random.hpp"
#include "divzero/rep.hpp"

#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

using namespace divzero;

namespace {

Vec<Rat> basis_vec(int dim, int i) {
  Vec<Rat> v = zeros<Rat>(dim);
  v[i] = 1;
  return v;
}

int index_of(const Rep& rep, const std::string& label) {
  const auto& ls = rep.basis_labels();
  const auto it = std::find(ls.begin(), ls.end(), label);
  REQUIRE(it != ls.end());
  return static_cast<int>(it - ls.begin());
}

std::vector<Rep> sample_reps() {
  const Rep nat3 = Rep::natural(3);
  return {Rep::natural(2),
          Rep::natural(3),
          Rep::exterior(3, 2),
          Rep::exterior(4, 2),
          Rep::symmetric(2, 2),
          Rep::symmetric(3, 2),
          Rep::trivial(3),
          Rep::tensor({Rep::exterior(3, 2), nat3}),
          Rep::cyclic(Rep::tensor({Rep::exterior(3, 2), nat3}),
                      basis_vec(9, 0)),  // e1^e2 (x) e1 generates the adjoint
          Rep::twisted(Rep::exterior(3, 2), {2, 3, 1})};
}

// Oracle embedding of wedge^k / Sym^m into the k-fold tensor power of the natural
// module, via (anti)symmetrization over all permutations.
Vec<Rat> embed_power(const std::vector<int>& idx, int d, bool antisym) {
  const int k = static_cast<int>(idx.size());
  int dim = 1;
  for (int i = 0; i < k; ++i) dim *= d;
  Vec<Rat> out = zeros<Rat>(dim);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int sign = 1;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (perm[a] > perm[b]) sign = -sign;
    int pos = 0;
    for (int a = 0; a < k; ++a) pos = pos * d + idx[perm[a]];
    out[pos] += Rat(antisym ? sign : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("matrix unit action examples") {
  // E_12 e_2 = e_1
  const Rep nat = Rep::natural(2);
  CHECK(equal(act_E(nat, 0, 1, basis_vec(2, 1)), basis_vec(2, 0)));

  const Rep ext = Rep::exterior(3, 2);
  const Vec<Rat> e12 = basis_vec(3, index_of(ext, "e1^e2"));
  // E_31 (e1^e2) = e3^e2 = -e2^e3
  Vec<Rat> expected = zeros<Rat>(3);
  expected[index_of(ext, "e2^e3")] = -1;
  CHECK(equal(act_E(ext, 2, 0, e12), expected));
  // E_12 (e1^e2) = e1^e1 = 0
  CHECK(is_zero(act_E(ext, 0, 1, e12)));
  CHECK_THROWS_AS(act_E(ext, 3, 0, e12), std::out_of_range);
  CHECK_THROWS_AS(act_E(ext, 0, 0, basis_vec(2, 0)), std::invalid_argument);
}

TEST_CASE("dimensions and labels") {
  CHECK(Rep::exterior(4, 2).dim() == 6);
  CHECK(Rep::symmetric(3, 2).dim() == 6);
  CHECK(Rep::symmetric(2, 3).dim() == 4);
  CHECK(Rep::trivial(3).dim() == 1);
  CHECK(Rep::exterior(3, 2).basis_labels() == std::vector<std::string>{"e1^e2", "e1^e3", "e2^e3"});
  CHECK(Rep::symmetric(2, 2).basis_labels() == std::vector<std::string>{"e1*e1", "e1*e2", "e2*e2"});
  CHECK(Rep::tensor({Rep::natural(2), Rep::natural(2)}).dim() == 4);
  CHECK(Rep::cyclic(Rep::tensor({Rep::exterior(3, 2), Rep::natural(3)}), basis_vec(9, 0)).dim() ==
        8);
  CHECK_THROWS(Rep::exterior(1, 1));
  CHECK_THROWS(Rep::exterior(3, 4));
  CHECK_THROWS(Rep::twisted(Rep::natural(2), {1, 0}));
}

TEST_CASE("act_matrix") {
  const Rep ext = Rep::exterior(3, 2);
  Mat<Rat> id = Mat<Rat>::Constant(3, 3, Rat(0));
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  const Vec<Rat> e12 = basis_vec(3, 0);
  CHECK(equal(act_matrix(ext, id, e12), Vec<Rat>(e12 * Rat(2))));
  CHECK(is_zero(act_matrix(ext, Mat<Rat>(Mat<Rat>::Constant(3, 3, Rat(0))), e12)));

  const Rep nat = Rep::natural(2);
  Mat<Rat> swap = Mat<Rat>::Constant(2, 2, Rat(0));
  swap(0, 1) = swap(1, 0) = 1;
  CHECK(equal(act_matrix(nat, swap, basis_vec(2, 0)), basis_vec(2, 1)));
  CHECK_THROWS_AS(act_matrix(nat, id, basis_vec(2, 0)), std::invalid_argument);

  // act_outer agrees with act_matrix on r u^T
  Sampler s(5);
  for (int t = 0; t < 10; ++t) {
    const Vec<Rat> r = s.vec<Rat>(3), u = s.vec<Rat>(3), v = s.vec<Rat>(3);
    const Mat<Rat> b = r * u.transpose();
    CHECK(equal(act_outer(ext, r, u, v), act_matrix(ext, b, v)));
  }
}

TEST_CASE("representation property for every kind") {
  Sampler s(17);
  for (const auto& rep : sample_reps()) {
    CAPTURE(to_string(rep.kind()));
    CAPTURE(rep.dim());
    const int d = rep.d();
    for (int trial = 0; trial < 3; ++trial) {
      const Vec<Rat> v = s.vec<Rat>(rep.dim());
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
              Vec<Rat> lhs = act_E(rep, i, j, act_E(rep, k, l, v)) -
                             act_E(rep, k, l, act_E(rep, i, j, v));
              Vec<Rat> rhs = zeros<Rat>(rep.dim());
              if (j == k) rhs += act_E(rep, i, l, v);
              if (l == i) rhs -= act_E(rep, k, j, v);
              CHECK(equal(lhs, rhs));
            }
    }
  }
}

TEST_CASE("exterior and symmetric powers match (anti)symmetrized tensors") {
  struct Case { int d, k; bool antisym; };
  for (const auto& c : {Case{3, 2, true}, Case{4, 2, true}, Case{4, 3, true}, Case{2, 2, false},
                        Case{3, 2, false}, Case{2, 3, false}}) {
    const Rep power = c.antisym ? Rep::exterior(c.d, c.k) : Rep::symmetric(c.d, c.k);
    std::vector<Rep> nats(c.k, Rep::natural(c.d));
    const Rep tens = Rep::tensor(nats);
    const auto idx = c.antisym ? k_subsets(c.d, c.k) : multisets(c.d, c.k);
    for (int a = 0; a < power.dim(); ++a)
      for (int i = 0; i < c.d; ++i)
        for (int j = 0; j < c.d; ++j) {
          const Vec<Rat> img = act_E(power, i, j, basis_vec(power.dim(), a));
          Vec<Rat> lhs = zeros<Rat>(tens.dim());
          for (int b = 0; b < power.dim(); ++b)
            if (!img[b].is_zero()) lhs += embed_power(idx[b], c.d, c.antisym) * img[b];
          const Vec<Rat> rhs = act_E(tens, i, j, embed_power(idx[a], c.d, c.antisym));
          CHECK(equal(lhs, rhs));
        }
  }
}

TEST_CASE("weights") {
  const Rep ext = Rep::exterior(3, 2);
  CHECK(weight(ext, index_of(ext, "e1^e3")) == std::vector<Rat>{1, 0, 1});
  CHECK(weight(Rep::natural(3), 0) == std::vector<Rat>{1, 0, 0});
  CHECK(weight(Rep::trivial(3), 0) == std::vector<Rat>{0, 0, 0});
  CHECK(weight(Rep::symmetric(2, 2), 1) == std::vector<Rat>{1, 1});
  CHECK_THROWS_AS(weight(ext, 3), std::out_of_range);

  // E_ij maps weight mu into weight mu + eps_i - eps_j
  for (const auto& rep : {ext, Rep::symmetric(3, 2), Rep::exterior(4, 2)}) {
    for (int a = 0; a < rep.dim(); ++a)
      for (int i = 0; i < rep.d(); ++i)
        for (int j = 0; j < rep.d(); ++j) {
          const Vec<Rat> img = act_E(rep, i, j, basis_vec(rep.dim(), a));
          auto mu = weight(rep, a);
          mu[i] += 1;
          mu[j] -= 1;
          for (int b = 0; b < rep.dim(); ++b)
            if (!img[b].is_zero()) CHECK(weight(rep, b) == mu);
        }
  }
}

TEST_CASE("highest weight vectors") {
  for (const auto& rep : {Rep::exterior(3, 2), Rep::natural(3), Rep::symmetric(2, 2),
                          Rep::symmetric(3, 3), Rep::trivial(2),
                          Rep::twisted(Rep::exterior(3, 2), {2, 2, 1})}) {
    const Vec<Rat> h = highest_weight_vector(rep);
    CHECK_FALSE(is_zero(h));
    for (int i = 0; i + 1 < rep.d(); ++i) CHECK(is_zero(act_E(rep, i, i + 1, h)));
  }
  CHECK(equal(highest_weight_vector(Rep::exterior(3, 2)), basis_vec(3, 0)));  // e1^e2
  CHECK(equal(highest_weight_vector(Rep::symmetric(2, 2)), basis_vec(3, 0)));  // e1*e1
  CHECK_THROWS_AS(highest_weight_vector(Rep::tensor({Rep::natural(2), Rep::natural(2)})),
                  std::invalid_argument);
}

TEST_CASE("cyclic closure") {
  Sampler s(3);
  for (const auto& rep : {Rep::exterior(3, 2), Rep::exterior(4, 2), Rep::natural(3),
                          Rep::symmetric(2, 2), Rep::symmetric(3, 2)}) {
    for (int t = 0; t < 5; ++t) {
      Vec<Rat> seed = s.vec<Rat>(rep.dim());
      if (is_zero(seed)) continue;
      CHECK(cyclic_closure(rep, seed).rank() == rep.dim());
    }
    for (int a = 0; a < rep.dim(); ++a)
      CHECK(cyclic_closure(rep, basis_vec(rep.dim(), a)).rank() == rep.dim());
  }
  CHECK(cyclic_closure(Rep::trivial(3), basis_vec(1, 0)).rank() == 1);
  // Sym^2 C^2 from e1*e2
  CHECK(cyclic_closure(Rep::symmetric(2, 2), basis_vec(3, 1)).rank() == 3);
  // C^2 (x) C^2 = Sym^2 + wedge^2: the antisymmetric vector spans a 1-dim submodule
  Vec<Rat> anti = zeros<Rat>(4);
  anti[1] = 1;
  anti[2] = -1;
  CHECK(cyclic_closure(Rep::tensor({Rep::natural(2), Rep::natural(2)}), anti).rank() == 1);
  CHECK_THROWS_AS(cyclic_closure(Rep::natural(2), zeros<Rat>(2)), std::invalid_argument);
}

TEST_CASE("twist conjugates the parent action") {
  Sampler s(8);
  const std::vector<long> l{2, 3, 5};
  for (const auto& parent : {Rep::natural(3), Rep::exterior(3, 2), Rep::symmetric(3, 2)}) {
    const Rep tw = Rep::twisted(parent, l);
    Mat<Rat> lm = Mat<Rat>::Constant(3, 3, Rat(0)), lmi = lm;
    for (int i = 0; i < 3; ++i) {
      lm(i, i) = Rat(l[i]);
      lmi(i, i) = Rat(BigInt(1), BigInt(l[i]));
    }
    for (int t = 0; t < 5; ++t) {
      Mat<Rat> b(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = s.rat();
      const Vec<Rat> v = s.vec<Rat>(parent.dim());
      const Mat<Rat> conj = lm * b * lmi;
      CHECK(equal(act_matrix(tw, b, v), act_matrix(parent, conj, v)));
    }
  }
}
