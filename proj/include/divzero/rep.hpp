#pragma once

#include "divzero/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace divzero {

/// One nonzero entry of a sparse rational matrix.
struct SparseEntry {
  int row;
  int col;
  Rat value;
};
using SparseRat = std::vector<SparseEntry>;

/// Finite-dimensional gl_d-module given by the action matrices of all E_ij.
///
/// Indices are 0-based: E(i, j) is the matrix unit with 1 in row i, column j,
/// i.e. E_{i+1,j+1} in the usual 1-based notation. A Rep is an immutable
/// handle and is cheap to copy.
class Rep {
 public:
  enum class Kind { Natural, Exterior, Symmetric, Tensor, Cyclic, Trivial, Twisted };

  static Rep natural(int d);
  /// k-th exterior power; basis e_S for sorted k-subsets S, ordered lexicographically.
  static Rep exterior(int d, int k);
  /// m-th symmetric power; basis monomials as sorted multisets, lexicographic.
  static Rep symmetric(int d, int m);
  /// One-dimensional module on which every E_ij acts as zero.
  static Rep trivial(int d);
  static Rep tensor(const std::vector<Rep>& factors);
  /// Submodule generated by seed, with its RREF basis as the new basis.
  static Rep cyclic(const Rep& parent, const Vec<Rat>& seed);
  /// V^(l): B acts as L B L^{-1} on the parent, L = diag(l).
  static Rep twisted(const Rep& parent, const std::vector<long>& l);

  int d() const { return node_->d; }
  int dim() const { return node_->dim; }
  Kind kind() const { return node_->kind; }
  /// k for exterior, m for symmetric, 0 otherwise.
  int degree() const { return node_->degree; }
  const std::vector<std::string>& basis_labels() const { return node_->labels; }
  const Rep& parent() const;
  const std::vector<long>& twist() const { return node_->twist; }
  const std::vector<Rep>& factors() const { return node_->factors; }

  /// Action matrix of E(i, j).
  const SparseRat& e(int i, int j) const;

  /// For exterior/natural/trivial reps, the k with V = wedge^k C^d (trivial counts as k = d
  /// since every sl_d action agrees); -1 otherwise.
  int wedge_degree() const;

 private:
  struct Node {
    Kind kind = Kind::Natural;
    int d = 0;
    int dim = 0;
    int degree = 0;
    std::vector<std::string> labels;
    std::vector<SparseRat> action;  // index i * d + j
    std::vector<Rep> factors;       // tensor factors, or {parent}
    std::vector<long> twist;
  };
  explicit Rep(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Sorted k-subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int d, int k);
/// Sorted multisets of size m from {0..d-1} in lexicographic order.
std::vector<std::vector<int>> multisets(int d, int m);

std::string to_string(Rep::Kind kind);

template <ExactScalar S>
Vec<S> apply(const SparseRat& a, const Vec<S>& v, int dim) {
  Vec<S> out = zeros<S>(dim);
  for (const auto& [r, c, x] : a)
    if (!is_zero(v[c])) out[r] += S(x) * v[c];
  return out;
}

namespace detail {
inline void check_index(const Rep& rep, int i, int j) {
  if (i < 0 || j < 0 || i >= rep.d() || j >= rep.d())
    throw std::out_of_range("matrix unit index (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") out of range for d = " + std::to_string(rep.d()));
}
inline void check_vec(const Rep& rep, Eigen::Index n) {
  if (n != rep.dim())
    throw std::invalid_argument("vector length " + std::to_string(n) + " does not match rep dim " +
                                std::to_string(rep.dim()));
}
}  // namespace detail

/// E_ij . v
template <ExactScalar S>
Vec<S> act_E(const Rep& rep, int i, int j, const Vec<S>& v) {
  detail::check_index(rep, i, j);
  detail::check_vec(rep, v.size());
  return apply(rep.e(i, j), v, rep.dim());
}

/// B . v for a d x d matrix B = sum B_ij E_ij.
template <ExactScalar S>
Vec<S> act_matrix(const Rep& rep, const Mat<S>& b, const Vec<S>& v) {
  if (b.rows() != rep.d() || b.cols() != rep.d())
    throw std::invalid_argument("act_matrix: expected a " + std::to_string(rep.d()) + "x" +
                                std::to_string(rep.d()) + " matrix");
  detail::check_vec(rep, v.size());
  Vec<S> out = zeros<S>(rep.dim());
  for (int i = 0; i < rep.d(); ++i)
    for (int j = 0; j < rep.d(); ++j) {
      if (is_zero(b(i, j))) continue;
      for (const auto& [r, c, x] : rep.e(i, j))
        if (!is_zero(v[c])) out[r] += b(i, j) * S(x) * v[c];
    }
  return out;
}

/// (r u^T) . v, the rank-one matrix with entries r_i u_j.
template <ExactScalar S>
Vec<S> act_outer(const Rep& rep, const Vec<S>& r, const Vec<S>& u, const Vec<S>& v) {
  Vec<S> out = zeros<S>(rep.dim());
  for (int i = 0; i < rep.d(); ++i) {
    if (is_zero(r[i])) continue;
    for (int j = 0; j < rep.d(); ++j) {
      if (is_zero(u[j])) continue;
      const S bij = r[i] * u[j];
      for (const auto& [row, col, x] : rep.e(i, j))
        if (!is_zero(v[col])) out[row] += bij * S(x) * v[col];
    }
  }
  return out;
}

/// Eigenvalues of E_00..E_{d-1,d-1} on a basis vector; throws if it is not a weight vector.
std::vector<Rat> weight(const Rep& rep, int basis_index);

/// The vector killed by every raising operator E_{i,i+1}, for exterior, symmetric,
/// natural and trivial reps (and twists of those).
Vec<Rat> highest_weight_vector(const Rep& rep);

/// Smallest subspace containing seed and stable under every E_ij.
template <ExactScalar S>
SpanBasis<S> cyclic_closure(const Rep& rep, const Vec<S>& seed) {
  detail::check_vec(rep, seed.size());
  if (is_zero(seed)) throw std::invalid_argument("cyclic_closure: zero seed");
  auto basis = span_of<S>(rep.dim(), {seed});
  std::vector<Vec<S>> frontier{seed};
  while (!frontier.empty() && !basis.full()) {
    std::vector<Vec<S>> images;
    for (const auto& f : frontier)
      for (int i = 0; i < rep.d(); ++i)
        for (int j = 0; j < rep.d(); ++j) {
          auto img = apply(rep.e(i, j), f, rep.dim());
          if (!is_zero(img)) images.push_back(std::move(img));
        }
    frontier.clear();
    for (auto& img : images) {
      auto [next, grew] = span_extend(basis, std::vector<Vec<S>>{img});
      if (grew) {
        basis = std::move(next);
        frontier.push_back(std::move(img));
      }
    }
  }
  return basis;
}

}  // namespace divzero
