#pragma once

#include "divzero/scalar.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace divzero {

/// Row space of a matrix kept in reduced row-echelon form.
///
/// Pivots are 1, each pivot is the only nonzero entry of its column, and pivot
/// columns increase strictly. Since RREF is canonical, two bases of the same
/// subspace compare equal with ==.
template <ExactScalar S>
class SpanBasis {
 public:
  SpanBasis() = default;
  explicit SpanBasis(Eigen::Index ambient_dim) : ambient_(ambient_dim) {}

  Eigen::Index ambient_dim() const { return ambient_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool full() const { return rank() == ambient_; }
  const std::vector<Vec<S>>& rows() const { return rows_; }
  const std::vector<Eigen::Index>& pivot_cols() const { return pivots_; }

  Mat<S> matrix() const {
    Mat<S> m(rows_.size(), ambient_);
    for (std::size_t r = 0; r < rows_.size(); ++r) m.row(r) = rows_[r].transpose();
    return m;
  }

  /// v minus its component along the pivots; zero iff v lies in the span.
  Vec<S> residual(Vec<S> v) const {
    check_length(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const S c = v[pivots_[r]];
      if (is_zero(c)) continue;
      axpy(v, -c, rows_[r]);
    }
    return v;
  }

  /// Coordinates of a member v in terms of rows() (the pivot entries of v).
  std::vector<S> coordinates(const Vec<S>& v) const {
    std::vector<S> c;
    c.reserve(rows_.size());
    for (auto p : pivots_) c.push_back(v[p]);
    return c;
  }

  friend bool operator==(const SpanBasis& a, const SpanBasis& b) {
    if (a.ambient_ != b.ambient_ || a.pivots_ != b.pivots_) return false;
    for (std::size_t r = 0; r < a.rows_.size(); ++r)
      if (!equal(a.rows_[r], b.rows_[r])) return false;
    return true;
  }

  template <ExactScalar T>
  friend std::pair<SpanBasis<T>, bool> span_extend(const SpanBasis<T>&, std::span<const Vec<T>>);
  template <ExactScalar T>
  friend std::pair<SpanBasis<T>, int> rref(const Mat<T>&);

 private:
  static void axpy(Vec<S>& y, const S& a, const Vec<S>& x) {
    for (Eigen::Index i = 0; i < y.size(); ++i)
      if (!is_zero(x[i])) y[i] += a * x[i];
  }

  void check_length(const Vec<S>& v) const {
    if (v.size() != ambient_)
      throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                  " does not match ambient dimension " + std::to_string(ambient_));
  }

  bool insert(const Vec<S>& v) {
    Vec<S> r = residual(v);
    Eigen::Index p = 0;
    while (p < r.size() && is_zero(r[p])) ++p;
    if (p == r.size()) return false;
    const S inv = S(1) / r[p];
    for (Eigen::Index i = p; i < r.size(); ++i)
      if (!is_zero(r[i])) r[i] *= inv;
    for (auto& row : rows_) {
      const S c = row[p];
      if (!is_zero(c)) axpy(row, -c, r);
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
  }

  Eigen::Index ambient_ = 0;
  std::vector<Vec<S>> rows_;
  std::vector<Eigen::Index> pivots_;
};

/// Gauss-Jordan elimination; returns the RREF basis of the row space and the rank.
template <ExactScalar S>
std::pair<SpanBasis<S>, int> rref(const Mat<S>& m) {
  SpanBasis<S> b(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) b.insert(m.row(r).transpose());
  const int rank = b.rank();
  return {std::move(b), rank};
}

template <ExactScalar S>
bool span_contains(const SpanBasis<S>& b, const Vec<S>& v) {
  return is_zero(b.residual(v));
}

/// RREF basis of span(b, vs), and whether the rank grew.
template <ExactScalar S>
std::pair<SpanBasis<S>, bool> span_extend(const SpanBasis<S>& b, std::span<const Vec<S>> vs) {
  SpanBasis<S> out = b;
  bool grew = false;
  for (const auto& v : vs) {
    out.check_length(v);
    if (out.full()) break;
    grew = out.insert(v) || grew;
  }
  return {std::move(out), grew};
}

template <ExactScalar S>
std::pair<SpanBasis<S>, bool> span_extend(const SpanBasis<S>& b, const std::vector<Vec<S>>& vs) {
  return span_extend(b, std::span<const Vec<S>>(vs));
}

template <ExactScalar S>
SpanBasis<S> span_of(Eigen::Index ambient, const std::vector<Vec<S>>& vs) {
  return span_extend(SpanBasis<S>(ambient), vs).first;
}

/// Exact rank of a list of vectors.
template <ExactScalar S>
int rank_of(Eigen::Index ambient, const std::vector<Vec<S>>& vs) {
  return span_of(ambient, vs).rank();
}

}  // namespace divzero
