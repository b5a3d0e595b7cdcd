#pragma once

// Finitely supported Z^d-graded vectors and degree boxes.

#include "divzero/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace divzero {

/// Axis-aligned box lo <= n <= hi in Z^d.
struct Box {
  DegVec lo;
  DegVec hi;

  Box() = default;
  Box(DegVec lo_, DegVec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.size() == 0) throw std::invalid_argument("Box: bad corners");
    if ((lo.array() > hi.array()).any()) throw std::invalid_argument("Box: empty (lo > hi)");
  }

  /// [c - radius, c + radius]^d; center defaults to the origin.
  static Box cube(int d, int radius, const DegVec& center = DegVec()) {
    if (radius < 0) throw std::invalid_argument("Box: negative radius");
    const DegVec c = center.size() ? center : DegVec(DegVec::Zero(d));
    if (c.size() != d) throw std::invalid_argument("Box: center has wrong dimension");
    return Box(c.array() - radius, c.array() + radius);
  }

  int d() const { return static_cast<int>(lo.size()); }

  bool contains(const DegVec& n) const {
    return n.size() == lo.size() && (n.array() >= lo.array()).all() && (n.array() <= hi.array()).all();
  }
  bool contains(const Box& b) const { return contains(b.lo) && contains(b.hi); }

  long size() const {
    long s = 1;
    for (int i = 0; i < d(); ++i) s *= hi[i] - lo[i] + 1;
    return s;
  }

  /// All lattice points, lexicographic.
  std::vector<DegVec> points() const {
    std::vector<DegVec> out;
    out.reserve(static_cast<std::size_t>(size()));
    DegVec n = lo;
    while (true) {
      out.push_back(n);
      int i = d() - 1;
      while (i >= 0 && n[i] == hi[i]) n[i] = lo[i], --i;
      if (i < 0) break;
      ++n[i];
    }
    return out;
  }

  friend bool operator==(const Box& a, const Box& b) {
    return deg_equal(a.lo, b.lo) && deg_equal(a.hi, b.hi);
  }
};

/// Element of V (x) A_d: one coordinate vector in V per degree; zero fibers are dropped.
template <ExactScalar S>
class GradedVec {
 public:
  using Fibers = std::map<DegVec, Vec<S>, DegLess>;

  GradedVec(int d = 0, int dim = 0) : d_(d), dim_(dim) {}

  static GradedVec single(const DegVec& n, const Vec<S>& v) {
    GradedVec g(static_cast<int>(n.size()), static_cast<int>(v.size()));
    g.add(n, v);
    return g;
  }

  int d() const { return d_; }
  int dim() const { return dim_; }
  const Fibers& fibers() const { return fibers_; }
  bool is_zero() const { return fibers_.empty(); }
  bool is_homogeneous() const { return fibers_.size() <= 1; }

  Vec<S> at(const DegVec& n) const {
    auto it = fibers_.find(n);
    return it == fibers_.end() ? zeros<S>(dim_) : it->second;
  }

  void add(const DegVec& n, const Vec<S>& v) {
    if (n.size() != d_ || v.size() != dim_)
      throw std::invalid_argument("GradedVec: fiber of shape (" + std::to_string(n.size()) + ", " +
                                  std::to_string(v.size()) + "), expected (" + std::to_string(d_) +
                                  ", " + std::to_string(dim_) + ")");
    if (divzero::is_zero(v)) return;
    auto [it, inserted] = fibers_.try_emplace(n, v);
    if (!inserted) {
      it->second += v;
      if (divzero::is_zero(it->second)) fibers_.erase(it);
    }
  }

  GradedVec& operator+=(const GradedVec& o) {
    check_same(o);
    for (const auto& [n, v] : o.fibers_) add(n, v);
    return *this;
  }
  GradedVec& operator-=(const GradedVec& o) { return *this += o * S(-1); }
  GradedVec& operator*=(const S& c) {
    if (divzero::is_zero(c)) fibers_.clear();
    for (auto& [n, v] : fibers_) v *= c;
    return *this;
  }
  friend GradedVec operator+(GradedVec a, const GradedVec& b) { return a += b; }
  friend GradedVec operator-(GradedVec a, const GradedVec& b) { return a -= b; }
  friend GradedVec operator*(GradedVec a, const S& c) { return a *= c; }

  friend bool operator==(const GradedVec& a, const GradedVec& b) {
    if (a.d_ != b.d_ || a.dim_ != b.dim_ || a.fibers_.size() != b.fibers_.size()) return false;
    for (auto ia = a.fibers_.begin(), ib = b.fibers_.begin(); ia != a.fibers_.end(); ++ia, ++ib)
      if (!deg_equal(ia->first, ib->first) || !equal(ia->second, ib->second)) return false;
    return true;
  }

  void check_same(const GradedVec& o) const {
    if (o.d_ != d_ || o.dim_ != dim_)
      throw std::invalid_argument("GradedVec: shape mismatch");
  }

 private:
  int d_;
  int dim_;
  Fibers fibers_;
};

}  // namespace divzero
