#pragma once

// Box-truncated saturation of a set of seeds under homogeneous linear operators.

#include "divzero/graded.hpp"
#include "divzero/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace divzero {

/// Homogeneous operator of degree `shift`: maps the fiber at n to the fiber at n + shift.
template <ExactScalar S>
struct Generator {
  DegVec shift;
  std::string name;
  std::function<Vec<S>(const DegVec& n, const Vec<S>& v)> apply;
};

template <ExactScalar S>
using FiberMap = std::map<DegVec, SpanBasis<S>, DegLess>;

/// Smallest family of fiber subspaces inside `working` that contains the seeds and is
/// closed under every generator whose source and image degrees both lie in the box.
///
/// Homogeneous seeds go straight into the graded breadth-first rounds. Non-graded
/// seeds are first saturated as global vectors (reduced modulo the graded part found
/// so far); homogeneous elements of that span are then handed to the graded rounds,
/// and the two phases alternate until neither grows.
template <ExactScalar S>
class SaturationEngine {
 public:
  SaturationEngine(std::vector<Generator<S>> gens, Box working, int dim, int max_iters)
      : gens_(std::move(gens)), working_(std::move(working)), dim_(dim), max_iters_(max_iters) {
    if (max_iters < 0) throw std::invalid_argument("max_iters must be non-negative");
    for (const auto& g : gens_)
      if (g.shift.size() != working_.d()) throw std::invalid_argument("generator degree has wrong dimension");
  }

  void add_seed(const GradedVec<S>& s) {
    if (s.dim() != dim_ || s.d() != working_.d()) throw std::invalid_argument("seed has wrong shape");
    for (const auto& [n, v] : s.fibers())
      if (!working_.contains(n)) throw std::invalid_argument("seed supported outside the working box");
    if (s.is_zero()) return;
    if (s.is_homogeneous())
      insert(s.fibers().begin()->first, s.fibers().begin()->second);
    else
      pending_.push_back(flatten(s));
  }

  void run() {
    while (true) {
      if (!graded_rounds()) return;
      if (pending_.empty() || !global_phase()) {
        saturated_ = !exhausted_;
        return;
      }
    }
  }

  const FiberMap<S>& fibers() const { return fibers_; }
  int fiber_dim(const DegVec& n) const {
    auto it = fibers_.find(n);
    return it == fibers_.end() ? 0 : it->second.rank();
  }
  SpanBasis<S> fiber(const DegVec& n) const {
    auto it = fibers_.find(n);
    return it == fibers_.end() ? SpanBasis<S>(dim_) : it->second;
  }
  int iterations() const { return iterations_; }
  bool saturated() const { return saturated_; }
  /// Total rank over the working box after each round.
  const std::vector<long>& history() const { return history_; }

 private:
  using Frontier = std::map<DegVec, std::vector<Vec<S>>, DegLess>;

  bool insert(const DegVec& n, const Vec<S>& v) {
    auto it = fibers_.try_emplace(n, SpanBasis<S>(dim_)).first;
    auto [next, grew] = span_extend(it->second, std::vector<Vec<S>>{v});
    if (!grew) return false;
    it->second = std::move(next);
    frontier_[n].push_back(v);
    return true;
  }

  long total_rank() const {
    long t = 0;
    for (const auto& [n, b] : fibers_) t += b.rank();
    return t;
  }

  /// Returns false if the iteration budget ran out with work left.
  bool graded_rounds() {
    while (!frontier_.empty()) {
      if (iterations_ >= max_iters_) return !(exhausted_ = true);
      ++iterations_;
      Frontier current;
      std::swap(current, frontier_);
      Frontier images;
      for (const auto& [n, vs] : current)
        for (const auto& g : gens_) {
          const DegVec m = n + g.shift;
          if (!working_.contains(m)) continue;
          if (auto it = fibers_.find(m); it != fibers_.end() && it->second.full()) continue;
          for (const auto& v : vs) {
            Vec<S> img = g.apply(n, v);
            if (!divzero::is_zero(img)) images[m].push_back(std::move(img));
          }
        }
      for (const auto& [m, imgs] : images)
        for (const auto& img : imgs) {
          if (auto it = fibers_.find(m); it != fibers_.end() && it->second.full()) break;
          insert(m, img);
        }
      history_.push_back(total_rank());
    }
    return true;
  }

  // Global vectors: the working box flattened, lexicographic degree order, dim_ slots each.
  Eigen::Index offset(const DegVec& n) const {
    Eigen::Index off = 0;
    for (int i = 0; i < working_.d(); ++i)
      off = off * (working_.hi[i] - working_.lo[i] + 1) + (n[i] - working_.lo[i]);
    return off * dim_;
  }

  Vec<S> flatten(const GradedVec<S>& g) const {
    Vec<S> out = zeros<S>(working_.size() * dim_);
    for (const auto& [n, v] : g.fibers()) out.segment(offset(n), dim_) = v;
    return out;
  }

  std::vector<std::pair<DegVec, Vec<S>>> blocks(const Vec<S>& x) const {
    std::vector<std::pair<DegVec, Vec<S>>> out;
    for (const auto& n : points()) {
      Vec<S> b = x.segment(offset(n), dim_);
      if (!divzero::is_zero(b)) out.emplace_back(n, std::move(b));
    }
    return out;
  }

  const std::vector<DegVec>& points() const {
    if (points_.empty()) points_ = working_.points();
    return points_;
  }

  Vec<S> reduce(Vec<S> x) const {
    for (const auto& [n, b] : fibers_) x.segment(offset(n), dim_) = b.residual(x.segment(offset(n), dim_));
    return x;
  }

  std::optional<Vec<S>> apply_global(const Generator<S>& g, const Vec<S>& x) const {
    Vec<S> out = zeros<S>(x.size());
    for (const auto& [n, b] : blocks(x)) {
      const DegVec m = n + g.shift;
      if (!working_.contains(m)) return std::nullopt;
      out.segment(offset(m), dim_) += g.apply(n, b);
    }
    return out;
  }

  /// Saturates the pending global vectors modulo the graded part and moves every
  /// homogeneous element of their span into the graded frontier. Returns whether
  /// anything homogeneous was found.
  bool global_phase() {
    const Eigen::Index len = working_.size() * dim_;
    SpanBasis<S> g(len);
    std::vector<Vec<S>> frontier;
    for (const auto& p : pending_) {
      Vec<S> r = reduce(p);
      auto [next, grew] = span_extend(g, std::vector<Vec<S>>{r});
      if (grew) g = std::move(next), frontier.push_back(std::move(r));
    }
    while (!frontier.empty()) {
      if (iterations_ >= max_iters_) {
        exhausted_ = true;
        return false;
      }
      ++iterations_;
      std::vector<Vec<S>> next_frontier;
      for (const auto& x : frontier)
        for (const auto& gen : gens_) {
          auto img = apply_global(gen, x);
          if (!img) continue;
          Vec<S> r = reduce(*img);
          if (divzero::is_zero(r)) continue;
          auto [next, grew] = span_extend(g, std::vector<Vec<S>>{r});
          if (grew) g = std::move(next), next_frontier.push_back(std::move(r));
        }
      frontier = std::move(next_frontier);
      history_.push_back(total_rank());
    }
    pending_ = g.rows();
    if (g.rank() == 0) return false;

    // homogeneous elements at n: rows of the RREF taken with fiber n's columns last
    bool found = false;
    for (const auto& n : points()) {
      const Eigen::Index off = offset(n);
      std::vector<Eigen::Index> perm;
      for (Eigen::Index c = 0; c < len; ++c)
        if (c < off || c >= off + dim_) perm.push_back(c);
      for (Eigen::Index c = off; c < off + dim_; ++c) perm.push_back(c);
      Mat<S> m(g.rank(), len);
      for (int r = 0; r < g.rank(); ++r)
        for (Eigen::Index c = 0; c < len; ++c) m(r, c) = g.rows()[r][perm[c]];
      const auto [red, rank] = rref(m);
      for (int r = 0; r < rank; ++r)
        if (red.pivot_cols()[r] >= len - dim_) {
          found = insert(n, red.rows()[r].tail(dim_)) || found;
        }
    }
    if (found) {
      for (auto& p : pending_) p = reduce(p);
      std::erase_if(pending_, [](const Vec<S>& p) { return divzero::is_zero(p); });
    }
    return found;
  }

  std::vector<Generator<S>> gens_;
  Box working_;
  int dim_;
  int max_iters_;
  FiberMap<S> fibers_;
  Frontier frontier_;
  std::vector<Vec<S>> pending_;
  mutable std::vector<DegVec> points_;
  int iterations_ = 0;
  bool saturated_ = false;
  bool exhausted_ = false;
  std::vector<long> history_;
};

}  // namespace divzero
