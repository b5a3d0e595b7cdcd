#include "divzero/rep.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace divzero {

namespace {

std::string wedge_label(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "^e" : "e") + std::to_string(s[i] + 1);
  return out.empty() ? "1" : out;
}

std::string monomial_label(const std::vector<int>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "*e" : "e") + std::to_string(m[i] + 1);
  return out.empty() ? "1" : out;
}

void subsets_rec(int d, int k, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x < d; ++x) {
    cur.push_back(x);
    subsets_rec(d, k, x + 1, cur, out);
    cur.pop_back();
  }
}

void multisets_rec(int d, int m, int start, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x < d; ++x) {
    cur.push_back(x);
    multisets_rec(d, m, x, cur, out);
    cur.pop_back();
  }
}

void check_d(int d) {
  if (d < 2) throw std::invalid_argument("rep: d must be at least 2");
}

}  // namespace

std::vector<std::vector<int>> k_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_rec(d, k, 0, cur, out);
  return out;
}

std::vector<std::vector<int>> multisets(int d, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  multisets_rec(d, m, 0, cur, out);
  return out;
}

std::string to_string(Rep::Kind kind) {
  switch (kind) {
    case Rep::Kind::Natural: return "natural";
    case Rep::Kind::Exterior: return "exterior";
    case Rep::Kind::Symmetric: return "symmetric";
    case Rep::Kind::Tensor: return "tensor";
    case Rep::Kind::Cyclic: return "cyclic";
    case Rep::Kind::Trivial: return "trivial";
    case Rep::Kind::Twisted: return "twisted";
  }
  return "?";
}

const SparseRat& Rep::e(int i, int j) const {
  detail::check_index(*this, i, j);
  return node_->action[i * node_->d + j];
}

const Rep& Rep::parent() const {
  if (node_->factors.size() != 1 || (kind() != Kind::Cyclic && kind() != Kind::Twisted))
    throw std::logic_error("rep has no parent");
  return node_->factors.front();
}

int Rep::wedge_degree() const {
  switch (kind()) {
    case Kind::Natural: return 1;
    case Kind::Exterior: return degree();
    case Kind::Trivial: return d();
    default: return -1;
  }
}

Rep Rep::natural(int d) {
  auto r = exterior(d, 1);
  auto n = std::make_shared<Node>(*r.node_);
  n->kind = Kind::Natural;
  return Rep(std::move(n));
}

Rep Rep::exterior(int d, int k) {
  check_d(d);
  if (k < 0 || k > d) throw std::invalid_argument("exterior: k must lie in [0, d]");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exterior;
  n->d = d;
  n->degree = k;
  const auto subsets = k_subsets(d, k);
  std::map<std::vector<int>, int> index;
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    index[subsets[a]] = static_cast<int>(a);
    n->labels.push_back(wedge_label(subsets[a]));
  }
  n->dim = static_cast<int>(subsets.size());
  n->action.resize(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto& out = n->action[i * d + j];
      for (std::size_t a = 0; a < subsets.size(); ++a) {
        const auto& s = subsets[a];
        if (!std::binary_search(s.begin(), s.end(), j)) continue;
        if (i == j) {
          out.push_back({static_cast<int>(a), static_cast<int>(a), Rat(1)});
          continue;
        }
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        // replace e_j by e_i and sort; the sign counts elements strictly between i and j
        std::vector<int> t;
        int between = 0;
        for (int x : s) {
          if (x == j) continue;
          t.push_back(x);
          if (x > std::min(i, j) && x < std::max(i, j)) ++between;
        }
        t.insert(std::upper_bound(t.begin(), t.end(), i), i);
        out.push_back({index.at(t), static_cast<int>(a), Rat(between % 2 ? -1 : 1)});
      }
    }
  if (k == 0) n->labels = {"1"};
  return Rep(std::move(n));
}

Rep Rep::symmetric(int d, int m) {
  check_d(d);
  if (m < 0) throw std::invalid_argument("symmetric: m must be non-negative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symmetric;
  n->d = d;
  n->degree = m;
  const auto monos = multisets(d, m);
  std::map<std::vector<int>, int> index;
  for (std::size_t a = 0; a < monos.size(); ++a) {
    index[monos[a]] = static_cast<int>(a);
    n->labels.push_back(monomial_label(monos[a]));
  }
  n->dim = static_cast<int>(monos.size());
  n->action.resize(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto& out = n->action[i * d + j];
      for (std::size_t a = 0; a < monos.size(); ++a) {
        const auto& mono = monos[a];
        const long mult = std::count(mono.begin(), mono.end(), j);
        if (mult == 0) continue;
        auto t = mono;
        t.erase(std::find(t.begin(), t.end(), j));
        t.insert(std::upper_bound(t.begin(), t.end(), i), i);
        out.push_back({index.at(t), static_cast<int>(a), Rat(mult)});
      }
    }
  return Rep(std::move(n));
}

Rep Rep::trivial(int d) {
  check_d(d);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Trivial;
  n->d = d;
  n->dim = 1;
  n->labels = {"1"};
  n->action.resize(d * d);
  return Rep(std::move(n));
}

Rep Rep::tensor(const std::vector<Rep>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: no factors");
  const int d = factors.front().d();
  for (const auto& f : factors)
    if (f.d() != d) throw std::invalid_argument("tensor: factors over different d");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tensor;
  n->d = d;
  n->factors = factors;
  n->dim = 1;
  for (const auto& f : factors) n->dim *= f.dim();
  // mixed radix, first factor most significant
  std::vector<int> stride(factors.size(), 1);
  for (std::size_t f = factors.size() - 1; f-- > 0;) stride[f] = stride[f + 1] * factors[f + 1].dim();
  n->labels.resize(n->dim);
  for (int a = 0; a < n->dim; ++a) {
    std::string label;
    for (std::size_t f = 0; f < factors.size(); ++f)
      label += (f ? "(x)" : "") + factors[f].basis_labels()[(a / stride[f]) % factors[f].dim()];
    n->labels[a] = label;
  }
  n->action.resize(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto& out = n->action[i * d + j];
      for (int a = 0; a < n->dim; ++a)
        for (std::size_t f = 0; f < factors.size(); ++f) {
          const int digit = (a / stride[f]) % factors[f].dim();
          for (const auto& [row, col, x] : factors[f].e(i, j)) {
            if (col != digit) continue;
            out.push_back({a + (row - digit) * stride[f], a, x});
          }
        }
    }
  return Rep(std::move(n));
}

Rep Rep::cyclic(const Rep& parent, const Vec<Rat>& seed) {
  const auto basis = cyclic_closure(parent, seed);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cyclic;
  n->d = parent.d();
  n->dim = basis.rank();
  n->factors = {parent};
  for (int a = 0; a < n->dim; ++a) n->labels.push_back("c" + std::to_string(a + 1));
  n->action.resize(n->d * n->d);
  for (int i = 0; i < n->d; ++i)
    for (int j = 0; j < n->d; ++j) {
      auto& out = n->action[i * n->d + j];
      for (int a = 0; a < n->dim; ++a) {
        const auto img = apply(parent.e(i, j), basis.rows()[a], parent.dim());
        const auto coords = basis.coordinates(img);
        for (int b = 0; b < n->dim; ++b)
          if (!coords[b].is_zero()) out.push_back({b, a, coords[b]});
      }
    }
  return Rep(std::move(n));
}

Rep Rep::twisted(const Rep& parent, const std::vector<long>& l) {
  if (static_cast<int>(l.size()) != parent.d())
    throw std::invalid_argument("twisted: l must have length d");
  for (long x : l)
    if (x < 1) throw std::invalid_argument("twisted: entries of l must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Twisted;
  n->d = parent.d();
  n->dim = parent.dim();
  n->labels = parent.basis_labels();
  n->factors = {parent};
  n->twist = l;
  n->action.resize(n->d * n->d);
  for (int i = 0; i < n->d; ++i)
    for (int j = 0; j < n->d; ++j) {
      const Rat scale(BigInt(l[i]), BigInt(l[j]));
      for (auto entry : parent.e(i, j)) {
        entry.value *= scale;
        n->action[i * n->d + j].push_back(entry);
      }
    }
  return Rep(std::move(n));
}

std::vector<Rat> weight(const Rep& rep, int basis_index) {
  if (basis_index < 0 || basis_index >= rep.dim())
    throw std::out_of_range("weight: basis index out of range");
  std::vector<Rat> w(rep.d(), Rat(0));
  for (int i = 0; i < rep.d(); ++i)
    for (const auto& [row, col, x] : rep.e(i, i)) {
      if (col != basis_index) continue;
      if (row != basis_index)
        throw std::invalid_argument("weight: basis vector " + std::to_string(basis_index) +
                                    " is not a weight vector");
      w[i] += x;
    }
  return w;
}

Vec<Rat> highest_weight_vector(const Rep& rep) {
  switch (rep.kind()) {
    case Rep::Kind::Natural:
    case Rep::Kind::Exterior:
    case Rep::Kind::Symmetric:
    case Rep::Kind::Trivial: {
      // lexicographically first label: e_1^...^e_k, e_1^m, or the trivial vector
      Vec<Rat> v = zeros<Rat>(rep.dim());
      v[0] = 1;
      return v;
    }
    case Rep::Kind::Twisted:
      return highest_weight_vector(rep.parent());
    default:
      throw std::invalid_argument("highest_weight_vector: unsupported rep kind " +
                                  to_string(rep.kind()));
  }
}

}  // namespace divzero
