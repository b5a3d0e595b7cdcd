#include "divzero/cyc.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace divzero {

namespace {

std::atomic<int> g_order_limit{360};

using IntPoly = std::vector<BigInt>;

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic divisor.
IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  IntPoly q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const BigInt c = num[k];
    q[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return q;
}

// Arithmetic tables for Q(zeta_n): the modulus and x^e mod Phi_n for 0 <= e < n.
struct CycField {
  int n = 1;
  int phi = 1;
  IntPoly modulus;
  std::vector<std::vector<Rat>> powers;
};

const CycField& field(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycField>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto f = std::make_unique<CycField>();
  f->n = n;
  f->modulus = cyclotomic_polynomial(n);
  f->phi = static_cast<int>(f->modulus.size()) - 1;
  f->powers.reserve(n);
  std::vector<Rat> cur(f->phi, Rat(0));
  cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    f->powers.push_back(cur);
    // multiply by x, then subtract lead * Phi_n
    std::vector<Rat> next(f->phi, Rat(0));
    const Rat lead = cur[f->phi - 1];
    for (int i = f->phi - 1; i > 0; --i) next[i] = cur[i - 1];
    if (!lead.is_zero())
      for (int i = 0; i < f->phi; ++i) next[i] -= lead * Rat(f->modulus[i], 1);
    cur = std::move(next);
  }
  return *cache.emplace(n, std::move(f)).first->second;
}

// Solves A x = b over Q for square-or-tall A (column-major list of columns).
// Returns nullopt if inconsistent.
std::optional<std::vector<Rat>> solve(std::vector<std::vector<Rat>> cols, std::vector<Rat> b) {
  const std::size_t rows = b.size();
  const std::size_t ncols = cols.size();
  // augmented row-major copy
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(ncols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) m[r][c] = cols[c][r];
    m[r][ncols] = b[r];
  }
  std::vector<std::size_t> pivot_of_col(ncols, rows);
  std::size_t prow = 0;
  for (std::size_t c = 0; c < ncols && prow < rows; ++c) {
    std::size_t r = prow;
    while (r < rows && m[r][c].is_zero()) ++r;
    if (r == rows) continue;
    std::swap(m[r], m[prow]);
    const Rat inv = Rat(1) / m[prow][c];
    for (auto& x : m[prow]) x *= inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == prow || m[rr][c].is_zero()) continue;
      const Rat f = m[rr][c];
      for (std::size_t cc = c; cc <= ncols; ++cc) m[rr][cc] -= f * m[prow][cc];
    }
    pivot_of_col[c] = prow++;
  }
  for (std::size_t r = prow; r < rows; ++r)
    if (!m[r][ncols].is_zero()) return std::nullopt;
  std::vector<Rat> x(ncols, Rat(0));
  for (std::size_t c = 0; c < ncols; ++c)
    if (pivot_of_col[c] < rows) x[c] = m[pivot_of_col[c]][ncols];
  return x;
}

int common_order(int a, int b) {
  const long m = std::lcm(static_cast<long>(a), static_cast<long>(b));
  if (m > g_order_limit.load())
    throw CycOrderError("cyclotomic order lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                        ") = " + std::to_string(m) + " exceeds limit " +
                        std::to_string(g_order_limit.load()));
  return static_cast<int>(m);
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  static std::mutex mu;
  static std::map<int, IntPoly> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  IntPoly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  IntPoly den{1};
  for (int d = 1; d < n; ++d)
    if (n % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
  IntPoly out = poly_div_exact(num, den);
  std::lock_guard lock(mu);
  memo.emplace(n, out);
  return out;
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

int cyc_order_limit() { return g_order_limit.load(); }
void set_cyc_order_limit(int limit) {
  if (limit < 1) throw std::invalid_argument("cyclotomic order limit must be positive");
  g_order_limit.store(limit);
}

Cyc::Cyc(int order, std::vector<Rat> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  if (order < 1) throw std::invalid_argument("Cyc: order must be positive");
  if (static_cast<int>(coeffs_.size()) != euler_phi(order))
    throw std::invalid_argument("Cyc: expected " + std::to_string(euler_phi(order)) +
                                " coefficients for order " + std::to_string(order));
}

Cyc Cyc::root_of_unity(int n, long k) {
  if (n < 1) throw std::invalid_argument("root_of_unity: order must be positive");
  const auto& f = field(n);
  long e = k % n;
  if (e < 0) e += n;
  return Cyc(n, f.powers[e]);
}

bool Cyc::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

Rat Cyc::to_rat() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value " + str() + " is not rational");
  return coeffs_[0];
}

Cyc Cyc::embed(int m) const {
  if (m % order_ != 0)
    throw std::invalid_argument("Cyc::embed: " + std::to_string(order_) + " does not divide " +
                                std::to_string(m));
  if (m == order_) return *this;
  const auto& f = field(m);
  const int step = m / order_;
  std::vector<Rat> out(f.phi, Rat(0));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    const auto& p = f.powers[(j * step) % m];
    for (int i = 0; i < f.phi; ++i)
      if (!p[i].is_zero()) out[i] += coeffs_[j] * p[i];
  }
  return Cyc(m, std::move(out));
}

Cyc Cyc::reduced() const {
  if (is_rational()) return Cyc(coeffs_[0]);
  for (int m = 2; m < order_; ++m) {
    if (order_ % m) continue;
    const auto& f = field(m);
    std::vector<std::vector<Rat>> cols;
    for (int j = 0; j < f.phi; ++j) {
      std::vector<Rat> basis(f.phi, Rat(0));
      basis[j] = 1;
      cols.push_back(Cyc(m, basis).embed(order_).coeffs_);
    }
    if (auto x = solve(std::move(cols), coeffs_)) return Cyc(m, std::move(*x));
  }
  return *this;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw ArithmeticError("cyclotomic division by zero");
  if (order_ == 1) return Cyc(Rat(1) / coeffs_[0]);
  const auto& f = field(order_);
  std::vector<std::vector<Rat>> cols;
  for (int j = 0; j < f.phi; ++j) cols.push_back((*this * Cyc(order_, f.powers[j])).coeffs_);
  std::vector<Rat> e0(f.phi, Rat(0));
  e0[0] = 1;
  auto x = solve(std::move(cols), std::move(e0));
  return Cyc(order_, std::move(*x));
}

Cyc& Cyc::operator+=(const Cyc& o) {
  if (order_ != o.order_) {
    const int m = common_order(order_, o.order_);
    *this = embed(m);
    const Cyc b = o.embed(m);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    return *this;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc Cyc::operator-() const {
  Cyc out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  if (o.order_ == 1) {
    for (auto& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  if (order_ == 1) {
    const Rat s = coeffs_[0];
    *this = o;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  const int m = common_order(order_, o.order_);
  const Cyc a = embed(m);
  const Cyc b = o.embed(m);
  const auto& f = field(m);
  std::vector<Rat> prod(2 * f.phi - 1, Rat(0));
  for (int i = 0; i < f.phi; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (int j = 0; j < f.phi; ++j)
      if (!b.coeffs_[j].is_zero()) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  std::vector<Rat> out(prod.begin(), prod.begin() + f.phi);
  for (int e = f.phi; e < 2 * f.phi - 1; ++e) {
    if (prod[e].is_zero()) continue;
    const auto& p = f.powers[e % m];
    for (int i = 0; i < f.phi; ++i)
      if (!p[i].is_zero()) out[i] += prod[e] * p[i];
  }
  order_ = m;
  coeffs_ = std::move(out);
  return *this;
}

bool operator==(const Cyc& a, const Cyc& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const int m = common_order(a.order_, b.order_);
  return a.embed(m).coeffs_ == b.embed(m).coeffs_;
}

std::string Cyc::str() const {
  if (is_rational()) return coeffs_[0].str();
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << coeffs_[i];
  os << "]@" << order_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyc& c) { return os << c.str(); }

}  // namespace divzero
