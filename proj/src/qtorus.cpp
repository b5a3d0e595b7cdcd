#include "divzero/qtorus.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace divzero {

namespace {

long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

void check_dims(const QMatrix& q, const DegVec& a, const DegVec& b) {
  if (a.size() != q.d() || b.size() != q.d())
    throw std::invalid_argument("degree of dimension " + std::to_string(a.size()) + "/" +
                                std::to_string(b.size()) + " for a quantum torus over d = " +
                                std::to_string(q.d()));
}

using BigMatrix = std::vector<std::vector<BigInt>>;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

int to_int(const BigInt& x) {
  if (!x.fits_sint_p()) throw std::overflow_error("lattice entry does not fit in int");
  return static_cast<int>(x.get_si());
}

}  // namespace

QMatrix::QMatrix(int N, IntMatrix exps) : n_(N), k_(std::move(exps)) {
  if (N < 1) throw std::invalid_argument("q: N must be positive");
  const std::size_t d = k_.size();
  if (d < 1) throw std::invalid_argument("q: empty exponent matrix");
  for (const auto& row : k_)
    if (row.size() != d) throw std::invalid_argument("q: exponent matrix must be square");
  for (std::size_t i = 0; i < d; ++i) {
    if (mod(k_[i][i], N) != 0)
      throw std::invalid_argument("q: diagonal exponent k_" + std::to_string(i + 1) + std::to_string(i + 1) +
                                  " must be 0 mod N");
    for (std::size_t j = 0; j < i; ++j)
      if (mod(k_[i][j] + k_[j][i], N) != 0)
        throw std::invalid_argument("q: need q_ij = q_ji^-1, but k_" + std::to_string(i + 1) +
                                    std::to_string(j + 1) + " + k_" + std::to_string(j + 1) +
                                    std::to_string(i + 1) + " != 0 mod N");
  }
}

long QMatrix::k(int i, int j) const { return mod(k_.at(i).at(j), n_); }

bool QMatrix::is_commutative() const {
  for (int i = 0; i < d(); ++i)
    for (int j = 0; j < d(); ++j)
      if (k(i, j) != 0) return false;
  return true;
}

std::optional<std::vector<long>> QMatrix::block_orders() const {
  std::vector<long> l(d(), 1);
  for (int i = 0; i < d(); ++i)
    for (int j = 0; j < d(); ++j) {
      const bool paired = (i / 2 == j / 2) && i != j && (i | 1) < d();
      if (!paired && k(i, j) != 0) return std::nullopt;
    }
  for (int p = 0; p + 1 < d(); p += 2) {
    const long order = n_ / std::gcd(static_cast<long>(n_), k(p, p + 1));
    l[p] = l[p + 1] = order;
  }
  return l;
}

QMatrix block_normal_q(const std::vector<long>& l) {
  const int d = static_cast<int>(l.size());
  if (d < 1) throw std::invalid_argument("block_normal_q: empty l");
  long N = 1;
  for (long x : l) {
    if (x < 1) throw std::invalid_argument("block_normal_q: entries of l must be positive");
    N = std::lcm(N, x);
  }
  for (int p = 0; p + 1 < d; p += 2)
    if (l[p] != l[p + 1])
      throw std::invalid_argument("block_normal_q: paired orders l_" + std::to_string(p + 1) + " and l_" +
                                  std::to_string(p + 2) + " differ");
  if (d % 2 == 1 && l.back() != 1)
    throw std::invalid_argument("block_normal_q: an unpaired trailing coordinate needs l = 1");
  if (N > cyc_order_limit()) throw CycOrderError("block_normal_q: lcm(l) above the cyclotomic order limit");
  IntMatrix k(d, std::vector<long>(d, 0));
  for (int p = 0; p + 1 < d; p += 2) {
    k[p][p + 1] = N / l[p];
    k[p + 1][p] = -(N / l[p]);
  }
  return QMatrix(static_cast<int>(N), std::move(k));
}

bool operator==(const QMonomial& a, const QMonomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return deg_equal(a.n, b.n) && a.coeff == b.coeff;
}

long sigma_exponent(const QMatrix& q, const DegVec& m, const DegVec& n) {
  check_dims(q, m, n);
  long e = 0;
  for (int i = 0; i < q.d(); ++i)
    for (int j = i + 1; j < q.d(); ++j) e = mod(e + mod(q.k(j, i) * m[j], q.N()) * mod(n[i], q.N()), q.N());
  return e;
}

long f_exponent(const QMatrix& q, const DegVec& m, const DegVec& n) {
  check_dims(q, m, n);
  long e = 0;
  for (int i = 0; i < q.d(); ++i)
    for (int j = 0; j < q.d(); ++j) e = mod(e + mod(q.k(j, i) * m[j], q.N()) * mod(n[i], q.N()), q.N());
  return e;
}

Cyc sigma(const QMatrix& q, const DegVec& m, const DegVec& n) {
  return Cyc::root_of_unity(q.N(), sigma_exponent(q, m, n));
}

Cyc f_form(const QMatrix& q, const DegVec& m, const DegVec& n) {
  return Cyc::root_of_unity(q.N(), f_exponent(q, m, n));
}

QMonomial torus_mul(const QMatrix& q, const QMonomial& a, const QMonomial& b) {
  check_dims(q, a.n, b.n);
  return {a.coeff * b.coeff * sigma(q, a.n, b.n), a.n + b.n};
}

QMonomial torus_commutator(const QMatrix& q, const DegVec& m, const DegVec& n) {
  return {sigma(q, m, n) - sigma(q, n, m), m + n};
}

CocycleResidual cocycle_identities_residual(const QMatrix& q, const DegVec& m, const DegVec& n,
                                            const DegVec& r) {
  check_dims(q, m, n);
  check_dims(q, n, r);
  return {f_form(q, m, n) - sigma(q, m, n) / sigma(q, n, m),
          f_form(q, m + n, r) - f_form(q, m, r) * f_form(q, n, r),
          sigma(q, m, n) * sigma(q, m + n, r) - sigma(q, n, r) * sigma(q, m, n + r)};
}

Lattice hermite_normal_form(const Lattice& basis) {
  const std::size_t d = basis.empty() ? 0 : static_cast<std::size_t>(basis.front().size());
  if (basis.size() != d) throw std::invalid_argument("hermite_normal_form: need a square basis");
  BigMatrix a(d, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = basis[i][j];
  for (std::size_t c = 0; c < d; ++c) {
    // gcd elimination on column c among rows c..d-1
    while (true) {
      std::size_t best = d;
      for (std::size_t r = c; r < d; ++r)
        if (a[r][c] != 0 && (best == d || abs(a[r][c]) < abs(a[best][c]))) best = r;
      if (best == d) throw std::invalid_argument("hermite_normal_form: basis is not full rank");
      std::swap(a[c], a[best]);
      bool done = true;
      for (std::size_t r = c + 1; r < d; ++r) {
        if (a[r][c] == 0) continue;
        const BigInt f = floor_div(a[r][c], a[c][c]);
        for (std::size_t j = c; j < d; ++j) a[r][j] -= f * a[c][j];
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[c][c] < 0)
      for (auto& x : a[c]) x = -x;
    for (std::size_t r = 0; r < c; ++r) {
      const BigInt f = floor_div(a[r][c], a[c][c]);
      if (f != 0)
        for (std::size_t j = c; j < d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Lattice out(d, DegVec(static_cast<Eigen::Index>(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i][static_cast<Eigen::Index>(j)] = to_int(a[i][j]);
  return out;
}

Lattice smith_kernel_mod(const IntMatrix& k, long N) {
  if (N < 1) throw std::invalid_argument("smith_kernel_mod: N must be positive");
  const std::size_t m = k.size();
  const std::size_t d = m ? k.front().size() : 0;
  for (const auto& row : k)
    if (row.size() != d) throw std::invalid_argument("smith_kernel_mod: ragged matrix");
  if (d == 0) throw std::invalid_argument("smith_kernel_mod: matrix has no columns");

  BigMatrix a(m, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = k[i][j];
  BigMatrix v(d, std::vector<BigInt>(d, 0));  // column operations, A V = U^-1 D
  for (std::size_t i = 0; i < d; ++i) v[i][i] = 1;
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : v) std::swap(row[x], row[y]);
  };
  auto sub_col = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (auto& row : a) row[dst] -= f * row[src];
    for (auto& row : v) row[dst] -= f * row[src];
  };

  std::vector<BigInt> diag;
  const std::size_t steps = std::min(m, d);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      std::size_t bi = m, bj = d;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < d; ++j)
          if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
      if (bi == m) break;
      std::swap(a[t], a[bi]);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt f = floor_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < d; ++j) a[i][j] -= f * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d; ++j) {
        if (a[t][j] == 0) continue;
        sub_col(j, t, floor_div(a[t][j], a[t][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(a[t][t]);
  }

  Lattice basis;
  for (std::size_t t = 0; t < d; ++t) {
    // d_t y_t = 0 mod N  <=>  y_t in (N / gcd(N, d_t)) Z; free beyond the diagonal
    BigInt scale = 1;
    if (t < diag.size()) {
      BigInt g;
      const BigInt nn(N);
      mpz_gcd(g.get_mpz_t(), nn.get_mpz_t(), diag[t].get_mpz_t());
      scale = nn / g;
    }
    DegVec col(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) col[static_cast<Eigen::Index>(i)] = to_int(v[i][t] * scale);
    basis.push_back(col);
  }
  return hermite_normal_form(basis);
}

Lattice rad_q(const QMatrix& q) {
  // f(n, m) = 1 for all m  <=>  k^T n = 0 mod N
  IntMatrix kt(q.d(), std::vector<long>(q.d()));
  for (int i = 0; i < q.d(); ++i)
    for (int j = 0; j < q.d(); ++j) kt[i][j] = q.k(j, i);
  return smith_kernel_mod(kt, q.N());
}

bool in_rad(const QMatrix& q, const DegVec& n) {
  for (int i = 0; i < q.d(); ++i)
    if (f_exponent(q, n, DegVec::Unit(q.d(), i)) != 0) return false;
  return true;
}

}  // namespace divzero
