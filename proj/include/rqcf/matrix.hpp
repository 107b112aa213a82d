#ifndef RQCF_MATRIX_HPP
#define RQCF_MATRIX_HPP

#include "rqcf/poly.hpp"

#include <mutex>
#include <optional>
#include <thread>

namespace rqcf {

// Dense rectangular matrix over the rationals (row major).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols, Rat fill = Rat(0))
      : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
    if (rows < 0 || cols < 0) throw std::domain_error("ExactMatrix: negative dimension");
  }
  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static ExactMatrix from_int(int rows, int cols, std::initializer_list<long long> vals) {
    ExactMatrix m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = Rat(*it++);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(int i, int j) {
    check(i, j);
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
  }
  const Rat& operator()(int i, int j) const {
    check(i, j);
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
  }

  bool operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("matrix product: shape mismatch");
    ExactMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Rat& av = a(i, k);
        if (av == 0) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const Rat& bv = b(k, j);
          if (bv != 0) c(i, j) += av * bv;
        }
      }
    return c;
  }
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::domain_error("matrix sum: shape mismatch");
    ExactMatrix c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
    return c;
  }
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::domain_error("matrix diff: shape mismatch");
    ExactMatrix c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= b.e_[i];
    return c;
  }

  bool is_zero() const {
    for (const Rat& v : e_)
      if (v != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (const Rat& v : e_)
      if (denominator(v) != 1) return false;
    return true;
  }
  Int denominator_lcm() const {
    Int d = 1;
    for (const Rat& v : e_) d = lcm_int(d, denominator(v));
    return d;
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("ExactMatrix: index out of range");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

// Integer matrix; used by Smith form, CRT characteristic polynomial, forms.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, Int fill = Int(0))
      : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}
  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }
  const Int& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("matrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Int& av = a(i, k);
        if (av == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += av * b(k, j);
      }
    return c;
  }
  ExactMatrix to_rational() const {
    ExactMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = Rat((*this)(i, j));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

inline IntMatrix to_integer_scaled(const ExactMatrix& m, Int& den_out) {
  Int d = m.denominator_lcm();
  IntMatrix a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * Rat(d);
      a(i, j) = numerator(v);
    }
  den_out = d;
  return a;
}

// ---- characteristic polynomial ---------------------------------------------

enum class CharPolyMethod { automatic, fraction_free, crt };

namespace detail_mat {

// Samuelson-Berkowitz: division free, exact over Z
inline IntPoly charpoly_berkowitz(const IntMatrix& a) {
  int n = a.rows();
  if (n == 0) return IntPoly{1};
  // vector of charpoly coefficients of the leading principal minor, highest first
  std::vector<Int> c = {Int(1), -a(0, 0)};
  for (int m = 1; m < n; ++m) {
    // Toeplitz column: [1, -a_mm, -(R*v), -(R*A*v), ...] where R is the row
    // (a_m0..a_m,m-1), v the column (a_0m..a_m-1,m), A the leading m x m block
    std::vector<Int> col(static_cast<std::size_t>(m) + 2);
    col[0] = 1;
    col[1] = -a(m, m);
    std::vector<Int> w(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = a(i, m);
    for (int k = 2; k <= m + 1; ++k) {
      Int dot = 0;
      for (int i = 0; i < m; ++i) dot += a(m, i) * w[static_cast<std::size_t>(i)];
      col[static_cast<std::size_t>(k)] = -dot;
      if (k <= m) {
        std::vector<Int> w2(static_cast<std::size_t>(m), Int(0));
        for (int i = 0; i < m; ++i) {
          if (w[static_cast<std::size_t>(i)] == 0) continue;
          for (int r = 0; r < m; ++r) w2[static_cast<std::size_t>(r)] += a(r, i) * w[static_cast<std::size_t>(i)];
        }
        w = std::move(w2);
      }
    }
    // multiply the Toeplitz operator into c
    std::vector<Int> nc(c.size() + 1, Int(0));
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == 0) continue;
      for (std::size_t j = 0; j < c.size(); ++j) nc[i + j] += col[i] * c[j];
    }
    nc.resize(static_cast<std::size_t>(m) + 2);
    c = std::move(nc);
  }
  std::vector<Int> coeffs(c.rbegin(), c.rend());  // store lowest degree first
  return IntPoly(std::move(coeffs));
}

// characteristic polynomial mod p via Hessenberg form
inline std::vector<std::uint64_t> charpoly_mod_p(const IntMatrix& a, std::uint64_t p) {
  int n = a.rows();
  std::vector<std::vector<std::uint64_t>> h(static_cast<std::size_t>(n),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<std::uint64_t>(fmod_pos(a(i, j), Int(p)));
  // reduce to upper Hessenberg by similarity transforms
  for (int m = 1; m < n - 1; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (h[static_cast<std::size_t>(i)][static_cast<std::size_t>(m - 1)] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != m) {
      std::swap(h[static_cast<std::size_t>(piv)], h[static_cast<std::size_t>(m)]);
      for (int i = 0; i < n; ++i)
        std::swap(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(piv)],
                  h[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]);
    }
    std::uint64_t inv = invmod_u64(h[static_cast<std::size_t>(m)][static_cast<std::size_t>(m - 1)], p);
    for (int i = m + 1; i < n; ++i) {
      std::uint64_t u = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(m - 1)];
      if (u == 0) continue;
      std::uint64_t t = mulmod_u64(u, inv, p);
      // row_i -= t * row_m ; col_m += t * col_i
      for (int j = m - 1; j < n; ++j)
        h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            submod_u64(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                       mulmod_u64(t, h[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)], p), p);
      for (int j = 0; j < n; ++j)
        h[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] =
            addmod_u64(h[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)],
                       mulmod_u64(t, h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], p), p);
    }
  }
  // recurrence on leading minors of xI - H
  std::vector<std::vector<std::uint64_t>> ps(static_cast<std::size_t>(n) + 1);
  ps[0] = {1};
  for (int m = 1; m <= n; ++m) {
    const auto& pm1 = ps[static_cast<std::size_t>(m - 1)];
    std::vector<std::uint64_t> cur(pm1.size() + 1, 0);
    std::uint64_t d = h[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(m - 1)];
    for (std::size_t i = 0; i < pm1.size(); ++i) {
      cur[i + 1] = addmod_u64(cur[i + 1], pm1[i], p);                    // x * p_{m-1}
      cur[i] = submod_u64(cur[i], mulmod_u64(d, pm1[i], p), p);          // -h_mm * p_{m-1}
    }
    std::uint64_t prod = 1;
    for (int i = 1; i < m; ++i) {
      // term: -h_{m-i-1, m-1} * prod(subdiag) * p_{m-i-1}
      prod = mulmod_u64(prod, h[static_cast<std::size_t>(m - i)][static_cast<std::size_t>(m - i - 1)], p);
      std::uint64_t coef = mulmod_u64(prod, h[static_cast<std::size_t>(m - i - 1)][static_cast<std::size_t>(m - 1)], p);
      if (coef == 0) continue;
      const auto& pk = ps[static_cast<std::size_t>(m - i - 1)];
      for (std::size_t j = 0; j < pk.size(); ++j)
        cur[j] = submod_u64(cur[j], mulmod_u64(coef, pk[j], p), p);
    }
    ps[static_cast<std::size_t>(m)] = std::move(cur);
  }
  return ps[static_cast<std::size_t>(n)];
}
}  // namespace detail_mat

// det(xI - M), exact; fraction-free Berkowitz by default, multi-modular CRT
// (parallel over primes) for larger matrices.
inline IntPoly char_poly(const ExactMatrix& m, CharPolyMethod method = CharPolyMethod::automatic) {
  if (!m.is_square()) throw std::domain_error("char_poly: matrix must be square");
  int n = m.rows();
  if (n == 0) return IntPoly{1};
  Int den = 1;
  IntMatrix a = to_integer_scaled(m, den);
  bool use_crt = method == CharPolyMethod::crt ||
                 (method == CharPolyMethod::automatic && n > 64);
  IntPoly char_a;
  if (!use_crt) {
    char_a = detail_mat::charpoly_berkowitz(a);
  } else {
    // rigorous coefficient bound: every coefficient of char(A) is bounded by
    // prod_i (1 + ||row_i||_2)
    Int bound = 1;
    for (int i = 0; i < n; ++i) {
      Int s = 0;
      for (int j = 0; j < n; ++j) s += a(i, j) * a(i, j);
      bound *= isqrt(s) + 2;
    }
    Int need = 2 * bound + 1;
    std::vector<std::uint64_t> primes;
    {
      std::uint64_t q = (1ull << 62) - 57;
      Int have = 1;
      while (have < need) {
        while (!detail::miller_rabin_u64(q)) --q;
        if (den % q != 0) {
          primes.push_back(q);
          have *= q;
        }
        --q;
      }
    }
    std::vector<std::vector<std::uint64_t>> residues(primes.size());
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t next = 0;
    std::mutex mtx;
    auto worker = [&]() {
      while (true) {
        std::size_t idx;
        {
          std::lock_guard<std::mutex> lk(mtx);
          if (next >= primes.size()) return;
          idx = next++;
        }
        residues[idx] = detail_mat::charpoly_mod_p(a, primes[idx]);
      }
    };
    std::vector<std::thread> threads;
    unsigned nt = std::min<unsigned>(hw, static_cast<unsigned>(primes.size()));
    for (unsigned t = 0; t + 1 < nt; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    std::vector<Int> coeffs(static_cast<std::size_t>(n) + 1, Int(0));
    Int modulus = 1;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      Int p(primes[k]);
      for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
        Int r = i < residues[k].size() ? Int(residues[k][i]) : Int(0);
        coeffs[i] = (k == 0) ? r : crt_pair(coeffs[i], modulus, r, p);
      }
      modulus *= p;
    }
    for (Int& v : coeffs) v = symmetric_lift(v, modulus);
    char_a = IntPoly(std::move(coeffs));
  }
  if (den == 1) return char_a;
  // char_M(x) = den^-n * char_A(den*x): coefficient k picks up den^(k-n)
  std::vector<Int> c(char_a.coeffs());
  Int pw = 1;  // den^(n-k)
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] % pw != 0) throw std::logic_error("char_poly: scaling produced a non-integer coefficient");
    c[k] /= pw;
    pw *= den;
  }
  return IntPoly(std::move(c));
}

inline IntPoly char_poly(const IntMatrix& a, CharPolyMethod method = CharPolyMethod::automatic) {
  return char_poly(a.to_rational(), method);
}

// ---- Smith normal form ------------------------------------------------------

// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
inline std::vector<Int> smith_normal_form(IntMatrix a) {
  int rows = a.rows(), cols = a.cols();
  int t = 0;
  std::vector<Int> divisors;
  while (t < rows && t < cols) {
    // locate smallest nonzero entry in the remaining block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        Int v = abs_int(a(i, j));
        if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
      }
    if (pi < 0) break;  // all zero
    // move pivot to (t, t)
    if (pi != t)
      for (int j = 0; j < cols; ++j) std::swap(a(t, j), a(pi, j));
    if (pj != t)
      for (int i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      Int q = a(i, t) / a(t, t);
      if (q != 0)
        for (int j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
      if (a(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      Int q = a(t, j) / a(t, t);
      if (q != 0)
        for (int i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
      if (a(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // pivot shrank; repeat with the same t
    // ensure pivot divides every remaining entry
    bool fixed = false;
    for (int i = t + 1; i < rows && !fixed; ++i)
      for (int j = t + 1; j < cols && !fixed; ++j)
        if (a(i, j) % a(t, t) != 0) {
          for (int jj = t; jj < cols; ++jj) a(t, jj) += a(i, jj);
          fixed = true;
        }
    if (fixed) continue;
    divisors.push_back(abs_int(a(t, t)));
    ++t;
  }
  // enforce the divisibility chain (defensive; the loop already guarantees it)
  for (std::size_t i = 0; i + 1 < divisors.size(); ++i) {
    if (divisors[i + 1] % divisors[i] != 0) throw std::logic_error("smith_normal_form: chain violated");
  }
  return divisors;
}

// ---- reduced row echelon, kernel, solving -----------------------------------

struct Rref {
  ExactMatrix mat;
  std::vector<int> pivot_cols;
  int rank = 0;
};

inline Rref rref(ExactMatrix a) {
  int rows = a.rows(), cols = a.cols();
  Rref out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    Rat inv = Rat(1) / a(r, c);
    for (int j = c; j < cols; ++j) a(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Rat f = a(i, c);
      if (f == 0) continue;
      for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.mat = std::move(a);
  return out;
}

// basis of the right kernel, one column per free variable, entries scaled to
// integers with content 1
inline ExactMatrix kernel_basis(const ExactMatrix& a) {
  Rref rr = rref(a);
  int cols = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  int k = cols - rr.rank;
  ExactMatrix basis(cols, k);
  int idx = 0;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    basis(c, idx) = 1;
    for (int r = 0; r < rr.rank; ++r) {
      int pc = rr.pivot_cols[static_cast<std::size_t>(r)];
      basis(pc, idx) = -rr.mat(r, c);
    }
    // clear denominators columnwise
    Int den = 1;
    for (int i = 0; i < cols; ++i) den = lcm_int(den, denominator(basis(i, idx)));
    if (den != 1)
      for (int i = 0; i < cols; ++i) basis(i, idx) *= Rat(den);
    Int g = 0;
    for (int i = 0; i < cols; ++i) g = gcd_int(g, numerator(basis(i, idx)));
    if (g > 1)
      for (int i = 0; i < cols; ++i) basis(i, idx) /= Rat(g);
    ++idx;
  }
  return basis;
}

// Solve B * x = w for x where B has full column rank; returns nullopt when w
// is outside the column span. The row transform U with U*[B|I] = [rref(B)|U]
// is computed once, then solves are matrix-vector products.
class ColumnSolver {
 public:
  explicit ColumnSolver(const ExactMatrix& b) : n_(b.rows()), k_(b.cols()) {
    ExactMatrix bi(n_, k_ + n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < k_; ++j) bi(i, j) = b(i, j);
      bi(i, k_ + i) = 1;
    }
    full_ = rref(std::move(bi));
    for (int i = 0; i < k_; ++i) {
      if (i >= static_cast<int>(full_.pivot_cols.size()) || full_.pivot_cols[static_cast<std::size_t>(i)] != i)
        throw std::domain_error("ColumnSolver: matrix has deficient column rank");
    }
  }

  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& w) const {
    std::vector<Rat> tw(static_cast<std::size_t>(n_), Rat(0));
    for (int i = 0; i < n_; ++i) {
      Rat s = 0;
      for (int j = 0; j < n_; ++j) {
        const Rat& u = full_.mat(i, k_ + j);
        if (u != 0 && w[static_cast<std::size_t>(j)] != 0) s += u * w[static_cast<std::size_t>(j)];
      }
      tw[static_cast<std::size_t>(i)] = s;
    }
    for (int r = k_; r < n_; ++r)
      if (tw[static_cast<std::size_t>(r)] != 0) return std::nullopt;
    tw.resize(static_cast<std::size_t>(k_));
    return tw;
  }

 private:
  int n_, k_;
  Rref full_;
};

}  // namespace rqcf

#endif  // RQCF_MATRIX_HPP
