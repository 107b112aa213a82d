#ifndef RQCF_POLY_MOD_HPP
#define RQCF_POLY_MOD_HPP

#include "rqcf/poly.hpp"

namespace rqcf {

// Dense polynomials over F_p for a word-size prime p, lowest degree first.
// All routines keep vectors trimmed (no trailing zeros).
namespace fp {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly from_int_poly(const IntPoly& f, std::uint64_t p) { return detail::poly_mod_p(f, p); }

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = addmod_u64(x, y, p);
  }
  trim(c);
  return c;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = submod_u64(x, y, p);
  }
  trim(c);
  return c;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = addmod_u64(c[i + j], mulmod_u64(a[i], b[j], p), p);
  }
  trim(c);
  return c;
}

inline Poly scal(const Poly& a, std::uint64_t s, std::uint64_t p) {
  Poly c = a;
  for (auto& v : c) v = mulmod_u64(v, s, p);
  trim(c);
  return c;
}

inline Poly make_monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scal(a, invmod_u64(a.back(), p), p);
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& d, std::uint64_t p) {
  if (d.empty()) throw std::domain_error("fp::divmod: zero divisor");
  Poly r = a;
  if (deg(a) < deg(d)) return {{}, r};
  Poly q(a.size() - d.size() + 1, 0);
  std::uint64_t inv = invmod_u64(d.back(), p);
  for (int i = deg(a) - deg(d); i >= 0; --i) {
    std::size_t top = static_cast<std::size_t>(i) + d.size() - 1;
    if (top >= r.size() || r[top] == 0) continue;
    std::uint64_t c = mulmod_u64(r[top], inv, p);
    q[static_cast<std::size_t>(i)] = c;
    for (std::size_t j = 0; j < d.size(); ++j) {
      std::size_t k = static_cast<std::size_t>(i) + j;
      r[k] = submod_u64(r[k], mulmod_u64(c, d[j], p), p);
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline Poly rem(const Poly& a, const Poly& d, std::uint64_t p) { return divmod(a, d, p).second; }

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

inline Poly powmod(Poly base, Int e, const Poly& mod, std::uint64_t p) {
  Poly r = {1};
  base = rem(base, mod, p);
  while (e > 0) {
    if ((e & 1) != 0) r = rem(mul(r, base, p), mod, p);
    base = rem(mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

inline Poly derivative(const Poly& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  Poly c(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) c[i - 1] = mulmod_u64(a[i], i % p, p);
  trim(c);
  return c;
}

inline bool is_squarefree(const Poly& f, std::uint64_t p) {
  if (f.empty()) return false;
  Poly d = derivative(f, p);
  if (d.empty()) return false;  // p-th power component
  return deg(gcd(f, d, p)) == 0;
}

// Number of irreducible factors of squarefree monic f: nullity of the
// Berlekamp map v -> v^p - v on F_p[x]/(f).
inline int berlekamp_factor_count(const Poly& f, std::uint64_t p) {
  int n = deg(f);
  if (n <= 1) return n;
  Poly xp = powmod(Poly{0, 1}, Int(p), f, p);
  // rows of Q - I, row i = x^{ip} mod f minus e_i
  std::vector<Poly> rows(static_cast<std::size_t>(n));
  Poly cur = {1};
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = cur;
    auto& r = rows[static_cast<std::size_t>(i)];
    if (r.size() < static_cast<std::size_t>(n)) r.resize(static_cast<std::size_t>(n), 0);
    r[static_cast<std::size_t>(i)] = submod_u64(r[static_cast<std::size_t>(i)], 1, p);
    if (i + 1 < n) cur = rem(mul(cur, xp, p), f, p);
  }
  // rank by Gaussian elimination
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r) {
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { piv = r; break; }
    }
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
    auto& pr = rows[static_cast<std::size_t>(rank)];
    std::uint64_t inv = invmod_u64(pr[static_cast<std::size_t>(col)], p);
    for (int j = col; j < n; ++j)
      pr[static_cast<std::size_t>(j)] = mulmod_u64(pr[static_cast<std::size_t>(j)], inv, p);
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      std::uint64_t c = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (c == 0) continue;
      for (int j = col; j < n; ++j) {
        auto& v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        v = submod_u64(v, mulmod_u64(c, pr[static_cast<std::size_t>(j)], p), p);
      }
    }
    ++rank;
  }
  return n - rank;
}

namespace detail_fp {
// null space basis of the Berlekamp map, as polynomials mod f
inline std::vector<Poly> berlekamp_nullspace(const Poly& f, std::uint64_t p) {
  int n = deg(f);
  Poly xp = powmod(Poly{0, 1}, Int(p), f, p);
  std::vector<std::vector<std::uint64_t>> m(static_cast<std::size_t>(n),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  Poly cur = {1};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < static_cast<int>(cur.size()); ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j)];
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        submod_u64(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], 1, p);
    if (i + 1 < n) cur = rem(mul(cur, xp, p), f, p);
  }
  // transpose so kernel vectors are directly combinations of basis rows:
  // we need v with v*(Q - I) = 0, i.e. kernel of the transposed column map
  std::vector<std::vector<std::uint64_t>> a(static_cast<std::size_t>(n),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  // reduced row echelon of a; kernel from free columns
  std::vector<int> pivot_of_col(static_cast<std::size_t>(n), -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(rank)]);
    std::uint64_t inv = invmod_u64(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], p);
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] =
          mulmod_u64(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)], inv, p);
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      std::uint64_t c = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) {
        auto& v = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        v = submod_u64(v, mulmod_u64(c, a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)], p), p);
      }
    }
    pivot_of_col[static_cast<std::size_t>(col)] = rank;
    ++rank;
  }
  std::vector<Poly> basis;
  for (int col = 0; col < n; ++col) {
    if (pivot_of_col[static_cast<std::size_t>(col)] >= 0) continue;
    Poly v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(col)] = 1;
    for (int c2 = 0; c2 < n; ++c2) {
      int pr = pivot_of_col[static_cast<std::size_t>(c2)];
      if (pr < 0) continue;
      std::uint64_t val = a[static_cast<std::size_t>(pr)][static_cast<std::size_t>(col)];
      if (val != 0) v[static_cast<std::size_t>(c2)] = submod_u64(0, val, p);
    }
    trim(v);
    basis.push_back(std::move(v));
  }
  return basis;
}
}  // namespace detail_fp

// Full factorization of a squarefree monic polynomial over F_p (Berlekamp with
// random splitting); deterministic via a fixed-seed generator.
inline std::vector<Poly> factor_squarefree_monic(const Poly& f, std::uint64_t p) {
  int n = deg(f);
  if (n <= 0) throw std::domain_error("factor_squarefree_monic: constant input");
  if (n == 1) return {f};
  auto null_basis = detail_fp::berlekamp_nullspace(f, p);
  std::size_t r = null_basis.size();
  std::vector<Poly> factors = {f};
  if (r <= 1) return factors;
  SplitMix64 rng(0xfac70e5ull ^ p ^ (static_cast<std::uint64_t>(n) << 32));
  Int half = (Int(p) - 1) / 2;
  while (factors.size() < r) {
    // random combination of null space vectors
    Poly v;
    for (const auto& b : null_basis) {
      v = add(v, scal(b, rng.below(p), p), p);
    }
    if (deg(v) <= 0) continue;
    std::vector<Poly> next;
    for (const auto& g : factors) {
      Poly w = rem(v, g, p);
      if (deg(w) <= 0) { next.push_back(g); continue; }
      Poly h = powmod(w, half, g, p);
      if (!h.empty()) h[0] = submod_u64(h[0], 1, p);
      trim(h);
      Poly d = gcd(g, h, p);
      if (deg(d) <= 0 || deg(d) == deg(g)) {
        next.push_back(g);
      } else {
        Poly q = divmod(g, d, p).first;
        next.push_back(make_monic(d, p));
        next.push_back(make_monic(q, p));
      }
    }
    factors = std::move(next);
    if (factors.size() > r) throw std::logic_error("berlekamp: factor count overshoot");
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace fp

}  // namespace rqcf

#endif  // RQCF_POLY_MOD_HPP
