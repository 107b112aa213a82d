#ifndef RQCF_INTEGERS_HPP
#define RQCF_INTEGERS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rqcf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs_int(const Int& a) { return boost::multiprecision::abs(a); }

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

// g = a*x + b*y
inline Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  x = old_s; y = old_t;
  return old_r;
}

// floor(a/b) for b != 0
inline Int fdiv(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("fdiv: division by zero");
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int fmod_pos(const Int& a, const Int& b) {  // representative in [0, |b|)
  Int m = a % b;
  if (m < 0) m += abs_int(b);
  return m;
}

// inverse of a mod m, m > 1, gcd(a, m) = 1
inline Int inv_mod(const Int& a, const Int& m) {
  Int x, y;
  Int g = xgcd(fmod_pos(a, m), m, x, y);
  if (g != 1) throw std::domain_error("inv_mod: arguments not coprime");
  return fmod_pos(x, m);
}

inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

// ---- word-size modular arithmetic -----------------------------------------

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t addmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a %= m; b %= m;
  std::uint64_t s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline std::uint64_t submod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a %= m; b %= m;
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  // p prime
  return powmod_u64(a % p, p - 2, p);
}

// deterministic splittable generator for reproducible randomized routines
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// ---- primality and factorization -------------------------------------------

namespace detail {
constexpr std::uint64_t kTrialLimit = 10'000'000ull;

inline bool miller_rabin_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

inline bool miller_rabin_big(const Int& n) {
  // fixed witness set; deterministic for n < 3.3e24, a strong test beyond
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    Int x = boost::multiprecision::powm(Int(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}
}  // namespace detail

// deterministic trial division up to 1e7, fixed-witness Miller-Rabin beyond
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if ((n & 1) == 0) return n == 2;
  std::uint64_t bound = detail::kTrialLimit;
  Int r = isqrt(n);
  bool trial_complete = r < bound;
  std::uint64_t lim = trial_complete ? static_cast<std::uint64_t>(r) : bound;
  for (std::uint64_t d = 3; d <= lim; d += 2) {
    if (n % d == 0) return false;
  }
  if (trial_complete) return true;
  if (n <= std::numeric_limits<std::uint64_t>::max())
    return detail::miller_rabin_u64(static_cast<std::uint64_t>(n));
  return detail::miller_rabin_big(n);
}

using PrimeFactorization = std::vector<std::pair<Int, int>>;

namespace detail {
inline std::uint64_t pollard_brent(std::uint64_t n, SplitMix64& rng) {
  if ((n & 1) == 0) return 2;
  while (true) {
    std::uint64_t y = rng.below(n - 2) + 1, c = rng.below(n - 2) + 1, m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = addmod_u64(mulmod_u64(y, y, n), c, n);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = addmod_u64(mulmod_u64(y, y, n), c, n);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = addmod_u64(mulmod_u64(ys, ys, n), c, n);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

inline void factor_rec_u64(std::uint64_t n, std::vector<Int>& out, SplitMix64& rng) {
  if (n == 1) return;
  if (miller_rabin_u64(n)) { out.emplace_back(n); return; }
  std::uint64_t d = pollard_brent(n, rng);
  factor_rec_u64(d, out, rng);
  factor_rec_u64(n / d, out, rng);
}
}  // namespace detail

inline PrimeFactorization factor_integer(const Int& n_in) {
  if (n_in < 1) throw std::domain_error("factor_integer: argument must be positive");
  Int n = n_in;
  PrimeFactorization out;
  auto push = [&out](const Int& p) {
    if (!out.empty() && out.back().first == p) ++out.back().second;
    else out.emplace_back(p, 1);
  };
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    while (n % d == 0) { push(Int(d)); n /= d; }
  }
  static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t d = 7;
  int wi = 0;
  while (d <= detail::kTrialLimit && Int(d) * d <= n) {
    while (n % d == 0) { push(Int(d)); n /= d; }
    d += wheel[wi];
    wi = (wi + 1) & 7;
  }
  if (n > 1) {
    if (is_prime(n)) {
      push(n);
    } else if (n <= std::numeric_limits<std::uint64_t>::max()) {
      SplitMix64 rng(0x5eedu);
      std::vector<Int> primes;
      detail::factor_rec_u64(static_cast<std::uint64_t>(n), primes, rng);
      std::sort(primes.begin(), primes.end());
      for (const Int& p : primes) push(p);
    } else {
      // cofactor beyond both trial range and the word-size rho; out of scope here
      throw std::domain_error("factor_integer: composite cofactor too large");
    }
  }
  return out;
}

inline Int unfactor(const PrimeFactorization& f) {
  Int n = 1;
  for (const auto& [p, e] : f)
    for (int i = 0; i < e; ++i) n *= p;
  return n;
}

inline bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor_integer(abs_int(n)))
    if (e > 1) return false;
  return true;
}

// n = square_part^2 * squarefree_part, sign carried by squarefree_part
inline std::pair<Int, Int> squarefree_decompose(const Int& n) {
  if (n == 0) throw std::domain_error("squarefree_decompose: zero argument");
  Int sf = n < 0 ? -1 : 1, sq = 1;
  for (const auto& [p, e] : factor_integer(abs_int(n))) {
    for (int i = 0; i + 1 < e; i += 2) sq *= p;
    if (e & 1) sf *= p;
  }
  return {sf, sq};
}

// Kronecker symbol (a|n), total for n != 0
inline int kronecker_symbol(const Int& a_in, const Int& n_in) {
  if (n_in == 0) throw std::domain_error("kronecker_symbol: n must be nonzero");
  Int a = a_in, n = n_in;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  if (n == 1) return result;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  // factor out twos of n using the (a|2) rule
  int v = 0;
  while ((n & 1) == 0) { n >>= 1; ++v; }
  if (v & 1) {
    Int am8 = fmod_pos(a, 8);
    if (am8 == 1 || am8 == 7) { /* +1 */ }
    else if (am8 == 3 || am8 == 5) result = -result;
    else return 0;  // a even
  }
  a = fmod_pos(a, n);
  while (a != 0) {
    int w = 0;
    while ((a & 1) == 0) { a >>= 1; ++w; }
    if (w & 1) {
      Int nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    // quadratic reciprocity for odd positive a, n
    if ((a % 4) == 3 && (n % 4) == 3) result = -result;
    Int t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? result : 0;
}

inline std::vector<std::int64_t> primes_below(std::int64_t limit) {
  std::vector<bool> sieve(static_cast<std::size_t>(std::max<std::int64_t>(limit, 2)), true);
  std::vector<std::int64_t> ps;
  for (std::int64_t i = 2; i < limit; ++i) {
    if (!sieve[static_cast<std::size_t>(i)]) continue;
    ps.push_back(i);
    for (std::int64_t j = i * i; j < limit; j += i) sieve[static_cast<std::size_t>(j)] = false;
  }
  return ps;
}

// Garner-style pairwise CRT; moduli coprime
inline Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
  Int x, y;
  Int g = xgcd(m1, m2, x, y);
  if (g != 1) throw std::domain_error("crt_pair: moduli not coprime");
  Int m = m1 * m2;
  Int res = fmod_pos(r1 + m1 * fmod_pos((r2 - r1) * x, m2), m);
  return res;
}

// lift r mod m into (-m/2, m/2]
inline Int symmetric_lift(const Int& r, const Int& m) {
  Int x = fmod_pos(r, m);
  if (2 * x > m) x -= m;
  return x;
}

inline std::string to_string(const Int& n) { return n.str(); }

}  // namespace rqcf

#endif  // RQCF_INTEGERS_HPP
