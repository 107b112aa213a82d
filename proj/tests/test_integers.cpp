#include "rqcf/integers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rqcf;

namespace {

// brute-force Legendre symbol for odd prime p: counts quadratic residues
int legendre_brute(long long a, long long p) {
  long long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long long x = 1; x < p; ++x)
    if ((x * x) % p == r) return 1;
  return -1;
}

}  // namespace

TEST_CASE("kronecker symbol basic values") {
  CHECK(kronecker_symbol(-15, 2) == 1);  // -15 = 1 mod 8
  CHECK(kronecker_symbol(56, 2) == 0);
  for (long long a : {-7, -2, 0, 1, 3, 10, 123456})
    CHECK(kronecker_symbol(a, 1) == 1);
  CHECK_THROWS_AS(kronecker_symbol(5, 0), std::domain_error);
}

TEST_CASE("kronecker symbol agrees with Legendre for odd primes") {
  for (long long p : {3, 5, 7, 11, 13, 17, 19, 23, 29}) {
    for (long long a = -30; a <= 30; ++a) {
      CAPTURE(a, p);
      CHECK(kronecker_symbol(a, p) == legendre_brute(a, p));
    }
  }
}

TEST_CASE("kronecker symbol multiplicative in both arguments") {
  SplitMix64 rng(7);
  for (int t = 0; t < 400; ++t) {
    long long a = rng.range(-300, 300);
    long long b = rng.range(-300, 300);
    long long n = rng.range(-300, 300);
    if (n == 0) continue;
    CAPTURE(a, b, n);
    CHECK(kronecker_symbol(a, n) * kronecker_symbol(b, n) ==
          kronecker_symbol(Int(a) * b, n));
    long long m = rng.range(-300, 300);
    if (m == 0) continue;
    CHECK(kronecker_symbol(a, n) * kronecker_symbol(a, m) ==
          kronecker_symbol(a, Int(n) * m));
  }
}

TEST_CASE("factor_integer examples and round trip") {
  CHECK(factor_integer(1).empty());
  CHECK(factor_integer(8) == PrimeFactorization{{2, 3}});
  CHECK(factor_integer(60) == PrimeFactorization{{2, 2}, {3, 1}, {5, 1}});
  CHECK_THROWS_AS(factor_integer(0), std::domain_error);

  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Int n = Int(rng.next() % 1000000000ull) + 1;
    auto f = factor_integer(n);
    CHECK(unfactor(f) == n);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i].first < f[i + 1].first);
    for (const auto& [p, e] : f) {
      CHECK(is_prime(p));
      CHECK(e >= 1);
    }
  }
}

TEST_CASE("primality spot checks") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(1000000016000000063ll));  // 1000000007 * 1000000009
  CHECK(is_prime(Int("1000000007")));
  CHECK(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
}

TEST_CASE("squarefree decomposition of integers") {
  auto [sf, sq] = squarefree_decompose(Int(3584));
  CHECK(sf * sq * sq == 3584);
  CHECK(is_squarefree(sf));
  CHECK(squarefree_decompose(Int(-12)) == std::pair<Int, Int>{Int(-3), Int(2)});
  CHECK(is_squarefree(14));
  CHECK_FALSE(is_squarefree(18));
}

TEST_CASE("xgcd and modular inverse") {
  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    Int a = rng.range(-100000, 100000), b = rng.range(-100000, 100000);
    Int x, y;
    Int g = xgcd(a, b, x, y);
    CHECK(g == gcd_int(a, b) * (gcd_int(a, b) == 0 ? 0 : 1));
    CHECK(a * x + b * y == g);
  }
  CHECK(inv_mod(3, 7) == 5);
  CHECK_THROWS_AS(inv_mod(2, 4), std::domain_error);
}

TEST_CASE("floor division and symmetric lift") {
  CHECK(fdiv(7, 2) == 3);
  CHECK(fdiv(-7, 2) == -4);
  CHECK(fdiv(7, -2) == -4);
  CHECK(fdiv(-7, -2) == 3);
  CHECK(symmetric_lift(9, 10) == -1);
  CHECK(symmetric_lift(5, 10) == 5);
  CHECK(symmetric_lift(6, 10) == -4);
}

TEST_CASE("crt pair") {
  Int r = crt_pair(2, 3, 3, 5);
  CHECK(fmod_pos(r, 3) == 2);
  CHECK(fmod_pos(r, 5) == 3);
}
