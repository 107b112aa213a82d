#ifndef RQCF_POLY_FACTOR_HPP
#define RQCF_POLY_FACTOR_HPP

#include "rqcf/poly_mod.hpp"

#include <bitset>
#include <optional>

namespace rqcf {

namespace detail_factor {

constexpr std::size_t kMaxDeg = 2048;
using DegSet = std::bitset<kMaxDeg>;

// ---- Z/m[x] helpers, coefficients kept in the symmetric range ---------------

using ZmPoly = std::vector<Int>;

inline void reduce_sym(ZmPoly& a, const Int& m) {
  for (Int& v : a) v = symmetric_lift(v, m);
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZmPoly zm_from(const IntPoly& f, const Int& m) {
  ZmPoly a(f.coeffs().begin(), f.coeffs().end());
  reduce_sym(a, m);
  return a;
}

inline IntPoly zm_to_poly(const ZmPoly& a) { return IntPoly(std::vector<Int>(a.begin(), a.end())); }

inline ZmPoly zm_mul(const ZmPoly& a, const ZmPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZmPoly c(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  reduce_sym(c, m);
  return c;
}

inline ZmPoly zm_add(const ZmPoly& a, const ZmPoly& b, const Int& m) {
  ZmPoly c(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] += b[i];
  }
  reduce_sym(c, m);
  return c;
}

inline ZmPoly zm_sub(const ZmPoly& a, const ZmPoly& b, const Int& m) {
  ZmPoly c(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] -= b[i];
  }
  reduce_sym(c, m);
  return c;
}

// divisor must be monic
inline std::pair<ZmPoly, ZmPoly> zm_divmod_monic(const ZmPoly& a, const ZmPoly& d, const Int& m) {
  if (d.empty() || d.back() != 1) throw std::domain_error("zm_divmod_monic: divisor not monic");
  ZmPoly r = a;
  if (r.size() < d.size()) return {{}, r};
  ZmPoly q(r.size() - d.size() + 1, Int(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    std::size_t top = i + d.size() - 1;
    if (top >= r.size()) continue;
    Int c = symmetric_lift(r[top], m);
    if (c == 0) continue;
    q[i] = c;
    for (std::size_t j = 0; j < d.size(); ++j) r[i + j] -= c * d[j];
    r[top] = 0;
  }
  reduce_sym(q, m);
  reduce_sym(r, m);
  return {q, r};
}

// one quadratic Hensel step: modulus m -> m^2 (von zur Gathen & Gerhard 15.10)
struct HenselPair {
  ZmPoly g, h, s, t;
};

inline void hensel_step(const IntPoly& f, HenselPair& gp, const Int& m) {
  Int m2 = m * m;
  ZmPoly fz = zm_from(f, m2);
  ZmPoly e = zm_sub(fz, zm_mul(gp.g, gp.h, m2), m2);
  auto [q, r] = zm_divmod_monic(zm_mul(gp.s, e, m2), gp.h, m2);
  ZmPoly gstar = zm_add(gp.g, zm_add(zm_mul(gp.t, e, m2), zm_mul(q, gp.g, m2), m2), m2);
  ZmPoly hstar = zm_add(gp.h, r, m2);
  ZmPoly b = zm_sub(zm_add(zm_mul(gp.s, gstar, m2), zm_mul(gp.t, hstar, m2), m2), ZmPoly{Int(1)}, m2);
  auto [c, d] = zm_divmod_monic(zm_mul(gp.s, b, m2), hstar, m2);
  ZmPoly sstar = zm_sub(gp.s, d, m2);
  ZmPoly tstar = zm_sub(gp.t, zm_add(zm_mul(gp.t, b, m2), zm_mul(c, gstar, m2), m2), m2);
  gp = {std::move(gstar), std::move(hstar), std::move(sstar), std::move(tstar)};
}

// extended euclid over F_p: s*a + t*b = 1 for coprime a, b
inline std::pair<fp::Poly, fp::Poly> fp_xgcd_coprime(const fp::Poly& a, const fp::Poly& b,
                                                     std::uint64_t p) {
  fp::Poly r0 = a, r1 = b;
  fp::Poly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = fp::divmod(r0, r1, p);
    fp::Poly s2 = fp::sub(s0, fp::mul(q, s1, p), p);
    fp::Poly t2 = fp::sub(t0, fp::mul(q, t1, p), p);
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (fp::deg(r0) != 0) throw std::domain_error("fp_xgcd_coprime: inputs not coprime");
  std::uint64_t inv = invmod_u64(r0[0], p);
  return {fp::scal(s0, inv, p), fp::scal(t0, inv, p)};
}

inline ZmPoly zm_from_fp(const fp::Poly& a) {
  ZmPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(a[i]);
  return r;
}

// lift monic f = prod(factors) from mod p to mod p^2^j >= target (recursive tree)
inline std::vector<ZmPoly> multifactor_hensel(const IntPoly& f, const std::vector<fp::Poly>& facs,
                                              std::size_t lo, std::size_t hi, std::uint64_t p,
                                              const Int& target) {
  if (hi - lo == 1) {
    Int m = p;
    while (m < target) m *= m;
    return {zm_from(f, m)};
  }
  std::size_t mid = lo + (hi - lo) / 2;
  fp::Poly gp_ = {1}, hp_ = {1};
  for (std::size_t i = lo; i < mid; ++i) gp_ = fp::mul(gp_, facs[i], p);
  for (std::size_t i = mid; i < hi; ++i) hp_ = fp::mul(hp_, facs[i], p);
  auto [sp_, tp_] = fp_xgcd_coprime(gp_, hp_, p);
  HenselPair pair{zm_from_fp(gp_), zm_from_fp(hp_), zm_from_fp(sp_), zm_from_fp(tp_)};
  Int m = p;
  while (m < target) {
    hensel_step(f, pair, m);
    m *= m;
  }
  IntPoly g = zm_to_poly(pair.g), h = zm_to_poly(pair.h);
  auto left = multifactor_hensel(g, facs, lo, mid, p, target);
  auto right = multifactor_hensel(h, facs, mid, hi, p, target);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

struct ModularSetup {
  std::uint64_t p = 0;
  std::vector<fp::Poly> factors;  // monic, squarefree split of f mod p
  DegSet degree_sums;             // subset sums of modular degrees
};

inline DegSet subset_degree_sums(const std::vector<fp::Poly>& facs) {
  DegSet s;
  s.set(0);
  for (const auto& g : facs) {
    int d = fp::deg(g);
    s |= s << static_cast<std::size_t>(d);
  }
  return s;
}

// pick a prime where f stays squarefree, preferring few modular factors
inline ModularSetup choose_prime_and_factor(const IntPoly& f, int n_candidates,
                                            std::vector<DegSet>* extra_degree_sets) {
  std::uint64_t p = (1ull << 59) + 11;
  auto next_prime = [](std::uint64_t q) {
    do { ++q; } while (!detail::miller_rabin_u64(q));
    return q;
  };
  std::vector<std::pair<int, std::uint64_t>> counted;
  int tried = 0;
  while (tried < n_candidates) {
    p = next_prime(p);
    if (f.lc() % p == 0) continue;
    fp::Poly fm = fp::make_monic(fp::from_int_poly(f, p), p);
    if (!fp::is_squarefree(fm, p)) continue;
    counted.emplace_back(fp::berlekamp_factor_count(fm, p), p);
    ++tried;
  }
  std::sort(counted.begin(), counted.end());
  ModularSetup best;
  best.p = counted.front().second;
  fp::Poly fm = fp::make_monic(fp::from_int_poly(f, best.p), best.p);
  best.factors = fp::factor_squarefree_monic(fm, best.p);
  best.degree_sums = subset_degree_sums(best.factors);
  if (extra_degree_sets) {
    // degree sets from the runner-up primes sharpen recombination pruning
    for (std::size_t i = 1; i < counted.size() && i < 3; ++i) {
      std::uint64_t q = counted[i].second;
      fp::Poly fq = fp::make_monic(fp::from_int_poly(f, q), q);
      extra_degree_sets->push_back(subset_degree_sums(fp::factor_squarefree_monic(fq, q)));
    }
  }
  return best;
}

struct RecombineOptions {
  int max_factor_degree = -1;      // -1: unrestricted (full factorization)
  std::uint64_t budget = 80'000'000;  // subset tests before giving up
};

// Zassenhaus recombination of lifted modular factors. Returns the irreducible
// factors found; on the unrestricted path the leftover (if any) is appended as
// one irreducible factor, on the restricted path it is returned as cofactor.
struct RecombineResult {
  std::vector<IntPoly> factors;
  std::optional<IntPoly> cofactor;  // set only in restricted mode
};

inline RecombineResult recombine(IntPoly f, std::vector<IntPoly> lifted, const Int& pl,
                                 const DegSet& allowed, const RecombineOptions& opt) {
  RecombineResult out;
  std::vector<int> alive(lifted.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
  std::uint64_t tests = 0;
  bool restricted = opt.max_factor_degree >= 0;

  auto factor_degree = [&](int idx) { return lifted[static_cast<std::size_t>(idx)].degree(); };

  // in restricted mode the remaining polynomial can drop below the cap; the
  // caller finishes it with the unrestricted path
  auto done = [&]() {
    if (restricted)
      return alive.empty() || f.degree() <= opt.max_factor_degree;
    return false;
  };

  int card = 1;
  while (!done() && (restricted ? card <= std::min<int>(opt.max_factor_degree, static_cast<int>(alive.size()))
                                : 2 * card <= static_cast<int>(alive.size()))) {
    int k = static_cast<int>(alive.size());
    std::vector<int> comb(static_cast<std::size_t>(card));
    for (int i = 0; i < card; ++i) comb[static_cast<std::size_t>(i)] = i;
    bool removed = false;
    while (true) {
      int degsum = 0;
      for (int i : comb) degsum += factor_degree(alive[static_cast<std::size_t>(i)]);
      bool degree_ok = degsum < static_cast<int>(kMaxDeg) &&
                       allowed.test(static_cast<std::size_t>(degsum)) &&
                       (restricted ? degsum <= opt.max_factor_degree : 2 * degsum <= f.degree());
      if (degree_ok) {
        if (++tests > opt.budget) throw std::runtime_error("factor_poly: recombination budget exceeded");
        // trailing-coefficient divisibility pretest
        Int tc = f.lc();
        for (int i : comb) tc = symmetric_lift(tc * lifted[static_cast<std::size_t>(alive[static_cast<std::size_t>(i)])][0], pl);
        Int tgt = f.lc() * f[0];
        if (tc != 0 && tgt % tc == 0) {
          ZmPoly prod = {f.lc()};
          for (int i : comb)
            prod = zm_mul(prod, zm_from(lifted[static_cast<std::size_t>(alive[static_cast<std::size_t>(i)])], pl), pl);
          IntPoly cand = zm_to_poly(prod).primitive_part();
          if (!cand.is_zero() && cand.degree() == degsum && divides(cand, f)) {
            out.factors.push_back(cand);
            f = div_exact(f, cand);
            std::vector<int> next_alive;
            for (int i = 0; i < k; ++i) {
              if (std::find(comb.begin(), comb.end(), i) == comb.end())
                next_alive.push_back(alive[static_cast<std::size_t>(i)]);
            }
            alive = std::move(next_alive);
            removed = true;
            break;
          }
        }
      }
      // next combination of given cardinality
      int i = card - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == k - card + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < card; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (!removed) ++card;
  }
  if (f.degree() > 0) {
    if (restricted) out.cofactor = f;
    else out.factors.push_back(f);  // survivor of the half-degree sweep is irreducible
  }
  return out;
}

inline RecombineResult factor_squarefree(const IntPoly& f_in, const RecombineOptions& opt) {
  IntPoly f = f_in;  // primitive, squarefree, positive lc, degree >= 1, f(0) != 0
  if (f.degree() == 1) return {{f}, std::nullopt};
  std::vector<DegSet> extra;
  int candidates = f.degree() > 200 ? 4 : 8;
  ModularSetup setup = choose_prime_and_factor(f, candidates, &extra);
  DegSet allowed = setup.degree_sums;
  for (const auto& s : extra) allowed &= s;
  if (setup.factors.size() == 1) return {{f}, std::nullopt};
  bool only_trivial = true;
  for (int d = 1; d < f.degree(); ++d)
    if (allowed.test(static_cast<std::size_t>(d))) { only_trivial = false; break; }
  if (only_trivial) return {{f}, std::nullopt};  // irreducibility certified by degree sets

  // Landau-Mignotte style bound on factor coefficients, then lift past 2*bound
  int bdeg = opt.max_factor_degree >= 0 ? std::min(opt.max_factor_degree, f.degree()) : f.degree();
  Int bound = (isqrt(Int(f.degree() + 1)) + 1) * abs_int(f.lc()) * (isqrt(f.norm2_sq()) + 1);
  bound <<= bdeg;
  Int target = 2 * bound + 1;

  // work on the monic companion lc^(n-1) f(x/lc) when f is not monic
  Int l = f.lc();
  IntPoly fm = f;
  if (l != 1) {
    std::vector<Int> c(f.coeffs());
    Int pw = 1;
    for (int i = f.degree() - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] *= pw;
      pw *= l;
    }
    c.back() = 1;
    fm = IntPoly(std::move(c));
    // recompute modular factors for the monic companion at the same prime
    fp::Poly fmp = fp::from_int_poly(fm, setup.p);
    if (!fp::is_squarefree(fmp, setup.p)) {
      ModularSetup s2 = choose_prime_and_factor(fm, candidates, nullptr);
      setup = std::move(s2);
    } else {
      setup.factors = fp::factor_squarefree_monic(fmp, setup.p);
    }
    Int lb = (isqrt(Int(fm.degree() + 1)) + 1) * (isqrt(fm.norm2_sq()) + 1);
    lb <<= bdeg;
    target = 2 * lb + 1;
  }

  Int pl = setup.p;
  while (pl < target) pl *= pl;
  std::vector<ZmPoly> liftedz =
      multifactor_hensel(fm, setup.factors, 0, setup.factors.size(), setup.p, target);
  std::vector<IntPoly> lifted;
  lifted.reserve(liftedz.size());
  for (auto& z : liftedz) {
    reduce_sym(z, pl);
    lifted.push_back(zm_to_poly(z));
  }

  if (l == 1) return recombine(f, std::move(lifted), pl, allowed, opt);

  // recombine the monic companion, then undo the substitution x -> lc*x
  RecombineOptions mopt = opt;
  RecombineResult mres = recombine(fm, std::move(lifted), pl, allowed, mopt);
  RecombineResult res;
  for (const IntPoly& g : mres.factors) res.factors.push_back(g.scale_arg(l).primitive_part());
  if (mres.cofactor) res.cofactor = mres.cofactor->scale_arg(l).primitive_part();
  return res;
}

}  // namespace detail_factor

struct PolyFactorization {
  Int content;                                   // signed content of the input
  std::vector<std::pair<IntPoly, int>> factors;  // irreducible over Q, with multiplicity
};

// Full factorization into irreducibles over Q (Zassenhaus).
inline PolyFactorization factor_poly(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
  PolyFactorization out;
  Int cont = p.content();
  if (p.lc() < 0) cont = -cont;
  out.content = cont;
  IntPoly f = p.primitive_part();
  if (f.degree() == 0) return out;
  // pull out powers of x
  int xmult = 0;
  while (f[0] == 0) {
    std::vector<Int> c(f.coeffs().begin() + 1, f.coeffs().end());
    f = IntPoly(std::move(c));
    ++xmult;
  }
  if (xmult > 0) out.factors.emplace_back(IntPoly{0, 1}, xmult);
  if (f.degree() >= 1) {
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
      detail_factor::RecombineOptions opt;
      detail_factor::RecombineResult r = detail_factor::factor_squarefree(part, opt);
      for (const IntPoly& g : r.factors) out.factors.emplace_back(g, mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  std::vector<std::pair<IntPoly, int>> merged;
  for (auto& fm : out.factors) {
    if (!merged.empty() && merged.back().first == fm.first) merged.back().second += fm.second;
    else merged.push_back(std::move(fm));
  }
  out.factors = std::move(merged);
  return out;
}

// Degree-capped factor search: finds every irreducible factor of degree
// <= max_degree; larger content is returned unfactored (flagged by degree).
struct BoundedFactorization {
  Int content;
  std::vector<std::pair<IntPoly, int>> factors;    // irreducible, degree <= cap
  std::vector<std::pair<IntPoly, int>> unfactored; // cofactors, possibly reducible
};

inline BoundedFactorization factor_poly_bounded(const IntPoly& p, int max_degree) {
  if (max_degree < 1) throw std::domain_error("factor_poly_bounded: cap must be positive");
  if (p.is_zero()) throw std::domain_error("factor_poly_bounded: zero polynomial");
  BoundedFactorization out;
  Int cont = p.content();
  if (p.lc() < 0) cont = -cont;
  out.content = cont;
  IntPoly f = p.primitive_part();
  if (f.degree() == 0) return out;
  int xmult = 0;
  while (f[0] == 0) {
    std::vector<Int> c(f.coeffs().begin() + 1, f.coeffs().end());
    f = IntPoly(std::move(c));
    ++xmult;
  }
  if (xmult > 0) out.factors.emplace_back(IntPoly{0, 1}, xmult);
  if (f.degree() >= 1) {
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
      if (part.degree() <= max_degree) {
        // small enough for a full split
        detail_factor::RecombineOptions opt;
        detail_factor::RecombineResult r = detail_factor::factor_squarefree(part, opt);
        for (const IntPoly& g : r.factors) out.factors.emplace_back(g, mult);
        continue;
      }
      detail_factor::RecombineOptions opt;
      opt.max_factor_degree = max_degree;
      detail_factor::RecombineResult r = detail_factor::factor_squarefree(part, opt);
      for (const IntPoly& g : r.factors) {
        if (g.degree() <= max_degree) out.factors.emplace_back(g, mult);
        else out.unfactored.emplace_back(g, mult);
      }
      if (r.cofactor) {
        if (r.cofactor->degree() <= max_degree) {
          // the leftover shrank below the cap; finish it off completely
          for (const auto& [g, m2] : factor_poly(*r.cofactor).factors)
            out.factors.emplace_back(g, mult * m2);
        } else {
          out.unfactored.emplace_back(*r.cofactor, mult);
        }
      }
    }
  }
  auto cmp = [](const auto& a, const auto& b) { return poly_less(a.first, b.first); };
  std::sort(out.factors.begin(), out.factors.end(), cmp);
  std::sort(out.unfactored.begin(), out.unfactored.end(), cmp);
  return out;
}

}  // namespace rqcf

#endif  // RQCF_POLY_FACTOR_HPP
