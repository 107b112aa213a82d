#ifndef RQCF_POLY_HPP
#define RQCF_POLY_HPP

#include "rqcf/integers.hpp"

#include <initializer_list>
#include <ostream>
#include <sstream>

namespace rqcf {

// Univariate polynomial over Z, coefficients stored lowest degree first.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }
  static IntPoly constant(Int v) { return IntPoly(std::vector<Int>{std::move(v)}); }
  static IntPoly x_power(int k, Int lead = Int(1)) {
    std::vector<Int> c(static_cast<std::size_t>(k) + 1, Int(0));
    c.back() = std::move(lead);
    return IntPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const Int& operator[](int i) const {
    static const Int zero = 0;
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : zero;
  }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& lc() const {
    if (c_.empty()) throw std::domain_error("lc of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  void set_coeff(int i, Int v) {
    if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i) + 1, Int(0));
    c_[static_cast<std::size_t>(i)] = std::move(v);
    trim();
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a) {
    std::vector<Int> c = a.c_;
    for (Int& v : c) v = -v;
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const IntPoly& a, const Int& s) {
    if (s == 0) return IntPoly();
    std::vector<Int> c = a.c_;
    for (Int& v : c) v *= s;
    return IntPoly(std::move(c));
  }
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

  template <typename T>
  T eval(const T& x) const {
    T r = T(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + T(c_[i]);
    return r;
  }

  Int content() const {
    Int g = 0;
    for (const Int& v : c_) g = gcd_int(g, v);
    return g;
  }
  // content-free with positive leading coefficient; zero maps to zero
  IntPoly primitive_part() const {
    if (is_zero()) return IntPoly();
    Int g = content();
    if (lc() < 0) g = -g;
    std::vector<Int> c = c_;
    for (Int& v : c) v /= g;
    return IntPoly(std::move(c));
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long long>(i);
    return IntPoly(std::move(c));
  }

  // substitute x -> s*x (scales the i-th coefficient by s^i)
  IntPoly scale_arg(const Int& s) const {
    std::vector<Int> c = c_;
    Int pw = 1;
    for (std::size_t i = 1; i < c.size(); ++i) { pw *= s; c[i] *= pw; }
    return IntPoly(std::move(c));
  }

  // squared 2-norm of the coefficient vector
  Int norm2_sq() const {
    Int s = 0;
    for (const Int& v : c_) s += v * v;
    return s;
  }
  Int height() const {
    Int h = 0;
    for (const Int& v : c_) h = std::max(h, abs_int(v));
    return h;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const Int& v = (*this)[i];
      if (v == 0) continue;
      Int av = abs_int(v);
      if (first) {
        if (v < 0) os << "-";
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      if (i == 0 || av != 1) os << av.str();
      if (i > 0) {
        if (av != 1) os << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

// order by degree, then by coefficient tuple from the leading coefficient down
inline bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// quotient and remainder with monic divisor; exact over Z
inline std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& d) {
  if (d.is_zero() || !d.is_monic()) throw std::domain_error("divmod_monic: divisor must be monic");
  std::vector<Int> rem(a.coeffs());
  int dd = d.degree();
  int qd = a.degree() - dd;
  if (qd < 0) return {IntPoly(), a};
  std::vector<Int> q(static_cast<std::size_t>(qd) + 1, Int(0));
  for (int i = qd; i >= 0; --i) {
    Int coef = rem[static_cast<std::size_t>(i + dd)];
    if (coef == 0) continue;
    q[static_cast<std::size_t>(i)] = coef;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i + j)] -= coef * d[j];
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(rem))};
}

// pseudo-division: lc(d)^(deg a - deg d + 1) * a = q*d + r
inline std::pair<IntPoly, IntPoly> pseudo_divmod(const IntPoly& a, const IntPoly& d) {
  if (d.is_zero()) throw std::domain_error("pseudo_divmod: zero divisor");
  IntPoly r = a, q;
  int dd = d.degree();
  const Int& l = d.lc();
  while (!r.is_zero() && r.degree() >= dd) {
    int k = r.degree() - dd;
    IntPoly t = IntPoly::x_power(k, r.lc());
    q = q * l + t;
    r = r * l - t * d;
  }
  return {q, r};
}

// exact division; throws if the division leaves a remainder
inline IntPoly div_exact(const IntPoly& a, const IntPoly& d) {
  if (d.is_zero()) throw std::domain_error("div_exact: zero divisor");
  if (a.is_zero()) return IntPoly();
  auto [q, r] = pseudo_divmod(a, d);
  if (!r.is_zero()) throw std::domain_error("div_exact: inexact division");
  // q has an extra factor lc(d)^(deg a - deg d + 1 - steps); normalize by direct check
  Int scale = 1;
  int steps = a.degree() - d.degree() + 1;
  for (int i = 0; i < steps; ++i) scale *= d.lc();
  std::vector<Int> c(q.coeffs());
  for (Int& v : c) {
    if (v % scale != 0) throw std::domain_error("div_exact: inexact division");
    v /= scale;
  }
  return IntPoly(std::move(c));
}

inline bool divides(const IntPoly& d, const IntPoly& a) {
  if (d.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  if (a.degree() < d.degree()) return false;
  auto [q, r] = pseudo_divmod(a, d);
  (void)q;
  return r.is_zero();
}

namespace detail {
// gcd of a and b modulo word prime p (monic), coefficients reduced from Int
inline std::vector<std::uint64_t> poly_mod_p(const IntPoly& a, std::uint64_t p) {
  std::vector<std::uint64_t> r(static_cast<std::size_t>(a.degree() + 1));
  for (int i = 0; i <= a.degree(); ++i)
    r[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(fmod_pos(a[i], Int(p)));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

inline std::vector<std::uint64_t> gcd_mod_p(std::vector<std::uint64_t> a,
                                            std::vector<std::uint64_t> b, std::uint64_t p) {
  auto reduce = [p](std::vector<std::uint64_t>& r, const std::vector<std::uint64_t>& d) {
    std::uint64_t inv = invmod_u64(d.back(), p);
    while (r.size() >= d.size()) {
      std::uint64_t c = mulmod_u64(r.back(), inv, p);
      if (c != 0) {
        std::size_t off = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i)
          r[off + i] = submod_u64(r[off + i], mulmod_u64(c, d[i], p), p);
      }
      r.pop_back();
      while (!r.empty() && r.back() == 0) r.pop_back();
      if (r.size() < d.size()) break;
    }
  };
  while (!b.empty()) {
    reduce(a, b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    std::uint64_t inv = invmod_u64(a.back(), p);
    for (auto& v : a) v = mulmod_u64(v, inv, p);
  }
  return a;
}
}  // namespace detail

// gcd over Z via small-prime modular images (Brown), primitive with positive lc
inline IntPoly gcd_poly(const IntPoly& a_in, const IntPoly& b_in) {
  if (a_in.is_zero()) return b_in.primitive_part();
  if (b_in.is_zero()) return a_in.primitive_part();
  IntPoly a = a_in.primitive_part(), b = b_in.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  if (b.degree() == 0) return IntPoly::constant(1);
  Int gl = gcd_int(a.lc(), b.lc());

  std::uint64_t p = (1ull << 62) - 57;  // starting point for prime scan
  auto next_prime = [](std::uint64_t q) {
    do { --q; } while (!detail::miller_rabin_u64(q));
    return q;
  };
  int min_deg = b.degree() + 1;
  std::vector<Int> acc;       // CRT-accumulated coefficients of gl * monic gcd
  Int modulus = 1;
  IntPoly last_candidate;
  while (true) {
    p = next_prime(p);
    if (a.lc() % p == 0 || b.lc() % p == 0) continue;
    auto g = detail::gcd_mod_p(detail::poly_mod_p(a, p), detail::poly_mod_p(b, p), p);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return IntPoly::constant(1);
    if (dg > min_deg) continue;  // bad prime
    std::uint64_t glp = static_cast<std::uint64_t>(fmod_pos(gl, Int(p)));
    std::vector<Int> img(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) img[i] = Int(mulmod_u64(g[i], glp, p));
    if (dg < min_deg) {  // restart accumulation at lower degree
      min_deg = dg;
      acc.assign(img.begin(), img.end());
      modulus = p;
    } else {
      for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = crt_pair(acc[i], modulus, img[i], Int(p));
      modulus *= p;
    }
    std::vector<Int> lifted(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) lifted[i] = symmetric_lift(acc[i], modulus);
    IntPoly cand = IntPoly(std::move(lifted)).primitive_part();
    if (cand == last_candidate) {
      if (divides(cand, a) && divides(cand, b)) return cand;
    }
    last_candidate = cand;
  }
}

// Yun's algorithm: squarefree decomposition f = prod part_i^i (up to content)
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f_in) {
  if (f_in.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
  IntPoly f = f_in.primitive_part();
  std::vector<std::pair<IntPoly, int>> out;
  if (f.degree() == 0) return out;
  IntPoly fp = f.derivative();
  IntPoly a = gcd_poly(f, fp);
  if (a.degree() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  IntPoly b = div_exact(f, a);
  IntPoly c = div_exact(fp, a);
  IntPoly d = c - b.derivative();
  int i = 1;
  while (true) {
    if (b.degree() == 0) break;
    IntPoly g = gcd_poly(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = div_exact(b, g);
    c = div_exact(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace rqcf

#endif  // RQCF_POLY_HPP
