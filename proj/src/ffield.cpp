#include "ffield.hpp"

#include <algorithm>

namespace ef {

uint64_t PrimeField::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t PrimeField::inv(uint64_t a) const {
  if (a == 0) throw EfError(ErrKind::ZeroInverse, "inverse of zero");
  // extended Euclid
  long long t = 0, nt = 1;
  long long r = (long long)p_, nr = (long long)(a % p_);
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (t < 0) t += (long long)p_;
  return (uint64_t)t;
}

bool PrimeField::sqrt(uint64_t a, uint64_t& root) const {
  a %= p_;
  if (a == 0) {
    root = 0;
    return true;
  }
  if (legendre(a) != 1) return false;
  if (p_ % 4 == 3) {
    root = pow(a, (p_ + 1) / 4);
    return true;
  }
  // Tonelli-Shanks
  uint64_t q = p_ - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  uint64_t z = 2;
  while (legendre(z) != p_ - 1) ++z;
  uint64_t m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
  while (t != 1) {
    uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    uint64_t b = c;
    for (uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  root = r;
  return true;
}

namespace upoly {

UPoly trim(UPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

bool is_zero(const UPoly& f) { return f.empty(); }
int deg(const UPoly& f) { return (int)f.size() - 1; }

UPoly add(const PrimeField& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  return trim(std::move(r));
}

UPoly sub(const PrimeField& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  return trim(std::move(r));
}

UPoly mul(const PrimeField& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return trim(std::move(r));
}

UPoly scale(const PrimeField& F, const UPoly& a, uint64_t c) {
  if (c == 0) return {};
  UPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return trim(std::move(r));
}

UPoly monic(const PrimeField& F, const UPoly& a) {
  if (a.empty() || a.back() == 1) return a;
  return scale(F, a, F.inv(a.back()));
}

std::pair<UPoly, UPoly> divmod(const PrimeField& F, const UPoly& a, const UPoly& b) {
  if (b.empty()) throw EfError(ErrKind::ZeroInverse, "division by zero polynomial");
  UPoly r = a;
  if (r.size() < b.size()) return {{}, trim(std::move(r))};
  UPoly q(r.size() - b.size() + 1, 0);
  uint64_t lcinv = F.inv(b.back());
  for (int i = (int)r.size() - 1; i >= (int)b.size() - 1; --i) {
    if (r[i] == 0) continue;
    uint64_t c = F.mul(r[i], lcinv);
    q[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j)
      r[i - (b.size() - 1) + j] = F.sub(r[i - (b.size() - 1) + j], F.mul(c, b[j]));
  }
  return {trim(std::move(q)), trim(std::move(r))};
}

UPoly gcd(const PrimeField& F, UPoly a, UPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    UPoly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

UPoly derivative(const PrimeField& F, const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.reduce_int((long long)i));
  return trim(std::move(r));
}

UPoly powmod(const PrimeField& F, UPoly base, uint64_t e, const UPoly& mod) {
  UPoly r = {1};
  base = divmod(F, base, mod).second;
  while (e) {
    if (e & 1) r = divmod(F, mul(F, r, base), mod).second;
    base = divmod(F, mul(F, base, base), mod).second;
    e >>= 1;
  }
  return r;
}

}  // namespace upoly

namespace {

using namespace upoly;

// x^p mod f, computed by repeated squaring on x.
UPoly frobenius(const PrimeField& F, const UPoly& f) {
  return powmod(F, UPoly{0, 1}, F.p(), f);
}

// distinct-degree: returns list of (product of irreducible factors of degree d, d)
std::vector<std::pair<UPoly, int>> distinct_degree(const PrimeField& F, UPoly f) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly h = {0, 1};  // x
  int d = 0;
  while (deg(f) > 0) {
    ++d;
    if (2 * d > deg(f)) {
      out.push_back({f, deg(f)});
      break;
    }
    h = powmod(F, h, F.p(), f);  // h = x^(p^d) mod f
    UPoly g = gcd(F, sub(F, h, UPoly{0, 1}), f);
    if (deg(g) > 0) {
      out.push_back({g, d});
      f = divmod(F, f, g).first;
      h = divmod(F, h, f).second;
    }
  }
  return out;
}

// Cantor-Zassenhaus equal-degree splitting of a squarefree product of degree-d factors.
void equal_degree(const PrimeField& F, const UPoly& f, int d, SplitMix64& rng,
                  std::vector<UPoly>& out) {
  if (deg(f) == d) {
    out.push_back(monic(F, f));
    return;
  }
  while (true) {
    UPoly a((size_t)deg(f), 0);
    for (auto& c : a) c = rng.below(F.p());
    a = trim(std::move(a));
    if (deg(a) < 1) continue;
    UPoly g = gcd(F, a, f);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, divmod(F, f, g).first, d, rng, out);
      return;
    }
    uint64_t e = 1;
    for (int i = 0; i < d; ++i) e *= F.p();  // p^d; d small here (<= 6)
    UPoly b = powmod(F, a, (e - 1) / 2, f);
    g = gcd(F, sub(F, b, UPoly{1}), f);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, divmod(F, f, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<UPoly, int>> factor_univariate(const PrimeField& F, const UPoly& fin,
                                                     uint64_t seed) {
  UPoly f = upoly::trim(fin);
  if (upoly::is_zero(f)) throw EfError(ErrKind::ZeroPolynomial, "factor of zero polynomial");
  std::vector<std::pair<UPoly, int>> result;
  if (upoly::deg(f) == 0) return result;
  f = upoly::monic(F, f);
  SplitMix64 rng(seed);

  // squarefree decomposition (Yun; p larger than any degree that occurs here)
  std::vector<std::pair<UPoly, int>> squarefree;  // (squarefree part, multiplicity)
  {
    UPoly d = upoly::derivative(F, f);
    if (upoly::is_zero(d)) throw EfError(ErrKind::Internal, "p-th power factor unsupported");
    UPoly a = upoly::gcd(F, f, d);
    UPoly b = upoly::divmod(F, f, a).first;
    UPoly c = upoly::divmod(F, d, a).first;
    UPoly dd = upoly::sub(F, c, upoly::derivative(F, b));
    int i = 1;
    while (upoly::deg(b) > 0) {
      UPoly g = upoly::gcd(F, b, dd);
      if (upoly::deg(g) > 0) squarefree.push_back({g, i});
      b = upoly::divmod(F, b, g).first;
      c = upoly::divmod(F, dd, g).first;
      dd = upoly::sub(F, c, upoly::derivative(F, b));
      ++i;
    }
  }

  for (auto& [sf, mult] : squarefree) {
    for (auto& [prod, d] : distinct_degree(F, sf)) {
      std::vector<UPoly> factors;
      equal_degree(F, prod, d, rng, factors);
      std::sort(factors.begin(), factors.end());
      for (auto& fac : factors) result.push_back({fac, mult});
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace ef
