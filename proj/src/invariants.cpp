#include "invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace ef {

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

Frac::Frac(__int128 n, __int128 d) : num(n), den(d) {
  if (den == 0) throw EfError(ErrKind::Internal, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Frac Frac::operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
Frac Frac::operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
Frac Frac::operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }

long long Frac::as_ll() const {
  if (den != 1) throw EfError(ErrKind::Internal, "fraction not integral");
  return (long long)num;
}

std::string Frac::str() const {
  auto i128s = [](__int128 v) {
    if (v == 0) return std::string("0");
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v) {
      s += char('0' + (int)(v % 10));
      v /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
  };
  if (den == 1) return i128s(num);
  return i128s(num) + "/" + i128s(den);
}

namespace {

using Mono = std::vector<uint16_t>;

std::vector<Mono> minimalize(std::vector<Mono> gens, int n) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Mono> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < gens.size() && !dominated; ++j)
      if (i != j && monomial_divides(gens[j].data(), gens[i].data(), n) && gens[j] != gens[i])
        dominated = true;
    // equal case already deduplicated
    if (!dominated) out.push_back(gens[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<long long> poly_add(std::vector<long long> a, const std::vector<long long>& b,
                                int shift = 0) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

struct NumeratorCalc {
  int n;
  std::map<std::vector<Mono>, std::vector<long long>> memo;

  std::vector<long long> run(std::vector<Mono> gens) {
    gens = minimalize(std::move(gens), n);
    if (gens.empty()) return {1};
    for (auto& g : gens) {
      bool unit = true;
      for (int v = 0; v < n; ++v)
        if (g[v]) unit = false;
      if (unit) return {};  // whole ring
    }
    auto it = memo.find(gens);
    if (it != memo.end()) return it->second;

    // pairwise coprime fast path (covers the single generator case)
    bool coprime = true;
    for (size_t i = 0; i < gens.size() && coprime; ++i)
      for (size_t j = i + 1; j < gens.size() && coprime; ++j)
        for (int v = 0; v < n; ++v)
          if (gens[i][v] && gens[j][v]) {
            coprime = false;
            break;
          }
    std::vector<long long> result;
    if (coprime) {
      result = {1};
      for (auto& g : gens) {
        int d = 0;
        for (int v = 0; v < n; ++v) d += g[v];
        std::vector<long long> f(d + 1, 0);
        f[0] = 1;
        f[d] = -1;
        result = poly_mul(result, f);
      }
    } else {
      // pivot: variable occurring most often
      std::vector<int> freq(n, 0);
      for (auto& g : gens)
        for (int v = 0; v < n; ++v)
          if (g[v]) ++freq[v];
      int pivot = (int)(std::max_element(freq.begin(), freq.end()) - freq.begin());
      // I + <x>: generators with x-exponent 0, plus x itself
      std::vector<Mono> plus;
      for (auto& g : gens)
        if (g[pivot] == 0) plus.push_back(g);
      Mono xv(n, 0);
      xv[pivot] = 1;
      plus.push_back(xv);
      // I : x: divide x out where present
      std::vector<Mono> colon;
      for (auto& g : gens) {
        Mono h = g;
        if (h[pivot] > 0) h[pivot] -= 1;
        colon.push_back(h);
      }
      result = poly_add(run(std::move(plus)), run(std::move(colon)), 1);
    }
    memo.emplace(std::move(gens), result);
    return result;
  }
};

// falling-binomial polynomial C(d + c, m-1) as a polynomial in d, degree m-1
std::vector<Frac> binom_poly(long long c, int m) {
  // product over i=0..m-2 of (d + c - i) / (m-1)!
  std::vector<Frac> poly = {Frac(1)};
  for (int i = 0; i < m - 1; ++i) {
    std::vector<Frac> next(poly.size() + 1, Frac(0));
    for (size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] = next[k + 1] + poly[k];
      next[k] = next[k] + poly[k] * Frac(c - i);
    }
    poly = std::move(next);
  }
  __int128 fact = 1;
  for (int i = 2; i <= m - 1; ++i) fact *= i;
  for (auto& f : poly) f = f * Frac(1, fact);
  return poly;
}

Frac eval_poly(const std::vector<Frac>& poly, long long x) {
  Frac acc(0);
  for (int k = (int)poly.size() - 1; k >= 0; --k) acc = acc * Frac(x) + poly[k];
  return acc;
}

long long binom_ll(long long top, int k) {
  if (top < 0 || k < 0) return 0;
  __int128 r = 1;
  for (int i = 0; i < k; ++i) r = r * (top - i) / (i + 1);
  return (long long)r;
}

}  // namespace

std::vector<long long> hilbert_numerator(std::vector<std::vector<uint16_t>> gens, int nvars) {
  NumeratorCalc calc{nvars, {}};
  return calc.run(std::move(gens));
}

HilbertData hilbert_data(const GroebnerBasis& G) {
  int n = G.ring->nvars();
  HilbertData H;
  H.numerator = hilbert_numerator(G.initial_ideal(), n);

  std::vector<long long> h = H.numerator;
  if (h.empty()) {  // unit ideal: empty scheme with zero coordinate ring
    H.proj_dim = -1;
    H.degree = 0;
    H.arithmetic_genus = 0;
    return H;
  }
  // factor out (1-t)^k
  int k = 0;
  auto eval1 = [](const std::vector<long long>& f) {
    long long s = 0;
    for (long long c : f) s += c;
    return s;
  };
  std::vector<long long> g = h;
  while (eval1(g) == 0) {
    // divide by (1-t): g = (1-t)*q  =>  q_i = q_{i-1} - g_i ... synthetic division
    std::vector<long long> q(g.size() - 1, 0);
    long long carry = g[0];
    for (size_t i = 0; i + 1 < g.size(); ++i) {
      q[i] = carry;
      carry = g[i + 1] + carry;
    }
    g = std::move(q);
    while (!g.empty() && g.back() == 0) g.pop_back();
    ++k;
    if (g.empty()) throw EfError(ErrKind::Internal, "hilbert numerator identically zero");
  }
  int m = n - k;  // Krull dimension of the affine cone
  H.proj_dim = m - 1;
  H.degree = eval1(g);

  if (m == 0) {
    H.arithmetic_genus = 0;
    return H;
  }
  // HP(d) = sum_j g_j * C(d - j + m - 1, m - 1)
  std::vector<Frac> HP;
  for (size_t j = 0; j < g.size(); ++j) {
    if (!g[j]) continue;
    std::vector<Frac> bp = binom_poly((long long)(m - 1) - (long long)j, m);
    if (HP.size() < bp.size()) HP.resize(bp.size(), Frac(0));
    for (size_t i = 0; i < bp.size(); ++i) HP[i] = HP[i] + bp[i] * Frac(g[j]);
  }
  while (HP.size() > 1 && HP.back() == Frac(0)) HP.pop_back();
  H.hilbert_polynomial = HP;

  // consistency: degree = leading coeff * (proj_dim)!
  {
    Frac lead = HP.empty() ? Frac(0) : HP.back();
    __int128 fact = 1;
    for (int i = 2; i <= H.proj_dim; ++i) fact *= i;
    Frac check = lead * Frac(fact);
    if (!(check == Frac(H.degree)))
      throw EfError(ErrKind::Internal, "hilbert degree/leading coefficient mismatch");
  }
  // cross-check HP against the series at three sample degrees
  for (int d = (int)g.size(); d < (int)g.size() + 3; ++d) {
    long long hf = 0;
    for (size_t j = 0; j < g.size(); ++j) hf += g[j] * binom_ll(d - (long long)j + m - 1, m - 1);
    if (!(eval_poly(HP, d) == Frac(hf)))
      throw EfError(ErrKind::Internal, "hilbert polynomial/series mismatch");
  }

  Frac hp0 = eval_poly(HP, 0);
  long long genus_sign = (H.proj_dim % 2 == 0) ? 1 : -1;
  H.arithmetic_genus = genus_sign * (hp0 - Frac(1)).as_ll();
  return H;
}

HilbertData hilbert_data(const Ideal& I) {
  for (auto& g : I.gens)
    if (!g.is_homogeneous())
      throw EfError(ErrKind::Internal, "hilbert_data wants a homogeneous ideal");
  return hilbert_data(groebner_basis(I));
}

long long n_monomials(int nvars, int d) {
  __int128 r = 1;
  for (int i = 1; i <= d; ++i) r = r * (nvars - 1 + i) / i;
  return (long long)r;
}

long long hilbert_function(const GroebnerBasis& G, int d) {
  // standard monomials of degree d, counted via the numerator for robustness
  int n = G.ring->nvars();
  auto leads = G.initial_ideal();
  // count degree-d monomials not divisible by any lead: use series expansion
  std::vector<long long> h = hilbert_numerator(leads, n);
  long long acc = 0;
  for (size_t j = 0; j < h.size() && (int)j <= d; ++j)
    acc += h[j] * binom_ll((long long)d - (long long)j + n - 1, n - 1);
  return acc;
}

long long graded_piece_dim(const GroebnerBasis& G, int d) {
  if (d < 0) throw EfError(ErrKind::Internal, "graded_piece_dim: negative degree");
  if (G.elems.empty()) return 0;
  return n_monomials(G.ring->nvars(), d) - hilbert_function(G, d);
}

long long graded_piece_dim(const Ideal& I, int d) {
  return graded_piece_dim(groebner_basis(I), d);
}

}  // namespace ef
