#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ef {

// Error kinds shared across the whole kernel.
enum class ErrKind {
  ZeroInverse,
  RingMismatch,
  ZeroPolynomial,
  PointNotOnVariety,
  Timeout,
  IdenticalPoints,
  EmptySystem,
  SpanIsEverything,
  InverseNotFound,
  DivisionFailure,
  ZeroMap,
  Parse,
  UnknownName,
  Internal,
};

struct EfError : std::runtime_error {
  ErrKind kind;
  EfError(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Arithmetic in Z/p for a prime p < 2^31. Elements are residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(uint64_t p) : p_(p) {
    if (p < 2 || p >= (1ull << 31)) throw EfError(ErrKind::Internal, "prime out of range");
  }

  uint64_t p() const { return p_; }

  uint64_t reduce_int(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += (long long)p_;
    return (uint64_t)r;
  }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % p_; }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const;

  // Legendre symbol: 1 if quadratic residue (a != 0), p-1 if non-residue, 0 if a == 0.
  uint64_t legendre(uint64_t a) const { return pow(a, (p_ - 1) / 2); }
  // Square root via Tonelli-Shanks; returns false if a is a non-residue.
  bool sqrt(uint64_t a, uint64_t& root) const;

 private:
  uint64_t p_;
};

// Deterministic RNG for the equal-degree splitting (splitmix64).
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return next() % n; }
};

// Dense univariate polynomial over Z/p; coefficient of x^i at index i.
// Invariant: empty or nonzero leading coefficient.
using UPoly = std::vector<uint64_t>;

namespace upoly {
UPoly trim(UPoly f);
bool is_zero(const UPoly& f);
int deg(const UPoly& f);  // -1 for zero
UPoly add(const PrimeField& F, const UPoly& a, const UPoly& b);
UPoly sub(const PrimeField& F, const UPoly& a, const UPoly& b);
UPoly mul(const PrimeField& F, const UPoly& a, const UPoly& b);
UPoly scale(const PrimeField& F, const UPoly& a, uint64_t c);
UPoly monic(const PrimeField& F, const UPoly& a);
// division with remainder: a = q*b + r
std::pair<UPoly, UPoly> divmod(const PrimeField& F, const UPoly& a, const UPoly& b);
UPoly gcd(const PrimeField& F, UPoly a, UPoly b);
UPoly derivative(const PrimeField& F, const UPoly& a);
UPoly powmod(const PrimeField& F, UPoly base, uint64_t e, const UPoly& mod);
}  // namespace upoly

// Monic irreducible factors with multiplicities; product matches f up to a unit.
// Constants give an empty list. Squarefree decomposition + Cantor-Zassenhaus,
// seeded so reports are reproducible.
std::vector<std::pair<UPoly, int>> factor_univariate(const PrimeField& F, const UPoly& f,
                                                     uint64_t seed = 0x45464b31ull);

}  // namespace ef
