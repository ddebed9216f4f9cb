#pragma once

#include "groebner.hpp"

namespace ef {

// Exact rational with 128-bit components; enough headroom for Hilbert
// polynomials in <= 20 variables.
struct Frac {
  __int128 num = 0;
  __int128 den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(__int128 n, __int128 d);
  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool is_integer() const { return den == 1; }
  long long as_ll() const;
  std::string str() const;
};

struct HilbertData {
  std::vector<long long> numerator;      // h(t) with HS_{R/I} = h(t)/(1-t)^nvars
  int proj_dim = -1;                     // degree of the Hilbert polynomial; -1 if empty
  long long degree = 0;                  // leading coefficient * proj_dim!
  std::vector<Frac> hilbert_polynomial;  // coefficient of d^k at index k
  long long arithmetic_genus = 0;        // (-1)^proj_dim (HP(0) - 1)
};

// Computed from the initial ideal of a degrevlex GB via the standard
// monomial-ideal recursion.
HilbertData hilbert_data(const Ideal& I);
HilbertData hilbert_data(const GroebnerBasis& G);

// numerator of the Hilbert series of R/(monomial ideal)
std::vector<long long> hilbert_numerator(std::vector<std::vector<uint16_t>> gens, int nvars);

// dimension over F_p of the degree-d graded piece of the ideal
long long graded_piece_dim(const Ideal& I, int d);
long long graded_piece_dim(const GroebnerBasis& G, int d);

// Hilbert function of R/I at degree d (number of standard monomials)
long long hilbert_function(const GroebnerBasis& G, int d);

long long n_monomials(int nvars, int d);  // C(nvars-1+d, d)

}  // namespace ef
