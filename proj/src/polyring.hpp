#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffield.hpp"

namespace ef {

// Coordinate ring of a projective space over Z/p: named variables, total grading.
struct Ring {
  std::string name;
  std::vector<std::string> vars;
  uint64_t prime;

  PrimeField field() const { return PrimeField(prime); }
  int nvars() const { return (int)vars.size(); }
  int var_index(const std::string& v) const;  // -1 if absent
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::string name, std::vector<std::string> vars, uint64_t prime);

// Monomial orders. Variables are compared in the sequence given by perm
// (perm[i] = variable index at position i); an empty perm means identity.
// Block compares the first `block1` positions degrevlex, then the rest.
struct MonomialOrder {
  enum Kind { Lex, DegRevLex, Block } kind = DegRevLex;
  int nvars = 0;
  std::vector<int> perm;
  int block1 = 0;

  static MonomialOrder degrevlex(int n);
  static MonomialOrder lex(int n);
  // eliminated variables first (as one degrevlex block), kept variables second
  static MonomialOrder elimination(int n, const std::vector<int>& eliminated);
  // degrevlex with one distinguished variable moved last (cheapest)
  static MonomialOrder degrevlex_var_last(int n, int var);

  int compare(const uint16_t* a, const uint16_t* b) const;  // <0, 0, >0
};

// Sparse polynomial with flat term storage, canonically sorted descending
// under the ring's default degrevlex. No zero coefficients stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, uint64_t c);
  static Polynomial variable(RingPtr ring, int var);
  // from unsorted term list; combines duplicates, drops zeros
  static Polynomial from_terms(RingPtr ring, std::vector<uint16_t> exps,
                               std::vector<uint64_t> coeffs);

  const RingPtr& ring() const { return ring_; }
  int nvars() const { return (int)ring_->vars.size(); }
  size_t nterms() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  const uint16_t* exp(size_t i) const { return exps_.data() + i * nvars(); }
  uint64_t coeff(size_t i) const { return coeffs_[i]; }
  const std::vector<uint16_t>& raw_exps() const { return exps_; }
  const std::vector<uint64_t>& raw_coeffs() const { return coeffs_; }

  int total_degree() const;          // -1 for zero
  int term_degree(size_t i) const;
  bool is_homogeneous() const;
  bool is_monomial_term(size_t i, int* var = nullptr) const;  // single-variable power?

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const;

  Polynomial scaled(uint64_t c) const;
  Polynomial monic() const;

  uint64_t evaluate(const std::vector<uint64_t>& point) const;
  Polynomial derivative(int var) const;
  // substitute one variable by a polynomial of the same ring
  Polynomial substitute(int var, const Polynomial& value) const;
  // set a variable to a constant, keeping the ring
  Polynomial set_var(int var, uint64_t value) const;

  std::string str() const;  // canonical text form, balanced coefficients

 private:
  friend class PolyBuilder;
  RingPtr ring_;
  std::vector<uint16_t> exps_;
  std::vector<uint64_t> coeffs_;
};

// Accumulating builder: collects terms, then sorts canonically and combines.
class PolyBuilder {
 public:
  explicit PolyBuilder(RingPtr ring) : ring_(std::move(ring)), n_(ring_->nvars()) {}
  void add_term(const uint16_t* e, uint64_t c);
  void add(const Polynomial& f, uint64_t scale = 1);
  // add f * (monomial m) * c
  void add_shifted(const Polynomial& f, const uint16_t* m, uint64_t c);
  Polynomial build();

 private:
  RingPtr ring_;
  int n_;
  std::vector<uint16_t> exps_;
  std::vector<uint64_t> coeffs_;
};

// Substitution homomorphism: source variable i maps to images[i] (target ring).
struct RingMap {
  RingPtr source;
  RingPtr target;
  std::vector<Polynomial> images;
};

Polynomial apply_ring_map(const RingMap& m, const Polynomial& f);
std::vector<Polynomial> apply_ring_map(const RingMap& m, const std::vector<Polynomial>& gens);

// All partials of order 1..k of every generator, plus the generators.
std::vector<Polynomial> derivative_ideal(const std::vector<Polynomial>& gens, int k);

// Homogenization with respect to a fresh variable appended last.
Polynomial homogenize(const Polynomial& f, const RingPtr& extended, int hvar);
Polynomial min_degree_part(const Polynomial& f);

// Projective point; equality up to scalar.
struct ProjPoint {
  RingPtr ring;
  std::vector<uint64_t> coords;

  bool same_point(const ProjPoint& o) const;
  int first_nonzero() const;
};

struct ChartResult {
  RingPtr chart_ring;             // ambient variables minus the chart variable
  std::vector<Polynomial> ideal;  // vanishing at the chart origin
  int chart_var;                  // index in the ambient ring
  std::vector<uint64_t> normalized_point;
};

// Linear change moving P to [1:0:...:0] followed by dehomogenization at the
// chart coordinate (the first nonzero coordinate of P, normalized to 1).
ChartResult chart_at_point(const std::vector<Polynomial>& gens, const ProjPoint& P);

// Text syntax: identifiers, integer literals, '*', '+', '-', '^', parentheses.
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

// reindex f into an isomorphic ring given source-var -> dest-var index map
Polynomial reindex(const Polynomial& f, const RingPtr& dest, const std::vector<int>& var_map);

}  // namespace ef
