#pragma once

#include <unordered_map>

#include "polyring.hpp"

namespace ef {

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> gens;

  static Ideal of(RingPtr ring, std::vector<Polynomial> gens) {
    return Ideal{std::move(ring), std::move(gens)};
  }
  bool is_zero() const;
  bool is_homogeneous() const;
};

struct GBOptions {
  uint64_t reduction_budget = 5'000'000;
};
GBOptions& current_gb_options();

struct GBStats {
  uint64_t pairs_reduced = 0;
  uint64_t reduction_steps = 0;
  uint64_t max_basis = 0;
  void merge(const GBStats& o) {
    pairs_reduced += o.pairs_reduced;
    reduction_steps += o.reduction_steps;
    max_basis = std::max(max_basis, o.max_basis);
  }
};
GBStats& session_gb_stats();  // accumulated across calls (thread-local)

// Term list sorted descending under a fixed order; coefficients monic-normalized
// where the engine requires it.
struct OrderedPoly {
  std::vector<uint16_t> exps;
  std::vector<uint64_t> coeffs;
  int nvars = 0;

  size_t nterms() const { return coeffs.size(); }
  const uint16_t* exp(size_t i) const { return exps.data() + i * nvars; }
  bool empty() const { return coeffs.empty(); }
};

class GroebnerBasis {
 public:
  RingPtr ring;
  MonomialOrder order;
  std::vector<OrderedPoly> elems;  // reduced, monic, sorted by leading monomial ascending

  size_t size() const { return elems.size(); }
  std::vector<Polynomial> polynomials() const;
  std::vector<std::vector<uint16_t>> initial_ideal() const;
};

GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order);
inline GroebnerBasis groebner_basis(const Ideal& I) {
  return groebner_basis(I, MonomialOrder::degrevlex(I.ring->nvars()));
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

bool ideal_contains(const Ideal& I, const Ideal& J);  // true iff J ⊆ I as ideals
bool ideal_equal(const Ideal& I, const Ideal& J);

// Generators of I ∩ k[vars not in `vars`], computed with a two-block order.
Ideal eliminate(const Ideal& I, const std::vector<int>& vars);

// I : f^∞ by the extra-variable trick; I : J^∞ intersecting over J's generators.
Ideal saturate_poly(const Ideal& I, const Polynomial& f);
Ideal saturate(const Ideal& I, const Ideal& J);
// fast path for homogeneous I and a single variable
Ideal saturate_var(const Ideal& I, int var);
// saturation by the irrelevant maximal ideal (all variables)
Ideal saturate_irrelevant(const Ideal& I);

Ideal ideal_intersect(const Ideal& I, const Ideal& J);
Ideal ideal_quotient(const Ideal& I, const Polynomial& f);
Ideal ideal_sum(const Ideal& I, const Ideal& J);

// Exact division; throws DivisionFailure if f does not divide g.
Polynomial exact_divide(const Polynomial& g, const Polynomial& f);

// Ring-theoretic preimage m^{-1}(J) = {f in source : m(f) in J}, J in m's target
// ring, via the graph ideal and elimination of target variables.
Ideal preimage_under_map(const RingMap& m, const Ideal& J);

// Normal-form tables for a fixed graded GB: standard monomials per degree and
// multiplication-by-variable rows. Powers the linear-algebra layers above the
// engine (inverse maps, graded pieces).
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(const GroebnerBasis& G);

  using Row = std::vector<std::pair<int32_t, uint64_t>>;  // index into std mons of a degree

  int n_std(int d);
  const std::vector<uint16_t>& std_monomial(int d, int idx);
  int std_index(int d, const uint16_t* m);

  // NF of an arbitrary monomial as a row over std monomials of its degree
  const Row& nf_monomial(const uint16_t* m, int deg);
  // row * variable v -> row at degree d+1
  Row mul_var(const Row& r, int d, int v);
  // NF coordinates of a homogeneous polynomial
  Row nf_poly(const Polynomial& f);

 private:
  struct DegData {
    std::vector<std::vector<uint16_t>> mons;
    std::unordered_map<std::string, int> index;
    bool built = false;
  };
  const GroebnerBasis& G_;
  PrimeField F_;
  int n_;
  std::vector<DegData> deg_;
  std::unordered_map<std::string, Row> memo_;

  void build_degree(int d);
  static std::string key(const uint16_t* m, int n);
};

// engine helpers shared with other modules
OrderedPoly to_ordered(const Polynomial& f, const MonomialOrder& ord);
Polynomial from_ordered(const RingPtr& ring, const OrderedPoly& p);
bool monomial_divides(const uint16_t* a, const uint16_t* b, int n);  // a | b

}  // namespace ef
