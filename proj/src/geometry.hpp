#pragma once

#include "invariants.hpp"

namespace ef {

// Geometric map Proj(source) -> Proj(target): one source-ring coordinate per
// target variable, all homogeneous of the same degree.
struct RationalMap {
  RingPtr source;
  RingPtr target;
  std::vector<Polynomial> coords;

  int coord_degree() const;
  // the substitution hom target-ring -> source-ring (pullback of functions)
  RingMap pullback_hom() const;
};

// Pullback of a subscheme ideal through the map (generated by substituted
// generators).
Ideal pullback_ideal(const RationalMap& m, const Ideal& J);

struct ConfigurationGraph {
  std::vector<std::string> point_names;
  std::vector<ProjPoint> points;
  std::vector<std::vector<char>> adjacency;
  std::vector<int> association_counts;
};

struct TangentConeResult {
  RingPtr chart_ring;  // ambient minus the chart variable
  Ideal cone_ideal;    // homogeneous in the chart ring
  long long multiplicity = 0;
  int chart_var = -1;
};

// Degree-d part of Z as a rational map (deterministic reduced-row-echelon
// basis over the degrevlex monomial list). Target ring is freshly created.
RationalMap linear_system_map(const Ideal& Z, int d, const std::string& target_name = "");

// basis of the degree-d graded piece as polynomials (RREF rows)
std::vector<Polynomial> graded_piece_basis(const Ideal& Z, int d);

Ideal line_through(const ProjPoint& P, const ProjPoint& Q);

// true iff V(L) is contained in V(W), i.e. I(W) subset of I(L)
bool contains_subscheme(const Ideal& W, const Ideal& L);

// fast exact test: does V(W) contain the line through P and Q?
bool contains_line(const Ideal& W, const ProjPoint& P, const ProjPoint& Q);

ConfigurationGraph configuration(const Ideal& W, const std::vector<ProjPoint>& points,
                                 const std::vector<std::string>& names = {});

// Closure of m(V(X)) via the graph ideal and elimination of source variables.
// Coordinates that are plain variables are renamed instead of eliminated.
Ideal map_image(const RationalMap& m, const Ideal& X);

RationalMap compose(const RationalMap& m1, const RationalMap& m2);

// With a candidate: the composition (candidate after m) acts as the identity on
// V(X) (cross-product test modulo I(X)). Without: attempt inverse_map.
bool is_birational_onto_image(const RationalMap& m, const Ideal& X,
                              const RationalMap* candidate = nullptr);

// Inverse of a birational m restricted to V(X), found as the kernel of the
// bidegree-(1,d) composition constraints for increasing d; always verified by
// composition before returning. Throws InverseNotFound past max_degree.
RationalMap inverse_map(const RationalMap& m, const Ideal& X, int max_degree = 8);

TangentConeResult tangent_cone(const Ideal& W, const ProjPoint& P);

// order-k vanishing of all gens of I along V(L): derivatives up to k-1 lie in L
bool vanishes_to_order(const Ideal& I, const Ideal& L, int k);
bool vanishes_to_order(const Ideal& I, const ProjPoint& P, int k);

// Projection of P^n away from the span of the given points.
RationalMap projection_from_points(const std::vector<ProjPoint>& points,
                                   const std::string& target_name = "");

// ideal of a single projective point (kernel of the evaluation row)
Ideal point_ideal(const ProjPoint& P);

// all coordinates of (m restricted to the linear subspace V(subspace)) are
// proportional to the fixed point P (the map contracts the subspace to P)
bool image_point_is(const RationalMap& m, const Ideal& subspace, const ProjPoint& P);

}  // namespace ef
