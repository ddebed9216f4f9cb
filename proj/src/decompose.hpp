#pragma once

#include "geometry.hpp"

namespace ef {

struct ComponentList {
  std::vector<Ideal> components;  // pairwise non-containing, canonically sorted
  bool complete = true;           // false if an unsplittable residue of degree > 2 remained
};

// If the symmetric Gram matrix of a homogeneous quadric has rank <= 2 and the
// rank-2 discriminant is a square, return linear forms l1, l2 with l1*l2 = q.
std::optional<std::pair<Polynomial, Polynomial>> split_quadratic_form(const Polynomial& q);

// Recursive splitting on factorable GB elements (monomial content, split
// quadrics, single-variable factorization); no general primary decomposition.
ComponentList minimal_components(const Ideal& I);

// Rabinowitsch radical membership: some power of f lies in I.
bool radical_membership(const Polynomial& f, const Ideal& I);

}  // namespace ef
