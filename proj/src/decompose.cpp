#include "decompose.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ef {

std::optional<std::pair<Polynomial, Polynomial>> split_quadratic_form(const Polynomial& q) {
  if (q.is_zero() || !q.is_homogeneous() || q.total_degree() != 2)
    throw EfError(ErrKind::Internal, "split_quadratic_form wants a homogeneous quadric");
  RingPtr R = q.ring();
  PrimeField F = R->field();
  int n = R->nvars();

  // symbolic diagonalization: q = sum d_k * l_k^2, stop past rank 2
  std::vector<Polynomial> forms;
  std::vector<uint64_t> diag;
  Polynomial w = q;
  while (!w.is_zero()) {
    if ((int)diag.size() >= 3) return std::nullopt;
    // a square term?
    int sq = -1;
    uint64_t a = 0;
    for (size_t t = 0; t < w.nterms() && sq < 0; ++t) {
      const uint16_t* e = w.exp(t);
      for (int v = 0; v < n; ++v)
        if (e[v] == 2) {
          sq = v;
          a = w.coeff(t);
          break;
        }
    }
    if (sq >= 0) {
      Polynomial xv = Polynomial::variable(R, sq);
      Polynomial L = w.derivative(sq) - xv.scaled(F.mul(2, a));
      uint64_t inv2a = F.inv(F.mul(2, a));
      Polynomial ell = xv + L.scaled(inv2a);
      forms.push_back(ell);
      diag.push_back(a);
      w = w - (ell * ell).scaled(a);
      continue;
    }
    // otherwise a cross term x_i x_j
    int vi = -1, vj = -1;
    uint64_t b = 0;
    const uint16_t* e = w.exp(0);
    for (int v = 0; v < n; ++v)
      if (e[v] == 1) (vi < 0 ? vi : vj) = v;
    b = w.coeff(0);
    if (vi < 0 || vj < 0) throw EfError(ErrKind::Internal, "quadric decomposition stuck");
    Polynomial xi = Polynomial::variable(R, vi), xj = Polynomial::variable(R, vj);
    uint64_t binv = F.inv(b);
    Polynomial L1 = w.derivative(vi) - xj.scaled(b);
    Polynomial L2 = w.derivative(vj) - xi.scaled(b);
    Polynomial u = xi + L2.scaled(binv);
    Polynomial v2 = xj + L1.scaled(binv);
    Polynomial la = u + v2, lb = u - v2;
    uint64_t quarter = F.inv(4);
    forms.push_back(la);
    diag.push_back(F.mul(b, quarter));
    forms.push_back(lb);
    diag.push_back(F.neg(F.mul(b, quarter)));
    w = w - (la * la).scaled(diag[diag.size() - 2]) - (lb * lb).scaled(diag.back());
  }
  if (diag.empty() || (int)diag.size() > 2) return std::nullopt;

  std::optional<std::pair<Polynomial, Polynomial>> result;
  if (diag.size() == 1) {
    result = std::make_pair(forms[0], forms[0].scaled(diag[0]));
  } else {
    uint64_t ratio = F.mul(F.neg(diag[1]), F.inv(diag[0]));
    uint64_t s;
    if (!F.sqrt(ratio, s)) return std::nullopt;
    Polynomial l1 = forms[0] - forms[1].scaled(s);
    Polynomial l2 = (forms[0] + forms[1].scaled(s)).scaled(diag[0]);
    result = std::make_pair(l1, l2);
  }
  if (!(result->first * result->second == q))
    throw EfError(ErrKind::Internal, "quadric split verification failed");
  return result;
}

bool radical_membership(const Polynomial& f, const Ideal& I) {
  RingPtr R = I.ring;
  std::vector<std::string> vars = R->vars;
  vars.push_back("t@rad");
  RingPtr Rt = make_ring(R->name + "_rad", vars, R->prime);
  int n = R->nvars();
  std::vector<int> vmap(n);
  for (int v = 0; v < n; ++v) vmap[v] = v;
  std::vector<Polynomial> gens;
  for (auto& g : I.gens)
    if (!g.is_zero()) gens.push_back(reindex(g, Rt, vmap));
  gens.push_back(reindex(f, Rt, vmap) * Polynomial::variable(Rt, n) -
                 Polynomial::constant(Rt, 1));
  GroebnerBasis G = groebner_basis(Ideal::of(Rt, gens));
  if (G.size() != 1) return false;
  const OrderedPoly& g0 = G.elems[0];
  if (g0.nterms() != 1) return false;
  for (int v = 0; v <= n; ++v)
    if (g0.exp(0)[v]) return false;
  return true;
}

namespace {

std::string ideal_key(const GroebnerBasis& G) {
  std::ostringstream os;
  for (auto& p : G.polynomials()) os << p.str() << ";";
  return os.str();
}

bool gb_is_unit(const GroebnerBasis& G) {
  if (G.size() != 1) return false;
  const OrderedPoly& g = G.elems[0];
  if (g.nterms() != 1) return false;
  for (int v = 0; v < g.nvars; ++v)
    if (g.exp(0)[v]) return false;
  return true;
}

struct Splitter {
  RingPtr ring;
  bool complete = true;
  std::vector<Ideal> leaves;
  std::set<std::string> visited;

  // candidate factors of g; empty if g is not usefully factorable
  std::vector<Polynomial> try_factor(const Polynomial& g) {
    int n = ring->nvars();
    // monomial content
    std::vector<uint16_t> content(n, 0xffff);
    for (size_t t = 0; t < g.nterms(); ++t)
      for (int v = 0; v < n; ++v) content[v] = std::min(content[v], g.exp(t)[v]);
    std::vector<Polynomial> factors;
    Polynomial core = g;
    for (int v = 0; v < n; ++v) {
      if (content[v] == 0 || content[v] == 0xffff) continue;
      factors.push_back(Polynomial::variable(ring, v));
      for (uint16_t k = 0; k < content[v]; ++k)
        core = exact_divide(core, Polynomial::variable(ring, v));
    }
    if (!factors.empty()) {
      if (core.total_degree() > 0) factors.push_back(core.monic());
      if (factors.size() == 1 && factors[0] == g) return {};  // g is already a variable
      return factors;
    }
    if (core.nterms() == 1) return {};
    if (core.is_homogeneous() && core.total_degree() == 2) {
      auto sp = split_quadratic_form(core);
      if (sp) {
        Polynomial l1 = sp->first.monic(), l2 = sp->second.monic();
        if (l1 == l2) return {l1};
        return {l1, l2};
      }
      return {};
    }
    // element in a single variable: univariate factorization
    int only = -1;
    bool single = true;
    for (size_t t = 0; t < core.nterms() && single; ++t)
      for (int v = 0; v < n; ++v)
        if (core.exp(t)[v]) {
          if (only < 0) only = v;
          else if (only != v) single = false;
        }
    if (single && only >= 0 && core.total_degree() >= 2) {
      PrimeField F = ring->field();
      UPoly u(core.total_degree() + 1, 0);
      for (size_t t = 0; t < core.nterms(); ++t) u[core.exp(t)[only]] = core.coeff(t);
      auto fac = factor_univariate(F, u);
      if (fac.size() >= 2 || (fac.size() == 1 && fac[0].second >= 2)) {
        std::vector<Polynomial> out;
        for (auto& [uf, mult] : fac) {
          PolyBuilder b(ring);
          std::vector<uint16_t> e(n, 0);
          for (size_t i = 0; i < uf.size(); ++i) {
            if (!uf[i]) continue;
            e[only] = (uint16_t)i;
            b.add_term(e.data(), uf[i]);
          }
          out.push_back(b.build());
        }
        return out;
      }
    }
    return {};
  }

  void process(const Ideal& J) {
    GroebnerBasis G = groebner_basis(J);
    if (gb_is_unit(G)) return;
    std::string k = ideal_key(G);
    if (!visited.insert(k).second) return;
    std::vector<Polynomial> polys = G.polynomials();

    // split on the first GB element all of whose factors are strict refinements
    for (auto& g : polys) {
      std::vector<Polynomial> factors = try_factor(g);
      if (factors.empty()) continue;
      bool all_strict = true;
      for (auto& f : factors)
        if (normal_form(f, G).is_zero()) {
          all_strict = false;
          break;
        }
      if (!all_strict) continue;
      for (auto& f : factors) {
        std::vector<Polynomial> gens = polys;
        gens.push_back(f);
        process(Ideal::of(ring, std::move(gens)));
      }
      return;
    }
    for (auto& p : polys)
      if (p.total_degree() > 2) complete = false;
    leaves.push_back(Ideal::of(ring, polys));
  }
};

}  // namespace

ComponentList minimal_components(const Ideal& I) {
  Splitter sp;
  sp.ring = I.ring;
  sp.process(I);

  std::vector<Ideal>& leaves = sp.leaves;
  std::vector<char> drop(leaves.size(), 0);
  for (size_t i = 0; i < leaves.size(); ++i)
    for (size_t j = 0; j < leaves.size(); ++j) {
      if (i == j || drop[i] || drop[j]) continue;
      if (ideal_contains(leaves[i], leaves[j])) {
        // J subset of I_i: V(i) is contained in V(j): drop i unless equal and earlier
        if (ideal_contains(leaves[j], leaves[i])) {
          if (j < i) drop[i] = 1;
        } else {
          drop[i] = 1;
        }
      }
    }
  ComponentList out;
  out.complete = sp.complete;
  for (size_t i = 0; i < leaves.size(); ++i)
    if (!drop[i]) out.components.push_back(leaves[i]);
  std::sort(out.components.begin(), out.components.end(), [](const Ideal& a, const Ideal& b) {
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
    std::ostringstream as, bs;
    for (auto& g : a.gens) as << g.str() << ";";
    for (auto& g : b.gens) bs << g.str() << ";";
    return as.str() < bs.str();
  });
  return out;
}

}  // namespace ef
