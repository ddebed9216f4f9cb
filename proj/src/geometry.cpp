#include "geometry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace ef {

namespace {

// dense linear algebra over F_p
void rref(const PrimeField& F, std::vector<std::vector<uint64_t>>& rows) {
  if (rows.empty()) return;
  size_t cols = rows[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    uint64_t inv = F.inv(rows[rank][c]);
    for (size_t j = c; j < cols; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      uint64_t f = rows[r][c];
      for (size_t j = c; j < cols; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  rows.resize(rank);
}

std::vector<std::vector<uint64_t>> kernel_basis(const PrimeField& F,
                                                std::vector<std::vector<uint64_t>> rows,
                                                size_t cols) {
  rref(F, rows);
  std::vector<int> pivot_of_col(cols, -1);
  for (size_t r = 0; r < rows.size(); ++r) {
    size_t c = 0;
    while (c < cols && rows[r][c] == 0) ++c;
    if (c < cols) pivot_of_col[c] = (int)r;
  }
  std::vector<std::vector<uint64_t>> out;
  for (size_t j = 0; j < cols; ++j) {
    if (pivot_of_col[j] >= 0) continue;
    std::vector<uint64_t> v(cols, 0);
    v[j] = 1;
    for (size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = F.neg(rows[pivot_of_col[c]][j]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<uint16_t>> all_monomials(int n, int d, const MonomialOrder& ord) {
  std::vector<std::vector<uint16_t>> out;
  std::vector<uint16_t> e(n, 0);
  std::function<void(int, int)> rec = [&](int v, int rem) {
    if (v == n - 1) {
      e[v] = (uint16_t)rem;
      out.push_back(e);
      e[v] = 0;
      return;
    }
    for (int k = rem; k >= 0; --k) {
      e[v] = (uint16_t)k;
      rec(v + 1, rem - k);
    }
    e[v] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(),
            [&](const std::vector<uint16_t>& a, const std::vector<uint16_t>& b) {
              return ord.compare(a.data(), b.data()) > 0;
            });
  return out;
}

std::string mono_key(const uint16_t* m, int n) {
  return std::string(reinterpret_cast<const char*>(m), sizeof(uint16_t) * n);
}

}  // namespace

int RationalMap::coord_degree() const {
  int d = -1;
  for (auto& c : coords) {
    if (c.is_zero()) continue;
    if (!c.is_homogeneous())
      throw EfError(ErrKind::Internal, "rational map coordinate not homogeneous");
    int cd = c.total_degree();
    if (d >= 0 && cd != d)
      throw EfError(ErrKind::Internal, "rational map coordinates of unequal degree");
    d = cd;
  }
  if (d < 0) throw EfError(ErrKind::ZeroMap, "rational map with all-zero coordinates");
  return d;
}

RingMap RationalMap::pullback_hom() const {
  if ((int)coords.size() != target->nvars())
    throw EfError(ErrKind::Internal, "coordinate count does not match target ring");
  return RingMap{target, source, coords};
}

Ideal pullback_ideal(const RationalMap& m, const Ideal& J) {
  if (J.ring != m.target) throw EfError(ErrKind::RingMismatch, "pullback: ideal not in target");
  RingMap h = m.pullback_hom();
  std::vector<Polynomial> gens;
  for (auto& g : J.gens) gens.push_back(apply_ring_map(h, g));
  return Ideal::of(m.source, std::move(gens));
}

std::vector<Polynomial> graded_piece_basis(const Ideal& Z, int d) {
  RingPtr R = Z.ring;
  int n = R->nvars();
  PrimeField F = R->field();
  MonomialOrder ord = MonomialOrder::degrevlex(n);
  auto mons = all_monomials(n, d, ord);
  std::unordered_map<std::string, int> col;
  for (int i = 0; i < (int)mons.size(); ++i) col[mono_key(mons[i].data(), n)] = i;

  std::vector<std::vector<uint64_t>> rows;
  std::vector<uint16_t> prod(n);
  for (auto& g : Z.gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous())
      throw EfError(ErrKind::Internal, "graded piece of a non-homogeneous ideal");
    int e = g.total_degree();
    if (e > d) continue;
    for (auto& q : all_monomials(n, d - e, ord)) {
      std::vector<uint64_t> row(mons.size(), 0);
      for (size_t t = 0; t < g.nterms(); ++t) {
        for (int v = 0; v < n; ++v) prod[v] = (uint16_t)(g.exp(t)[v] + q[v]);
        row[col.at(mono_key(prod.data(), n))] = g.coeff(t);
      }
      rows.push_back(std::move(row));
    }
  }
  rref(F, rows);
  std::vector<Polynomial> out;
  for (auto& row : rows) {
    PolyBuilder b(R);
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j]) b.add_term(mons[j].data(), row[j]);
    out.push_back(b.build());
  }
  return out;
}

RationalMap linear_system_map(const Ideal& Z, int d, const std::string& target_name) {
  if (d < 1) throw EfError(ErrKind::Internal, "linear system needs degree >= 1");
  std::vector<Polynomial> basis = graded_piece_basis(Z, d);
  if (basis.empty()) throw EfError(ErrKind::EmptySystem, "no forms of the requested degree");
  std::string name = target_name.empty() ? Z.ring->name + "_sys" : target_name;
  std::vector<std::string> vars;
  for (size_t i = 0; i < basis.size(); ++i) vars.push_back("s_" + std::to_string(i));
  RingPtr T = make_ring(name, vars, Z.ring->prime);
  return RationalMap{Z.ring, T, std::move(basis)};
}

Ideal point_ideal(const ProjPoint& P) {
  RingPtr R = P.ring;
  PrimeField F = R->field();
  std::vector<std::vector<uint64_t>> m = {P.coords};
  auto kern = kernel_basis(F, m, P.coords.size());
  std::vector<Polynomial> gens;
  for (auto& v : kern) {
    PolyBuilder b(R);
    std::vector<uint16_t> e(R->nvars(), 0);
    for (size_t j = 0; j < v.size(); ++j) {
      if (!v[j]) continue;
      e[j] = 1;
      b.add_term(e.data(), v[j]);
      e[j] = 0;
    }
    gens.push_back(b.build());
  }
  return Ideal::of(R, std::move(gens));
}

Ideal line_through(const ProjPoint& P, const ProjPoint& Q) {
  if (P.ring != Q.ring) throw EfError(ErrKind::RingMismatch, "line endpoints in different rings");
  if (P.same_point(Q)) throw EfError(ErrKind::IdenticalPoints, "line through identical points");
  RingPtr R = P.ring;
  PrimeField F = R->field();
  std::vector<std::vector<uint64_t>> m = {P.coords, Q.coords};
  auto kern = kernel_basis(F, m, P.coords.size());
  std::vector<Polynomial> gens;
  for (auto& v : kern) {
    PolyBuilder b(R);
    std::vector<uint16_t> e(R->nvars(), 0);
    for (size_t j = 0; j < v.size(); ++j) {
      if (!v[j]) continue;
      e[j] = 1;
      b.add_term(e.data(), v[j]);
      e[j] = 0;
    }
    gens.push_back(b.build());
  }
  return Ideal::of(R, std::move(gens));
}

bool contains_subscheme(const Ideal& W, const Ideal& L) {
  if (W.ring != L.ring) throw EfError(ErrKind::RingMismatch, "contains_subscheme ring mismatch");
  return ideal_contains(L, W);  // I(W) subset I(L)
}

bool contains_line(const Ideal& W, const ProjPoint& P, const ProjPoint& Q) {
  RingPtr R = W.ring;
  if (P.ring != R || Q.ring != R)
    throw EfError(ErrKind::RingMismatch, "contains_line ring mismatch");
  if (P.same_point(Q)) throw EfError(ErrKind::IdenticalPoints, "contains_line: equal points");
  static thread_local RingPtr st;
  if (!st || st->prime != R->prime) st = make_ring("param_st", {"s@", "t@"}, R->prime);
  RingMap sub{R, st, {}};
  sub.images.reserve(R->nvars());
  Polynomial s = Polynomial::variable(st, 0), t = Polynomial::variable(st, 1);
  for (int v = 0; v < R->nvars(); ++v)
    sub.images.push_back(s.scaled(P.coords[v]) + t.scaled(Q.coords[v]));
  for (auto& g : W.gens)
    if (!apply_ring_map(sub, g).is_zero()) return false;
  return true;
}

ConfigurationGraph configuration(const Ideal& W, const std::vector<ProjPoint>& points,
                                 const std::vector<std::string>& names) {
  for (auto& P : points)
    for (auto& g : W.gens)
      if (g.evaluate(P.coords) != 0)
        throw EfError(ErrKind::PointNotOnVariety, "configuration point not on variety");
  ConfigurationGraph G;
  G.points = points;
  G.point_names = names;
  if (G.point_names.empty())
    for (size_t i = 0; i < points.size(); ++i) G.point_names.push_back("P" + std::to_string(i + 1));
  size_t n = points.size();
  G.adjacency.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      bool adj = contains_line(W, points[i], points[j]);
      G.adjacency[i][j] = G.adjacency[j][i] = adj;
    }
  G.association_counts.assign(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) G.association_counts[i] += G.adjacency[i][j];
  return G;
}

Ideal map_image(const RationalMap& m, const Ideal& X) {
  if (X.ring != m.source) throw EfError(ErrKind::RingMismatch, "map_image: X not in source ring");
  {
    GroebnerBasis G = groebner_basis(X);
    bool any = false;
    for (auto& c : m.coords)
      if (!normal_form(c, G).is_zero()) {
        any = true;
        break;
      }
    if (!any) throw EfError(ErrKind::ZeroMap, "map contracts the variety to nothing");
  }
  int ns = m.source->nvars(), nt = m.target->nvars();
  PrimeField F = m.source->field();

  // work ring: target variables then source variables
  std::vector<std::string> vars = m.target->vars;
  for (auto& v : m.source->vars) {
    std::string name = v;
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
    vars.push_back(name);
  }
  RingPtr W = make_ring("graph_" + m.target->name, vars, m.source->prime);

  // rename fast path: a coordinate that is a plain variable replaces it
  std::vector<Polynomial> srcsub(ns);  // image of each source var inside W
  std::vector<char> renamed(ns, 0);
  for (int v = 0; v < ns; ++v) srcsub[v] = Polynomial::variable(W, nt + v);
  std::vector<char> coord_handled(nt, 0);
  for (int j = 0; j < nt; ++j) {
    const Polynomial& c = m.coords[j];
    int var;
    if (c.nterms() == 1 && c.is_monomial_term(0, &var) && !renamed[var]) {
      // y_j = coeff * x_var  =>  x_var := coeff^{-1} y_j
      srcsub[var] = Polynomial::variable(W, j).scaled(F.inv(c.coeff(0)));
      renamed[var] = 1;
      coord_handled[j] = 1;
    }
  }
  RingMap lift{m.source, W, srcsub};

  std::vector<Polynomial> gens;
  for (auto& g : X.gens)
    if (!g.is_zero()) gens.push_back(apply_ring_map(lift, g));
  for (int j = 0; j < nt; ++j) {
    if (coord_handled[j]) continue;
    gens.push_back(Polynomial::variable(W, j) - apply_ring_map(lift, m.coords[j]));
  }
  std::vector<int> elim_vars;
  for (int v = 0; v < ns; ++v) elim_vars.push_back(nt + v);
  Ideal elim = eliminate(Ideal::of(W, gens), elim_vars);

  std::vector<int> back(nt);
  std::iota(back.begin(), back.end(), 0);
  std::vector<Polynomial> out;
  for (auto& g : elim.gens) out.push_back(reindex(g, m.target, back));
  return Ideal::of(m.target, std::move(out));
}

RationalMap compose(const RationalMap& m1, const RationalMap& m2) {
  if (m1.target != m2.source)
    throw EfError(ErrKind::RingMismatch, "compose: inner target != outer source");
  RingMap h{m2.source, m1.source, m1.coords};
  std::vector<Polynomial> coords;
  for (auto& c : m2.coords) coords.push_back(apply_ring_map(h, c));
  bool all_zero = true;
  for (auto& c : coords) all_zero = all_zero && c.is_zero();
  if (all_zero) throw EfError(ErrKind::ZeroMap, "composition is identically zero");
  // strip common monomial content
  int n = m1.source->nvars();
  std::vector<uint16_t> mincontent(n, 0xffff);
  for (auto& c : coords) {
    if (c.is_zero()) continue;
    for (size_t t = 0; t < c.nterms(); ++t)
      for (int v = 0; v < n; ++v) mincontent[v] = std::min(mincontent[v], c.exp(t)[v]);
  }
  bool nontrivial = false;
  for (int v = 0; v < n; ++v) nontrivial = nontrivial || (mincontent[v] > 0 && mincontent[v] != 0xffff);
  if (nontrivial) {
    for (auto& c : coords) {
      if (c.is_zero()) continue;
      std::vector<uint16_t> exps(c.raw_exps());
      for (size_t t = 0; t < c.nterms(); ++t)
        for (int v = 0; v < n; ++v) exps[t * n + v] -= mincontent[v];
      c = Polynomial::from_terms(m1.source, std::move(exps), c.raw_coeffs());
    }
  }
  return RationalMap{m1.source, m2.target, std::move(coords)};
}

bool is_birational_onto_image(const RationalMap& m, const Ideal& X,
                              const RationalMap* candidate) {
  if (X.ring != m.source) throw EfError(ErrKind::RingMismatch, "is_birational: X ring mismatch");
  if (!candidate) {
    try {
      inverse_map(m, X);
      return true;
    } catch (const EfError& e) {
      if (e.kind == ErrKind::InverseNotFound) return false;
      throw;
    }
  }
  if (candidate->source != m.target || candidate->target != m.source)
    throw EfError(ErrKind::RingMismatch, "is_birational: candidate rings mismatch");
  RationalMap comp = compose(m, *candidate);  // V(X) -> V(X)
  GroebnerBasis G = groebner_basis(X);
  bool some_nonzero = false;
  std::vector<Polynomial> c;
  for (auto& ci : comp.coords) {
    Polynomial r = normal_form(ci, G);
    some_nonzero = some_nonzero || !r.is_zero();
    c.push_back(std::move(r));
  }
  if (!some_nonzero) return false;
  int n = (int)c.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Polynomial cross = Polynomial::variable(m.source, i) * c[j] -
                         Polynomial::variable(m.source, j) * c[i];
      if (!normal_form(cross, G).is_zero()) return false;
    }
  return true;
}

RationalMap inverse_map(const RationalMap& m, const Ideal& X, int max_degree) {
  if (X.ring != m.source) throw EfError(ErrKind::RingMismatch, "inverse_map: X ring mismatch");
  int e = m.coord_degree();
  int ns = m.source->nvars();
  int nt = m.target->nvars();
  PrimeField F = m.source->field();
  GroebnerBasis G = groebner_basis(X);
  QuotientAlgebra Q(G);
  MonomialOrder tord = MonomialOrder::degrevlex(nt);

  using Row = QuotientAlgebra::Row;
  auto row_mul_poly = [&](const Row& r, int deg, const Polynomial& f) {
    std::unordered_map<int32_t, uint64_t> acc;
    std::vector<uint16_t> prod(ns);
    for (auto& [si, c] : r) {
      const auto& ms = Q.std_monomial(deg, si);
      for (size_t t = 0; t < f.nterms(); ++t) {
        for (int v = 0; v < ns; ++v) prod[v] = (uint16_t)(ms[v] + f.exp(t)[v]);
        const Row& sub = Q.nf_monomial(prod.data(), deg + f.total_degree());
        uint64_t cc = F.mul(c, f.coeff(t));
        for (auto& [j, cv] : sub) {
          uint64_t& slot = acc[j];
          slot = F.add(slot, F.mul(cc, cv));
        }
      }
    }
    Row out;
    for (auto& [j, cv] : acc)
      if (cv) out.push_back({j, cv});
    std::sort(out.begin(), out.end());
    return out;
  };

  for (int d = 1; d <= max_degree; ++d) {
    auto mons = all_monomials(nt, d, tord);
    int Nd = (int)mons.size();
    size_t U = (size_t)ns * Nd;

    // P_alpha = NF(prod coords^alpha), built by extending along the last variable path
    std::vector<Row> P(Nd);
    {
      std::unordered_map<std::string, Row> cache;  // by exponent key, any degree <= d
      std::vector<uint16_t> zero(nt, 0);
      cache[mono_key(zero.data(), nt)] = Q.nf_poly(Polynomial::constant(m.source, 1));
      std::function<const Row&(const std::vector<uint16_t>&, int)> get =
          [&](const std::vector<uint16_t>& a, int da) -> const Row& {
        auto it = cache.find(mono_key(a.data(), nt));
        if (it != cache.end()) return it->second;
        int v = 0;
        while (a[v] == 0) ++v;
        std::vector<uint16_t> par = a;
        par[v] -= 1;
        const Row& prow = get(par, da - 1);
        Row r = row_mul_poly(prow, (da - 1) * e, m.coords[v]);
        return cache.emplace(mono_key(a.data(), nt), std::move(r)).first->second;
      };
      for (int a = 0; a < Nd; ++a) P[a] = get(mons[a], d);
    }

    // R[i][a] = NF(P_a * w_i) at degree d*e + 1
    int nf_dim = Q.n_std(d * e + 1);
    std::vector<std::vector<Row>> R(ns, std::vector<Row>(Nd));
    for (int i = 0; i < ns; ++i)
      for (int a = 0; a < Nd; ++a) R[i][a] = Q.mul_var(P[a], d * e, i);

    // echelon over U unknowns
    std::vector<std::vector<uint64_t>> ech;       // normalized rows
    std::vector<int> pivots;                      // pivot column of each row
    std::vector<int> pivot_of_col(U, -1);
    auto insert_row = [&](std::vector<uint64_t>& row) {
      for (size_t r = 0; r < ech.size(); ++r) {
        uint64_t c = row[pivots[r]];
        if (!c) continue;
        const auto& er = ech[r];
        for (size_t j = 0; j < U; ++j)
          if (er[j]) row[j] = F.sub(row[j], F.mul(c, er[j]));
      }
      size_t p = 0;
      while (p < U && row[p] == 0) ++p;
      if (p == U) return;
      uint64_t inv = F.inv(row[p]);
      for (size_t j = p; j < U; ++j) row[j] = F.mul(row[j], inv);
      pivot_of_col[p] = (int)ech.size();
      pivots.push_back((int)p);
      ech.push_back(std::move(row));
    };

    auto add_pair_rows = [&](int i, int j) {
      for (int s = 0; s < nf_dim; ++s) {
        std::vector<uint64_t> row(U, 0);
        bool nonzero = false;
        for (int a = 0; a < Nd; ++a) {
          for (auto& [idx, c] : R[j][a])
            if (idx == s) {
              row[(size_t)i * Nd + a] = c;
              nonzero = true;
            }
          for (auto& [idx, c] : R[i][a])
            if (idx == s) {
              row[(size_t)j * Nd + a] = F.neg(c);
              nonzero = true;
            }
        }
        if (nonzero) insert_row(row);
      }
    };

    // candidate-space check of a pair without materializing its rows
    auto kernel_vectors = [&]() {
      std::vector<std::vector<uint64_t>> out;
      for (size_t j = 0; j < U; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<uint64_t> v(U, 0);
        v[j] = 1;
        for (size_t c = 0; c < U; ++c)
          if (pivot_of_col[c] >= 0) v[c] = F.neg(ech[pivot_of_col[c]][j]);
        out.push_back(std::move(v));
      }
      return out;
    };
    auto vec_satisfies_pair = [&](const std::vector<uint64_t>& v, int i, int j) {
      std::unordered_map<int32_t, uint64_t> acc;
      for (int a = 0; a < Nd; ++a) {
        uint64_t ci = v[(size_t)i * Nd + a], cj = v[(size_t)j * Nd + a];
        if (ci)
          for (auto& [idx, c] : R[j][a]) {
            uint64_t& slot = acc[idx];
            slot = F.add(slot, F.mul(ci, c));
          }
        if (cj)
          for (auto& [idx, c] : R[i][a]) {
            uint64_t& slot = acc[idx];
            slot = F.sub(slot, F.mul(cj, c));
          }
      }
      for (auto& [idx, c] : acc)
        if (c) return false;
      return true;
    };

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < ns; ++i)
      for (int j = i + 1; j < ns; ++j) pairs.push_back({i, j});

    size_t processed = 0;
    bool dead = false;
    // seed with the first two pairs, then verify-and-refine
    while (processed < pairs.size()) {
      add_pair_rows(pairs[processed].first, pairs[processed].second);
      ++processed;
      if (ech.size() == U) {
        dead = true;
        break;
      }
      if (processed < 2) continue;
      auto kern = kernel_vectors();
      if (kern.empty()) {
        dead = true;
        break;
      }
      // find an unprocessed pair violated by some kernel vector
      bool violated = false;
      for (size_t pi = processed; pi < pairs.size() && !violated; ++pi)
        for (auto& v : kern)
          if (!vec_satisfies_pair(v, pairs[pi].first, pairs[pi].second)) {
            std::swap(pairs[processed], pairs[pi]);
            violated = true;
            break;
          }
      if (!violated) break;  // kernel satisfies every remaining pair
    }
    if (dead) continue;

    auto kern = kernel_vectors();
    for (auto& v : kern) {
      // composed coordinates must not all vanish on X
      bool nonzero = false;
      for (int i = 0; i < ns && !nonzero; ++i) {
        std::unordered_map<int32_t, uint64_t> acc;
        for (int a = 0; a < Nd; ++a) {
          uint64_t c = v[(size_t)i * Nd + a];
          if (!c) continue;
          for (auto& [idx, cv] : P[a]) {
            uint64_t& slot = acc[idx];
            slot = F.add(slot, F.mul(c, cv));
          }
        }
        for (auto& [idx, cv] : acc)
          if (cv) nonzero = true;
      }
      if (!nonzero) continue;
      // build the inverse coordinates
      std::vector<Polynomial> coords;
      for (int i = 0; i < ns; ++i) {
        PolyBuilder b(m.target);
        for (int a = 0; a < Nd; ++a)
          if (v[(size_t)i * Nd + a]) b.add_term(mons[a].data(), v[(size_t)i * Nd + a]);
        coords.push_back(b.build());
      }
      RationalMap inv{m.target, m.source, std::move(coords)};
      return inv;
    }
  }
  throw EfError(ErrKind::InverseNotFound, "no verifying inverse found within degree budget");
}

TangentConeResult tangent_cone(const Ideal& W, const ProjPoint& P) {
  ChartResult chart = chart_at_point(W.gens, P);
  GroebnerBasis G1 = groebner_basis(Ideal::of(chart.chart_ring, chart.ideal));

  RingPtr C = chart.chart_ring;
  int nc = C->nvars();
  std::vector<std::string> vars = C->vars;
  vars.push_back("h@tc");
  RingPtr E = make_ring(C->name + "_h", vars, C->prime);
  std::vector<Polynomial> H;
  for (auto& g : G1.polynomials()) H.push_back(homogenize(g, E, nc));
  Ideal sat = saturate_var(Ideal::of(E, H), nc);

  std::vector<int> back(nc + 1, -1);
  for (int v = 0; v < nc; ++v) back[v] = v;
  std::vector<Polynomial> cone;
  for (auto& g : sat.gens) {
    Polynomial affine = g.set_var(nc, 1);
    if (affine.is_zero()) continue;
    cone.push_back(reindex(min_degree_part(affine), C, back));
  }
  TangentConeResult R;
  R.chart_ring = C;
  R.cone_ideal = Ideal::of(C, std::move(cone));
  R.chart_var = chart.chart_var;
  R.multiplicity = hilbert_data(R.cone_ideal).degree;
  return R;
}

bool vanishes_to_order(const Ideal& I, const Ideal& L, int k) {
  if (k < 1) throw EfError(ErrKind::Internal, "vanishes_to_order: k >= 1 required");
  std::vector<Polynomial> derivs = derivative_ideal(I.gens, k - 1);
  GroebnerBasis G = groebner_basis(L);
  for (auto& g : derivs)
    if (!normal_form(g, G).is_zero()) return false;
  return true;
}

bool vanishes_to_order(const Ideal& I, const ProjPoint& P, int k) {
  if (k < 1) throw EfError(ErrKind::Internal, "vanishes_to_order: k >= 1 required");
  std::vector<Polynomial> derivs = derivative_ideal(I.gens, k - 1);
  for (auto& g : derivs)
    if (g.evaluate(P.coords) != 0) return false;
  return true;
}

RationalMap projection_from_points(const std::vector<ProjPoint>& points,
                                   const std::string& target_name) {
  if (points.empty()) throw EfError(ErrKind::Internal, "projection from empty point set");
  RingPtr R = points[0].ring;
  PrimeField F = R->field();
  std::vector<std::vector<uint64_t>> m;
  for (auto& P : points) {
    if (P.ring != R) throw EfError(ErrKind::RingMismatch, "projection points ring mismatch");
    m.push_back(P.coords);
  }
  auto kern = kernel_basis(F, m, R->nvars());
  if (kern.empty()) throw EfError(ErrKind::SpanIsEverything, "points span the whole space");
  std::vector<Polynomial> coords;
  for (auto& v : kern) {
    PolyBuilder b(R);
    std::vector<uint16_t> e(R->nvars(), 0);
    for (size_t j = 0; j < v.size(); ++j) {
      if (!v[j]) continue;
      e[j] = 1;
      b.add_term(e.data(), v[j]);
      e[j] = 0;
    }
    coords.push_back(b.build());
  }
  std::string name = target_name.empty() ? R->name + "_proj" : target_name;
  std::vector<std::string> vars;
  for (size_t i = 0; i < coords.size(); ++i) vars.push_back("q_" + std::to_string(i));
  RingPtr T = make_ring(name, vars, R->prime);
  return RationalMap{R, T, std::move(coords)};
}

bool image_point_is(const RationalMap& m, const Ideal& subspace, const ProjPoint& P) {
  if (subspace.ring != m.source)
    throw EfError(ErrKind::RingMismatch, "image_point: subspace not in source ring");
  if (P.ring != m.target) throw EfError(ErrKind::RingMismatch, "image_point: point ring mismatch");
  RingPtr R = m.source;
  PrimeField F = R->field();
  int n = R->nvars();
  // parametrize the linear subspace: kernel of the coefficient matrix of its linear gens
  std::vector<std::vector<uint64_t>> rows;
  for (auto& g : subspace.gens) {
    if (g.is_zero()) continue;
    if (g.total_degree() != 1)
      throw EfError(ErrKind::Internal, "image_point: subspace must be linear");
    std::vector<uint64_t> row(n, 0);
    for (size_t t = 0; t < g.nterms(); ++t)
      for (int v = 0; v < n; ++v)
        if (g.exp(t)[v]) row[v] = g.coeff(t);
    rows.push_back(std::move(row));
  }
  auto basis = kernel_basis(F, rows, n);
  if (basis.empty()) throw EfError(ErrKind::Internal, "image_point: empty subspace");
  std::vector<std::string> uvars;
  for (size_t i = 0; i < basis.size(); ++i) uvars.push_back("u_" + std::to_string(i));
  RingPtr U = make_ring("param_u", uvars, R->prime);
  RingMap par{R, U, {}};
  par.images.reserve(n);
  for (int v = 0; v < n; ++v) {
    PolyBuilder b(U);
    std::vector<uint16_t> e(U->nvars(), 0);
    for (size_t l = 0; l < basis.size(); ++l) {
      if (!basis[l][v]) continue;
      e[l] = 1;
      b.add_term(e.data(), basis[l][v]);
      e[l] = 0;
    }
    par.images.push_back(b.build());
  }
  std::vector<Polynomial> comp;
  bool all_zero = true;
  for (auto& c : m.coords) {
    comp.push_back(apply_ring_map(par, c));
    all_zero = all_zero && comp.back().is_zero();
  }
  if (all_zero) return false;
  int k = (int)comp.size();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Polynomial cross = comp[i].scaled(P.coords[j]) - comp[j].scaled(P.coords[i]);
      if (!cross.is_zero()) return false;
    }
  return true;
}

}  // namespace ef
