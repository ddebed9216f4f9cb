#include "groebner.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <numeric>
#include <queue>

namespace ef {

bool Ideal::is_zero() const {
  for (auto& g : gens)
    if (!g.is_zero()) return false;
  return true;
}

bool Ideal::is_homogeneous() const {
  for (auto& g : gens)
    if (!g.is_homogeneous()) return false;
  return true;
}

GBOptions& current_gb_options() {
  static thread_local GBOptions opts;
  return opts;
}

GBStats& session_gb_stats() {
  static thread_local GBStats stats;
  return stats;
}

OrderedPoly to_ordered(const Polynomial& f, const MonomialOrder& ord) {
  int n = f.nvars();
  size_t nt = f.nterms();
  std::vector<uint32_t> idx(nt);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](uint32_t a, uint32_t b) { return ord.compare(f.exp(a), f.exp(b)) > 0; });
  OrderedPoly p;
  p.nvars = n;
  p.exps.reserve(nt * n);
  p.coeffs.reserve(nt);
  for (uint32_t i : idx) {
    p.exps.insert(p.exps.end(), f.exp(i), f.exp(i) + n);
    p.coeffs.push_back(f.coeff(i));
  }
  return p;
}

Polynomial from_ordered(const RingPtr& ring, const OrderedPoly& p) {
  return Polynomial::from_terms(ring, p.exps, p.coeffs);
}

bool monomial_divides(const uint16_t* a, const uint16_t* b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace {

inline uint64_t divmask(const uint16_t* e, int n) {
  uint64_t m = 0;
  for (int i = 0; i < n && i < 64; ++i)
    if (e[i]) m |= 1ull << i;
  return m;
}

inline int mono_degree(const uint16_t* e, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += e[i];
  return d;
}

// w -= c * x^q * g where g is monic and c * x^q * lt(g) equals the lead of w.
OrderedPoly sub_multiple(const PrimeField& F, const MonomialOrder& ord, const OrderedPoly& w,
                         const OrderedPoly& g, const uint16_t* q, uint64_t c) {
  int n = w.nvars;
  OrderedPoly r;
  r.nvars = n;
  r.exps.reserve(w.exps.size() + g.exps.size());
  r.coeffs.reserve(w.coeffs.size() + g.coeffs.size());
  std::vector<uint16_t> ge(n);
  size_t i = 1, j = 1;  // leads cancel
  while (i < w.nterms() || j < g.nterms()) {
    int cmp;
    if (i >= w.nterms()) cmp = -1;
    else if (j >= g.nterms()) cmp = 1;
    else {
      const uint16_t* je = g.exp(j);
      for (int v = 0; v < n; ++v) ge[v] = (uint16_t)(je[v] + q[v]);
      cmp = ord.compare(w.exp(i), ge.data());
    }
    if (cmp > 0) {
      r.exps.insert(r.exps.end(), w.exp(i), w.exp(i) + n);
      r.coeffs.push_back(w.coeffs[i]);
      ++i;
    } else if (cmp < 0) {
      const uint16_t* je = g.exp(j);
      for (int v = 0; v < n; ++v) ge[v] = (uint16_t)(je[v] + q[v]);
      r.exps.insert(r.exps.end(), ge.begin(), ge.end());
      r.coeffs.push_back(F.neg(F.mul(c, g.coeffs[j])));
      ++j;
    } else {
      uint64_t s = F.sub(w.coeffs[i], F.mul(c, g.coeffs[j]));
      if (s) {
        r.exps.insert(r.exps.end(), w.exp(i), w.exp(i) + n);
        r.coeffs.push_back(s);
      }
      ++i;
      ++j;
    }
  }
  return r;
}

struct Engine {
  RingPtr ring;
  MonomialOrder ord;
  PrimeField F;
  int n;
  uint64_t budget;
  GBStats stats;

  struct Elem {
    OrderedPoly poly;  // monic
    uint64_t mask;
    int sugar;
  };
  std::vector<Elem> basis;

  struct Pair {
    int i, j;
    std::vector<uint16_t> lcm;
    int sugar;
    uint64_t fifo;
    bool alive = true;
  };
  std::vector<Pair> pairs;

  struct HeapEntry {
    int sugar;
    uint32_t pair_id;
  };
  struct HeapCmp {
    Engine* e;
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
      if (a.sugar != b.sugar) return a.sugar > b.sugar;
      int c = e->ord.compare(e->pairs[a.pair_id].lcm.data(), e->pairs[b.pair_id].lcm.data());
      if (c != 0) return c > 0;  // smaller lcm first
      return e->pairs[a.pair_id].fifo > e->pairs[b.pair_id].fifo;
    }
  };
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCmp> heap;
  uint64_t fifo_counter = 0;

  Engine(RingPtr r, MonomialOrder o, uint64_t b)
      : ring(std::move(r)), ord(std::move(o)), F(ring->field()), n(ring->nvars()), budget(b),
        heap(HeapCmp{this}) {}

  void charge() {
    if (++stats.reduction_steps > budget)
      throw EfError(ErrKind::Timeout, "reduction budget exceeded");
  }

  void load_reducers(const std::vector<OrderedPoly>& elems) {
    for (auto& e : elems) {
      Elem el;
      el.mask = divmask(e.exp(0), n);
      el.sugar = 0;
      el.poly = e;
      basis.push_back(std::move(el));
    }
  }

  int find_reducer(const uint16_t* m, uint64_t mmask, int skip = -1) {
    for (int k = 0; k < (int)basis.size(); ++k) {
      if (k == skip) continue;
      const Elem& e = basis[k];
      if ((e.mask & ~mmask) != 0) continue;
      if (monomial_divides(e.poly.exp(0), m, n)) return k;
    }
    return -1;
  }

  OrderedPoly head_reduce(OrderedPoly w, int* sugar) {
    std::vector<uint16_t> q(n);
    while (!w.empty()) {
      const uint16_t* m = w.exp(0);
      int k = find_reducer(m, divmask(m, n));
      if (k < 0) break;
      const OrderedPoly& g = basis[k].poly;
      for (int v = 0; v < n; ++v) q[v] = (uint16_t)(m[v] - g.exp(0)[v]);
      if (sugar) *sugar = std::max(*sugar, basis[k].sugar + mono_degree(q.data(), n));
      charge();
      w = sub_multiple(F, ord, w, g, q.data(), w.coeffs[0]);
    }
    return w;
  }

  OrderedPoly full_reduce(OrderedPoly w, int skip = -1) {
    OrderedPoly out;
    out.nvars = n;
    std::vector<uint16_t> q(n);
    size_t done = 0;  // terms of w before `done` are in normal form
    while (done < w.nterms()) {
      const uint16_t* m = w.exp(done);
      int k = find_reducer(m, divmask(m, n), skip);
      if (k < 0) {
        ++done;
        continue;
      }
      const OrderedPoly& g = basis[k].poly;
      for (int v = 0; v < n; ++v) q[v] = (uint16_t)(m[v] - g.exp(0)[v]);
      charge();
      // reduce the suffix starting at `done`
      OrderedPoly suffix;
      suffix.nvars = n;
      suffix.exps.assign(w.exps.begin() + done * n, w.exps.end());
      suffix.coeffs.assign(w.coeffs.begin() + done, w.coeffs.end());
      OrderedPoly red = sub_multiple(F, ord, suffix, g, q.data(), suffix.coeffs[0]);
      w.exps.resize(done * n);
      w.coeffs.resize(done);
      w.exps.insert(w.exps.end(), red.exps.begin(), red.exps.end());
      w.coeffs.insert(w.coeffs.end(), red.coeffs.begin(), red.coeffs.end());
    }
    return w;
  }

  void make_monic(OrderedPoly& p) {
    if (p.empty() || p.coeffs[0] == 1) return;
    uint64_t inv = F.inv(p.coeffs[0]);
    for (auto& c : p.coeffs) c = F.mul(c, inv);
  }

  void push_pairs_for(int t) {
    const uint16_t* lt = basis[t].poly.exp(0);
    struct Cand {
      int i;
      std::vector<uint16_t> lcm;
      bool coprime;
      bool alive = true;
    };
    std::vector<Cand> cands;
    cands.reserve(t);
    for (int i = 0; i < t; ++i) {
      Cand c;
      c.i = i;
      c.lcm.resize(n);
      const uint16_t* li = basis[i].poly.exp(0);
      bool cop = true;
      for (int v = 0; v < n; ++v) {
        c.lcm[v] = std::max(li[v], lt[v]);
        if (li[v] && lt[v]) cop = false;
      }
      c.coprime = cop;
      cands.push_back(std::move(c));
    }
    for (auto& a : cands) {
      if (!a.alive) continue;
      for (auto& b : cands) {
        if (&a == &b || !b.alive) continue;
        if (monomial_divides(b.lcm.data(), a.lcm.data(), n) && b.lcm != a.lcm) {
          a.alive = false;
          break;
        }
      }
    }
    for (size_t x = 0; x < cands.size(); ++x) {
      if (!cands[x].alive) continue;
      for (size_t y = x + 1; y < cands.size(); ++y) {
        if (!cands[y].alive) continue;
        if (cands[x].lcm == cands[y].lcm) cands[y].alive = false;
      }
    }
    for (auto& a : cands)
      if (a.alive && a.coprime) a.alive = false;

    for (auto& pr : pairs) {
      if (!pr.alive) continue;
      if (!monomial_divides(lt, pr.lcm.data(), n)) continue;
      const uint16_t* li = basis[pr.i].poly.exp(0);
      const uint16_t* lj = basis[pr.j].poly.exp(0);
      bool eq_i = true, eq_j = true;
      for (int v = 0; v < n; ++v) {
        if (std::max(li[v], lt[v]) != pr.lcm[v]) eq_i = false;
        if (std::max(lj[v], lt[v]) != pr.lcm[v]) eq_j = false;
      }
      if (!eq_i && !eq_j) pr.alive = false;
    }

    for (auto& c : cands) {
      if (!c.alive) continue;
      Pair p;
      p.i = c.i;
      p.j = t;
      int di = mono_degree(c.lcm.data(), n);
      const uint16_t* li = basis[c.i].poly.exp(0);
      int si = basis[c.i].sugar - mono_degree(li, n);
      int sj = basis[t].sugar - mono_degree(lt, n);
      p.sugar = di + std::max(si, sj);
      p.lcm = std::move(c.lcm);
      p.fifo = fifo_counter++;
      pairs.push_back(std::move(p));
      heap.push({pairs.back().sugar, (uint32_t)(pairs.size() - 1)});
    }
  }

  void add_element(OrderedPoly p, int sugar) {
    make_monic(p);
    Elem e;
    e.mask = divmask(p.exp(0), n);
    e.sugar = sugar;
    e.poly = std::move(p);
    basis.push_back(std::move(e));
    stats.max_basis = std::max<uint64_t>(stats.max_basis, basis.size());
    push_pairs_for((int)basis.size() - 1);
  }

  OrderedPoly spoly(const Pair& pr) {
    const OrderedPoly& f = basis[pr.i].poly;
    const OrderedPoly& g = basis[pr.j].poly;
    std::vector<uint16_t> qf(n), qg(n);
    for (int v = 0; v < n; ++v) {
      qf[v] = (uint16_t)(pr.lcm[v] - f.exp(0)[v]);
      qg[v] = (uint16_t)(pr.lcm[v] - g.exp(0)[v]);
    }
    OrderedPoly sf;
    sf.nvars = n;
    sf.exps.reserve(f.exps.size());
    sf.coeffs = f.coeffs;
    std::vector<uint16_t> e(n);
    for (size_t i = 0; i < f.nterms(); ++i) {
      const uint16_t* fe = f.exp(i);
      for (int v = 0; v < n; ++v) e[v] = (uint16_t)(fe[v] + qf[v]);
      sf.exps.insert(sf.exps.end(), e.begin(), e.end());
    }
    return sub_multiple(F, ord, sf, g, qg.data(), 1);
  }

  void run(const std::vector<Polynomial>& gens) {
    std::vector<OrderedPoly> in;
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      in.push_back(to_ordered(g, ord));
    }
    std::sort(in.begin(), in.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
      return ord.compare(a.exp(0), b.exp(0)) < 0;
    });
    for (auto& p : in) {
      int sugar = 0;
      for (size_t i = 0; i < p.nterms(); ++i) sugar = std::max(sugar, mono_degree(p.exp(i), n));
      OrderedPoly r = head_reduce(std::move(p), &sugar);
      if (!r.empty()) add_element(std::move(r), sugar);
    }
    while (!heap.empty()) {
      HeapEntry h = heap.top();
      heap.pop();
      Pair& pr = pairs[h.pair_id];
      if (!pr.alive) continue;
      pr.alive = false;
      ++stats.pairs_reduced;
      int sugar = pr.sugar;
      OrderedPoly s = spoly(pr);
      if (s.empty()) continue;
      OrderedPoly r = head_reduce(std::move(s), &sugar);
      if (!r.empty()) add_element(std::move(r), sugar);
    }
  }

  std::vector<OrderedPoly> reduced_basis() {
    std::vector<int> order_idx(basis.size());
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
      return ord.compare(basis[a].poly.exp(0), basis[b].poly.exp(0)) < 0;
    });
    std::vector<int> kept;
    for (int k : order_idx) {
      const uint16_t* m = basis[k].poly.exp(0);
      bool dominated = false;
      for (int j : kept)
        if (monomial_divides(basis[j].poly.exp(0), m, n)) {
          dominated = true;
          break;
        }
      if (!dominated) kept.push_back(k);
    }
    std::vector<Elem> pruned;
    for (int k : kept) pruned.push_back(std::move(basis[k]));
    basis = std::move(pruned);
    std::vector<OrderedPoly> out;
    for (int k = 0; k < (int)basis.size(); ++k) {
      OrderedPoly r = full_reduce(basis[k].poly, k);
      make_monic(r);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
      return ord.compare(a.exp(0), b.exp(0)) < 0;
    });
    return out;
  }
};

}  // namespace

std::vector<Polynomial> GroebnerBasis::polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(elems.size());
  for (auto& e : elems) out.push_back(from_ordered(ring, e));
  return out;
}

std::vector<std::vector<uint16_t>> GroebnerBasis::initial_ideal() const {
  std::vector<std::vector<uint16_t>> out;
  int n = ring->nvars();
  for (auto& e : elems) out.emplace_back(e.exp(0), e.exp(0) + n);
  return out;
}

GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order) {
  Engine eng(I.ring, order, current_gb_options().reduction_budget);
  try {
    eng.run(I.gens);
  } catch (...) {
    session_gb_stats().merge(eng.stats);
    throw;
  }
  GroebnerBasis G;
  G.ring = I.ring;
  G.order = order;
  G.elems = eng.reduced_basis();
  session_gb_stats().merge(eng.stats);
  return G;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  if (f.ring() != G.ring) throw EfError(ErrKind::RingMismatch, "normal_form ring mismatch");
  Engine eng(G.ring, G.order, current_gb_options().reduction_budget);
  eng.load_reducers(G.elems);
  OrderedPoly r = eng.full_reduce(to_ordered(f, G.order));
  session_gb_stats().merge(eng.stats);
  return from_ordered(G.ring, r);
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
  if (I.ring != J.ring) throw EfError(ErrKind::RingMismatch, "ideal_contains ring mismatch");
  GroebnerBasis G = groebner_basis(I);
  Engine eng(G.ring, G.order, current_gb_options().reduction_budget);
  eng.load_reducers(G.elems);
  for (auto& g : J.gens)
    if (!eng.full_reduce(to_ordered(g, G.order)).empty()) {
      session_gb_stats().merge(eng.stats);
      return false;
    }
  session_gb_stats().merge(eng.stats);
  return true;
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
  return ideal_contains(I, J) && ideal_contains(J, I);
}

namespace {

RingPtr product_ring(const RingPtr& A, const RingPtr& B, std::vector<int>& bmap) {
  std::vector<std::string> vars = A->vars;
  bmap.clear();
  for (auto& v : B->vars) {
    std::string name = v;
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
    bmap.push_back((int)vars.size());
    vars.push_back(name);
  }
  return make_ring(A->name + "_x_" + B->name, std::move(vars), A->prime);
}

}  // namespace

Ideal eliminate(const Ideal& I, const std::vector<int>& vars) {
  if (vars.empty()) throw EfError(ErrKind::Internal, "eliminate: empty variable set");
  int n = I.ring->nvars();
  if ((int)vars.size() >= n) throw EfError(ErrKind::Internal, "eliminate: set not proper");
  MonomialOrder ord = MonomialOrder::elimination(n, vars);
  GroebnerBasis G = groebner_basis(I, ord);
  std::vector<char> elim(n, 0);
  for (int v : vars) elim[v] = 1;

  std::vector<std::string> keep_names;
  std::vector<int> vmap(n, -1);
  for (int v = 0; v < n; ++v)
    if (!elim[v]) {
      vmap[v] = (int)keep_names.size();
      keep_names.push_back(I.ring->vars[v]);
    }
  RingPtr small = make_ring(I.ring->name + "_elim", keep_names, I.ring->prime);

  std::vector<Polynomial> out;
  for (auto& e : G.elems) {
    bool free_of = true;
    const uint16_t* lead = e.exp(0);
    for (int v : vars)
      if (lead[v]) {
        free_of = false;
        break;
      }
    if (!free_of) continue;
    out.push_back(reindex(from_ordered(I.ring, e), small, vmap));
  }
  return Ideal::of(small, std::move(out));
}

Ideal saturate_var(const Ideal& I, int var) {
  if (!I.is_homogeneous())
    throw EfError(ErrKind::Internal, "saturate_var needs a homogeneous ideal");
  int n = I.ring->nvars();
  MonomialOrder ord = MonomialOrder::degrevlex_var_last(n, var);
  std::vector<Polynomial> gens = I.gens;
  while (true) {
    GroebnerBasis G = groebner_basis(Ideal::of(I.ring, gens), ord);
    bool divided = false;
    std::vector<Polynomial> next;
    for (auto& e : G.elems) {
      uint16_t minexp = 0xffff;
      for (size_t i = 0; i < e.nterms(); ++i) minexp = std::min(minexp, e.exp(i)[var]);
      if (minexp > 0 && minexp != 0xffff) divided = true;
      OrderedPoly q = e;
      if (minexp > 0 && minexp != 0xffff)
        for (size_t i = 0; i < q.nterms(); ++i) q.exps[i * n + var] -= minexp;
      next.push_back(from_ordered(I.ring, q));
    }
    gens = std::move(next);
    if (!divided) return Ideal::of(I.ring, gens);
  }
}

Ideal saturate_poly(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) throw EfError(ErrKind::Internal, "saturate by zero");
  int var;
  if (f.nterms() == 1 && f.is_monomial_term(0, &var) && I.is_homogeneous())
    return saturate_var(I, var);
  RingPtr R = I.ring;
  std::vector<std::string> vars = R->vars;
  vars.push_back("t@sat");
  RingPtr Rt = make_ring(R->name + "_sat", vars, R->prime);
  int n = R->nvars();
  std::vector<int> vmap(n);
  std::iota(vmap.begin(), vmap.end(), 0);
  std::vector<Polynomial> gens;
  for (auto& g : I.gens)
    if (!g.is_zero()) gens.push_back(reindex(g, Rt, vmap));
  Polynomial ft = reindex(f, Rt, vmap);
  gens.push_back(ft * Polynomial::variable(Rt, n) - Polynomial::constant(Rt, 1));
  Ideal elim = eliminate(Ideal::of(Rt, gens), {n});
  std::vector<Polynomial> out;
  std::vector<int> back(elim.ring->nvars());
  std::iota(back.begin(), back.end(), 0);
  for (auto& g : elim.gens) out.push_back(reindex(g, R, back));
  return Ideal::of(R, std::move(out));
}

Ideal saturate(const Ideal& I, const Ideal& J) {
  if (I.ring != J.ring) throw EfError(ErrKind::RingMismatch, "saturate ring mismatch");
  if (J.is_zero()) throw EfError(ErrKind::Internal, "saturate by zero ideal");
  bool first = true;
  Ideal acc = I;
  for (auto& f : J.gens) {
    if (f.is_zero()) continue;
    Ideal s = saturate_poly(I, f);
    acc = first ? s : ideal_intersect(acc, s);
    first = false;
  }
  return acc;
}

Ideal saturate_irrelevant(const Ideal& I) {
  std::vector<Polynomial> vars;
  for (int v = 0; v < I.ring->nvars(); ++v) vars.push_back(Polynomial::variable(I.ring, v));
  return saturate(I, Ideal::of(I.ring, vars));
}

Ideal ideal_intersect(const Ideal& I, const Ideal& J) {
  if (I.ring != J.ring) throw EfError(ErrKind::RingMismatch, "intersect ring mismatch");
  RingPtr R = I.ring;
  int n = R->nvars();
  std::vector<std::string> vars = R->vars;
  vars.push_back("t@int");
  RingPtr Rt = make_ring(R->name + "_int", vars, R->prime);
  std::vector<int> vmap(n);
  std::iota(vmap.begin(), vmap.end(), 0);
  Polynomial t = Polynomial::variable(Rt, n);
  Polynomial one_minus_t = Polynomial::constant(Rt, 1) - t;
  std::vector<Polynomial> gens;
  for (auto& g : I.gens)
    if (!g.is_zero()) gens.push_back(reindex(g, Rt, vmap) * t);
  for (auto& g : J.gens)
    if (!g.is_zero()) gens.push_back(reindex(g, Rt, vmap) * one_minus_t);
  Ideal elim = eliminate(Ideal::of(Rt, gens), {n});
  std::vector<Polynomial> out;
  std::vector<int> back(elim.ring->nvars());
  std::iota(back.begin(), back.end(), 0);
  for (auto& g : elim.gens) out.push_back(reindex(g, R, back));
  return Ideal::of(R, std::move(out));
}

Polynomial exact_divide(const Polynomial& g, const Polynomial& f) {
  if (f.is_zero()) throw EfError(ErrKind::DivisionFailure, "division by zero");
  RingPtr R = g.ring();
  if (g.is_zero()) return Polynomial::zero(R);
  if (R != f.ring()) throw EfError(ErrKind::RingMismatch, "exact_divide ring mismatch");
  int n = R->nvars();
  PrimeField F = R->field();
  MonomialOrder ord = MonomialOrder::degrevlex(n);
  uint64_t lc = f.coeff(0);  // canonical storage is degrevlex-sorted
  OrderedPoly w = to_ordered(g, ord);
  OrderedPoly dm = to_ordered(f.monic(), ord);
  PolyBuilder q(R);
  std::vector<uint16_t> m(n);
  while (!w.empty()) {
    const uint16_t* lw = w.exp(0);
    if (!monomial_divides(dm.exp(0), lw, n))
      throw EfError(ErrKind::DivisionFailure, "not divisible");
    for (int v = 0; v < n; ++v) m[v] = (uint16_t)(lw[v] - dm.exp(0)[v]);
    uint64_t c = w.coeffs[0];
    q.add_term(m.data(), c);
    w = sub_multiple(F, ord, w, dm, m.data(), c);
  }
  return q.build().scaled(F.inv(lc));
}

Ideal ideal_quotient(const Ideal& I, const Polynomial& f) {
  Ideal inter = ideal_intersect(I, Ideal::of(I.ring, {f}));
  std::vector<Polynomial> out;
  for (auto& g : inter.gens) out.push_back(exact_divide(g, f));
  return Ideal::of(I.ring, std::move(out));
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  if (I.ring != J.ring) throw EfError(ErrKind::RingMismatch, "sum ring mismatch");
  std::vector<Polynomial> gens = I.gens;
  gens.insert(gens.end(), J.gens.begin(), J.gens.end());
  return Ideal::of(I.ring, std::move(gens));
}

Ideal preimage_under_map(const RingMap& m, const Ideal& J) {
  if (J.ring != m.target) throw EfError(ErrKind::RingMismatch, "preimage: J not in target ring");
  std::vector<int> tmap;
  RingPtr W = product_ring(m.source, m.target, tmap);
  int ns = m.source->nvars();
  std::vector<Polynomial> gens;
  for (auto& g : J.gens)
    if (!g.is_zero()) gens.push_back(reindex(g, W, tmap));
  std::vector<int> smap(ns);
  std::iota(smap.begin(), smap.end(), 0);
  for (int v = 0; v < ns; ++v)
    gens.push_back(Polynomial::variable(W, v) - reindex(m.images[v], W, tmap));
  Ideal elim = eliminate(Ideal::of(W, gens), tmap);
  std::vector<Polynomial> out;
  std::vector<int> back(ns);
  std::iota(back.begin(), back.end(), 0);
  for (auto& g : elim.gens) out.push_back(reindex(g, m.source, back));
  return Ideal::of(m.source, std::move(out));
}

// ---- QuotientAlgebra ----

QuotientAlgebra::QuotientAlgebra(const GroebnerBasis& G)
    : G_(G), F_(G.ring->field()), n_(G.ring->nvars()) {}

std::string QuotientAlgebra::key(const uint16_t* m, int n) {
  return std::string(reinterpret_cast<const char*>(m), sizeof(uint16_t) * n);
}

void QuotientAlgebra::build_degree(int d) {
  if ((int)deg_.size() <= d) deg_.resize(d + 1);
  if (deg_[d].built) return;
  auto& D = deg_[d];
  D.built = true;
  auto leads = G_.initial_ideal();
  std::vector<uint16_t> e(n_, 0);
  std::vector<std::vector<uint16_t>> all;
  std::function<void(int, int)> rec = [&](int v, int rem) {
    if (v == n_ - 1) {
      e[v] = (uint16_t)rem;
      bool standard = true;
      for (auto& l : leads)
        if (monomial_divides(l.data(), e.data(), n_)) {
          standard = false;
          break;
        }
      if (standard) all.push_back(e);
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
  std::sort(all.begin(), all.end(),
            [&](const std::vector<uint16_t>& a, const std::vector<uint16_t>& b) {
              return G_.order.compare(a.data(), b.data()) > 0;
            });
  D.mons = std::move(all);
  for (int i = 0; i < (int)D.mons.size(); ++i) D.index[key(D.mons[i].data(), n_)] = i;
}

int QuotientAlgebra::n_std(int d) {
  build_degree(d);
  return (int)deg_[d].mons.size();
}

const std::vector<uint16_t>& QuotientAlgebra::std_monomial(int d, int idx) {
  build_degree(d);
  return deg_[d].mons[idx];
}

int QuotientAlgebra::std_index(int d, const uint16_t* m) {
  build_degree(d);
  auto it = deg_[d].index.find(key(m, n_));
  return it == deg_[d].index.end() ? -1 : it->second;
}

const QuotientAlgebra::Row& QuotientAlgebra::nf_monomial(const uint16_t* m, int deg) {
  std::string k = key(m, n_);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  build_degree(deg);
  Row row;
  int idx = std_index(deg, m);
  if (idx >= 0) {
    row.push_back({idx, 1});
  } else {
    const OrderedPoly* red = nullptr;
    for (auto& e : G_.elems)
      if (monomial_divides(e.exp(0), m, n_)) {
        red = &e;
        break;
      }
    if (!red) throw EfError(ErrKind::Internal, "non-standard monomial without reducer");
    std::vector<uint16_t> q(n_), t(n_);
    for (int v = 0; v < n_; ++v) q[v] = (uint16_t)(m[v] - red->exp(0)[v]);
    std::unordered_map<int32_t, uint64_t> acc;
    for (size_t i = 1; i < red->nterms(); ++i) {
      for (int v = 0; v < n_; ++v) t[v] = (uint16_t)(red->exp(i)[v] + q[v]);
      const Row& sub = nf_monomial(t.data(), deg);
      uint64_t c = F_.neg(red->coeffs[i]);
      for (auto& [j, cv] : sub) {
        uint64_t& slot = acc[j];
        slot = F_.add(slot, F_.mul(c, cv));
      }
    }
    for (auto& [j, cv] : acc)
      if (cv) row.push_back({j, cv});
    std::sort(row.begin(), row.end());
  }
  return memo_.emplace(std::move(k), std::move(row)).first->second;
}

QuotientAlgebra::Row QuotientAlgebra::mul_var(const Row& r, int d, int v) {
  std::unordered_map<int32_t, uint64_t> acc;
  std::vector<uint16_t> t(n_);
  for (auto& [idx, c] : r) {
    const auto& m = std_monomial(d, idx);
    std::copy(m.begin(), m.end(), t.begin());
    t[v] += 1;
    const Row& sub = nf_monomial(t.data(), d + 1);
    for (auto& [j, cv] : sub) {
      uint64_t& slot = acc[j];
      slot = F_.add(slot, F_.mul(c, cv));
    }
  }
  Row out;
  for (auto& [j, cv] : acc)
    if (cv) out.push_back({j, cv});
  std::sort(out.begin(), out.end());
  return out;
}

QuotientAlgebra::Row QuotientAlgebra::nf_poly(const Polynomial& f) {
  if (f.is_zero()) return {};
  if (!f.is_homogeneous()) throw EfError(ErrKind::Internal, "nf_poly wants homogeneous input");
  int d = f.total_degree();
  std::unordered_map<int32_t, uint64_t> acc;
  for (size_t i = 0; i < f.nterms(); ++i) {
    const Row& sub = nf_monomial(f.exp(i), d);
    for (auto& [j, cv] : sub) {
      uint64_t& slot = acc[j];
      slot = F_.add(slot, F_.mul(f.coeff(i), cv));
    }
  }
  Row out;
  for (auto& [j, cv] : acc)
    if (cv) out.push_back({j, cv});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ef
