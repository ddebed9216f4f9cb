#include "polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace ef {

int Ring::var_index(const std::string& v) const {
  for (int i = 0; i < (int)vars.size(); ++i)
    if (vars[i] == v) return i;
  return -1;
}

RingPtr make_ring(std::string name, std::vector<std::string> vars, uint64_t prime) {
  if (vars.empty()) throw EfError(ErrKind::Internal, "ring needs at least one variable");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw EfError(ErrKind::Internal, "duplicate variable " + vars[i]);
  auto r = std::make_shared<Ring>();
  r->name = std::move(name);
  r->vars = std::move(vars);
  r->prime = prime;
  return r;
}

MonomialOrder MonomialOrder::degrevlex(int n) {
  MonomialOrder o;
  o.kind = DegRevLex;
  o.nvars = n;
  return o;
}

MonomialOrder MonomialOrder::lex(int n) {
  MonomialOrder o;
  o.kind = Lex;
  o.nvars = n;
  return o;
}

MonomialOrder MonomialOrder::elimination(int n, const std::vector<int>& eliminated) {
  MonomialOrder o;
  o.kind = Block;
  o.nvars = n;
  o.block1 = (int)eliminated.size();
  std::vector<char> in(n, 0);
  for (int v : eliminated) in[v] = 1;
  o.perm = eliminated;
  for (int i = 0; i < n; ++i)
    if (!in[i]) o.perm.push_back(i);
  return o;
}

MonomialOrder MonomialOrder::degrevlex_var_last(int n, int var) {
  MonomialOrder o;
  o.kind = DegRevLex;
  o.nvars = n;
  for (int i = 0; i < n; ++i)
    if (i != var) o.perm.push_back(i);
  o.perm.push_back(var);
  return o;
}

namespace {
inline int drl_compare(const uint16_t* a, const uint16_t* b, const int* pos, int lo, int hi) {
  long da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a[pos[i]];
    db += b[pos[i]];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    uint16_t ea = a[pos[i]], eb = b[pos[i]];
    if (ea != eb) return ea > eb ? -1 : 1;  // smaller exponent in the last differing var wins
  }
  return 0;
}
}  // namespace

int MonomialOrder::compare(const uint16_t* a, const uint16_t* b) const {
  static thread_local std::vector<int> identity;
  const int* pos;
  if (perm.empty()) {
    if ((int)identity.size() < nvars) {
      identity.resize(nvars);
      std::iota(identity.begin(), identity.end(), 0);
    }
    pos = identity.data();
  } else {
    pos = perm.data();
  }
  switch (kind) {
    case Lex:
      for (int i = 0; i < nvars; ++i) {
        uint16_t ea = a[pos[i]], eb = b[pos[i]];
        if (ea != eb) return ea < eb ? -1 : 1;
      }
      return 0;
    case DegRevLex:
      return drl_compare(a, b, pos, 0, nvars);
    case Block: {
      int c = drl_compare(a, b, pos, 0, block1);
      if (c) return c;
      return drl_compare(a, b, pos, block1, nvars);
    }
  }
  return 0;
}

Polynomial Polynomial::constant(RingPtr ring, uint64_t c) {
  Polynomial f(ring);
  c %= ring->prime;
  if (c != 0) {
    f.exps_.assign(ring->nvars(), 0);
    f.coeffs_.push_back(c);
  }
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, int var) {
  Polynomial f(ring);
  f.exps_.assign(ring->nvars(), 0);
  f.exps_[var] = 1;
  f.coeffs_.push_back(1);
  return f;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<uint16_t> exps,
                                  std::vector<uint64_t> coeffs) {
  PolyBuilder b(ring);
  int n = ring->nvars();
  for (size_t i = 0; i < coeffs.size(); ++i) b.add_term(exps.data() + i * n, coeffs[i]);
  return b.build();
}

int Polynomial::total_degree() const {
  int d = -1;
  for (size_t i = 0; i < nterms(); ++i) d = std::max(d, term_degree(i));
  return d;
}

int Polynomial::term_degree(size_t i) const {
  const uint16_t* e = exp(i);
  int d = 0;
  for (int v = 0; v < nvars(); ++v) d += e[v];
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (is_zero()) return true;
  int d = term_degree(0);
  for (size_t i = 1; i < nterms(); ++i)
    if (term_degree(i) != d) return false;
  return true;
}

bool Polynomial::is_monomial_term(size_t i, int* var) const {
  const uint16_t* e = exp(i);
  int found = -1;
  for (int v = 0; v < nvars(); ++v) {
    if (e[v] == 0) continue;
    if (found >= 0 || e[v] != 1) return false;
    found = v;
  }
  if (found < 0) return false;
  if (var) *var = found;
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (ring_ != o.ring_) throw EfError(ErrKind::RingMismatch, "polynomial ring mismatch");
  PrimeField F = ring_->field();
  MonomialOrder ord = MonomialOrder::degrevlex(nvars());
  Polynomial r(ring_);
  size_t i = 0, j = 0;
  int n = nvars();
  while (i < nterms() || j < o.nterms()) {
    int c;
    if (i >= nterms()) c = -1;
    else if (j >= o.nterms()) c = 1;
    else c = ord.compare(exp(i), o.exp(j));
    if (c > 0) {
      r.exps_.insert(r.exps_.end(), exp(i), exp(i) + n);
      r.coeffs_.push_back(coeffs_[i]);
      ++i;
    } else if (c < 0) {
      r.exps_.insert(r.exps_.end(), o.exp(j), o.exp(j) + n);
      r.coeffs_.push_back(o.coeffs_[j]);
      ++j;
    } else {
      uint64_t s = F.add(coeffs_[i], o.coeffs_[j]);
      if (s) {
        r.exps_.insert(r.exps_.end(), exp(i), exp(i) + n);
        r.coeffs_.push_back(s);
      }
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  PrimeField F = ring_->field();
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = F.neg(c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (ring_ != o.ring_) throw EfError(ErrKind::RingMismatch, "polynomial ring mismatch");
  PolyBuilder b(ring_);
  for (size_t j = 0; j < o.nterms(); ++j) b.add_shifted(*this, o.exp(j), o.coeffs_[j]);
  return b.build();
}

bool Polynomial::operator==(const Polynomial& o) const {
  return ring_ == o.ring_ && exps_ == o.exps_ && coeffs_ == o.coeffs_;
}

Polynomial Polynomial::scaled(uint64_t c) const {
  PrimeField F = ring_->field();
  c %= ring_->prime;
  if (c == 0) return zero(ring_);
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x = F.mul(x, c);
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || coeffs_[0] == 1) return *this;
  return scaled(ring_->field().inv(coeffs_[0]));
}

uint64_t Polynomial::evaluate(const std::vector<uint64_t>& point) const {
  PrimeField F = ring_->field();
  uint64_t acc = 0;
  for (size_t i = 0; i < nterms(); ++i) {
    uint64_t t = coeffs_[i];
    const uint16_t* e = exp(i);
    for (int v = 0; v < nvars(); ++v)
      if (e[v]) t = F.mul(t, F.pow(point[v], e[v]));
    acc = F.add(acc, t);
  }
  return acc;
}

Polynomial Polynomial::derivative(int var) const {
  PrimeField F = ring_->field();
  Polynomial r(ring_);
  int n = nvars();
  for (size_t i = 0; i < nterms(); ++i) {
    const uint16_t* e = exp(i);
    if (e[var] == 0) continue;
    uint64_t c = F.mul(coeffs_[i], F.reduce_int(e[var]));
    if (!c) continue;
    size_t base = r.exps_.size();
    r.exps_.insert(r.exps_.end(), e, e + n);
    r.exps_[base + var] -= 1;
    r.coeffs_.push_back(c);
  }
  return r;  // order preserved: lowering one exponent keeps descending degrevlex? not always
}

Polynomial Polynomial::substitute(int var, const Polynomial& value) const {
  // group by exponent of var, multiply by value^e
  PolyBuilder b(ring_);
  int n = nvars();
  std::vector<Polynomial> pows = {constant(ring_, 1)};
  auto pow_of = [&](int e) -> const Polynomial& {
    while ((int)pows.size() <= e) pows.push_back(pows.back() * value);
    return pows[e];
  };
  std::vector<uint16_t> m(n);
  for (size_t i = 0; i < nterms(); ++i) {
    const uint16_t* e = exp(i);
    std::copy(e, e + n, m.begin());
    int ev = m[var];
    m[var] = 0;
    b.add_shifted(pow_of(ev), m.data(), coeffs_[i]);
  }
  return b.build();
}

Polynomial Polynomial::set_var(int var, uint64_t value) const {
  PrimeField F = ring_->field();
  PolyBuilder b(ring_);
  int n = nvars();
  std::vector<uint16_t> m(n);
  for (size_t i = 0; i < nterms(); ++i) {
    const uint16_t* e = exp(i);
    std::copy(e, e + n, m.begin());
    uint64_t c = F.mul(coeffs_[i], F.pow(value, m[var]));
    m[var] = 0;
    if (c) b.add_term(m.data(), c);
  }
  return b.build();
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  uint64_t p = ring_->prime;
  for (size_t i = 0; i < nterms(); ++i) {
    uint64_t c = coeffs_[i];
    bool negative = c > p / 2;
    uint64_t mag = negative ? p - c : c;
    if (i == 0) {
      if (negative) os << "-";
    } else {
      os << (negative ? "-" : "+");
    }
    const uint16_t* e = exp(i);
    bool anyvar = false;
    for (int v = 0; v < nvars(); ++v) anyvar = anyvar || e[v] > 0;
    if (mag != 1 || !anyvar) os << mag << (anyvar ? "*" : "");
    bool first = true;
    for (int v = 0; v < nvars(); ++v) {
      if (!e[v]) continue;
      if (!first) os << "*";
      first = false;
      os << ring_->vars[v];
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

// ---- PolyBuilder ----

void PolyBuilder::add_term(const uint16_t* e, uint64_t c) {
  if (c == 0) return;
  exps_.insert(exps_.end(), e, e + n_);
  coeffs_.push_back(c);
}

void PolyBuilder::add(const Polynomial& f, uint64_t scale) {
  PrimeField F = ring_->field();
  scale %= ring_->prime;
  if (scale == 0) return;
  for (size_t i = 0; i < f.nterms(); ++i)
    add_term(f.exp(i), scale == 1 ? f.coeff(i) : F.mul(f.coeff(i), scale));
}

void PolyBuilder::add_shifted(const Polynomial& f, const uint16_t* m, uint64_t c) {
  PrimeField F = ring_->field();
  c %= ring_->prime;
  if (c == 0) return;
  std::vector<uint16_t> e(n_);
  for (size_t i = 0; i < f.nterms(); ++i) {
    const uint16_t* fe = f.exp(i);
    for (int v = 0; v < n_; ++v) {
      uint32_t s = (uint32_t)fe[v] + m[v];
      if (s > 0xffff) throw EfError(ErrKind::Internal, "exponent overflow");
      e[v] = (uint16_t)s;
    }
    add_term(e.data(), c == 1 ? f.coeff(i) : F.mul(f.coeff(i), c));
  }
}

Polynomial PolyBuilder::build() {
  size_t nt = coeffs_.size();
  MonomialOrder ord = MonomialOrder::degrevlex(n_);
  std::vector<uint32_t> idx(nt);
  std::iota(idx.begin(), idx.end(), 0);
  const uint16_t* E = exps_.data();
  int n = n_;
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return ord.compare(E + (size_t)a * n, E + (size_t)b * n) > 0;
  });
  PrimeField F = ring_->field();
  Polynomial r(ring_);
  for (size_t k = 0; k < nt;) {
    const uint16_t* e = E + (size_t)idx[k] * n;
    uint64_t acc = 0;
    size_t k2 = k;
    while (k2 < nt && ord.compare(E + (size_t)idx[k2] * n, e) == 0) {
      acc = F.add(acc, coeffs_[idx[k2]]);
      ++k2;
    }
    if (acc) {
      r.exps_.insert(r.exps_.end(), e, e + n);
      r.coeffs_.push_back(acc);
    }
    k = k2;
  }
  exps_.clear();
  coeffs_.clear();
  return r;
}

// ---- maps and calculus ----

Polynomial apply_ring_map(const RingMap& m, const Polynomial& f) {
  if (f.ring() != m.source) throw EfError(ErrKind::RingMismatch, "apply_ring_map: wrong ring");
  PrimeField F = m.target->field();
  int n = f.nvars();
  // cache powers of each image
  std::vector<std::vector<Polynomial>> pows(n);
  auto pow_of = [&](int v, int e) -> const Polynomial& {
    auto& pv = pows[v];
    if (pv.empty()) pv.push_back(Polynomial::constant(m.target, 1));
    while ((int)pv.size() <= e) pv.push_back(pv.back() * m.images[v]);
    return pv[e];
  };
  Polynomial acc = Polynomial::zero(m.target);
  for (size_t i = 0; i < f.nterms(); ++i) {
    Polynomial t = Polynomial::constant(m.target, f.coeff(i));
    const uint16_t* e = f.exp(i);
    for (int v = 0; v < n; ++v)
      if (e[v]) t = t * pow_of(v, e[v]);
    acc = acc + t;
  }
  (void)F;
  return acc;
}

std::vector<Polynomial> apply_ring_map(const RingMap& m, const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> out;
  out.reserve(gens.size());
  for (auto& g : gens) out.push_back(apply_ring_map(m, g));
  return out;
}

std::vector<Polynomial> derivative_ideal(const std::vector<Polynomial>& gens, int k) {
  if (gens.empty()) return {};
  int n = gens[0].nvars();
  std::vector<Polynomial> out = gens;
  std::vector<Polynomial> layer = gens;
  for (int order = 1; order <= k; ++order) {
    std::vector<Polynomial> next;
    for (auto& g : layer)
      for (int v = 0; v < n; ++v) {
        Polynomial d = g.derivative(v);
        if (!d.is_zero()) next.push_back(d);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Polynomial homogenize(const Polynomial& f, const RingPtr& extended, int hvar) {
  if (f.is_zero()) throw EfError(ErrKind::ZeroPolynomial, "homogenize zero");
  int n = f.nvars();
  int d = f.total_degree();
  std::vector<uint16_t> exps;
  std::vector<uint64_t> coeffs;
  std::vector<uint16_t> e(extended->nvars(), 0);
  for (size_t i = 0; i < f.nterms(); ++i) {
    const uint16_t* fe = f.exp(i);
    int vd = 0, j = 0;
    for (int v = 0; v < n; ++v) {
      if (j == hvar) ++j;
      e[j++] = fe[v];
      vd += fe[v];
    }
    e[hvar] = (uint16_t)(d - vd);
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(f.coeff(i));
  }
  return Polynomial::from_terms(extended, std::move(exps), std::move(coeffs));
}

Polynomial min_degree_part(const Polynomial& f) {
  if (f.is_zero()) throw EfError(ErrKind::ZeroPolynomial, "min_degree_part of zero");
  int md = f.term_degree(0);
  for (size_t i = 1; i < f.nterms(); ++i) md = std::min(md, f.term_degree(i));
  std::vector<uint16_t> exps;
  std::vector<uint64_t> coeffs;
  for (size_t i = 0; i < f.nterms(); ++i) {
    if (f.term_degree(i) != md) continue;
    exps.insert(exps.end(), f.exp(i), f.exp(i) + f.nvars());
    coeffs.push_back(f.coeff(i));
  }
  return Polynomial::from_terms(f.ring(), std::move(exps), std::move(coeffs));
}

// ---- points and charts ----

bool ProjPoint::same_point(const ProjPoint& o) const {
  if (ring != o.ring) return false;
  PrimeField F = ring->field();
  int i0 = first_nonzero(), j0 = o.first_nonzero();
  if (i0 != j0) return false;
  uint64_t s = F.mul(o.coords[i0], F.inv(coords[i0]));
  for (size_t i = 0; i < coords.size(); ++i)
    if (F.mul(coords[i], s) != o.coords[i]) return false;
  return true;
}

int ProjPoint::first_nonzero() const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i]) return (int)i;
  throw EfError(ErrKind::Internal, "zero projective point");
}

ChartResult chart_at_point(const std::vector<Polynomial>& gens, const ProjPoint& P) {
  if (gens.empty()) throw EfError(ErrKind::Internal, "chart of empty ideal");
  RingPtr R = gens[0].ring();
  if (P.ring != R) throw EfError(ErrKind::RingMismatch, "chart point in wrong ring");
  PrimeField F = R->field();
  for (auto& g : gens)
    if (g.evaluate(P.coords) != 0)
      throw EfError(ErrKind::PointNotOnVariety, "chart point not on variety");

  int c = P.first_nonzero();
  uint64_t inv = F.inv(P.coords[c]);
  std::vector<uint64_t> Pn(P.coords.size());
  for (size_t i = 0; i < Pn.size(); ++i) Pn[i] = F.mul(P.coords[i], inv);

  // x_i -> x_i + P_i * x_c for i != c, then x_c -> 1
  int n = R->nvars();
  std::vector<std::string> cv;
  for (int i = 0; i < n; ++i)
    if (i != c) cv.push_back(R->vars[i]);
  RingPtr chart = make_ring(R->name + "_at", cv, R->prime);

  std::vector<Polynomial> out;
  for (auto& g : gens) {
    Polynomial h = g;
    // substitute x_c := 1 and x_i := x_i + P_i simultaneously via per-variable passes:
    // first shift the non-chart variables, then evaluate the chart variable at 1.
    for (int v = 0; v < n; ++v) {
      if (v == c || Pn[v] == 0) continue;
      Polynomial shift = Polynomial::variable(R, v) +
                         Polynomial::constant(R, Pn[v]) * Polynomial::variable(R, c);
      h = h.substitute(v, shift);
    }
    h = h.set_var(c, 1);
    // drop the chart variable
    std::vector<int> vmap(n, -1);
    int j = 0;
    for (int v = 0; v < n; ++v)
      if (v != c) vmap[v] = j++;
    Polynomial hc = reindex(h, chart, vmap);
    if (!hc.is_zero()) out.push_back(hc);
  }
  for (auto& g : out) {
    std::vector<uint64_t> origin(chart->nvars(), 0);
    if (g.evaluate(origin) != 0) throw EfError(ErrKind::Internal, "chart ideal misses origin");
  }
  return {chart, std::move(out), c, std::move(Pn)};
}

Polynomial reindex(const Polynomial& f, const RingPtr& dest, const std::vector<int>& var_map) {
  std::vector<uint16_t> exps;
  std::vector<uint64_t> coeffs;
  std::vector<uint16_t> e(dest->nvars(), 0);
  for (size_t i = 0; i < f.nterms(); ++i) {
    std::fill(e.begin(), e.end(), 0);
    const uint16_t* fe = f.exp(i);
    for (int v = 0; v < f.nvars(); ++v) {
      if (!fe[v]) continue;
      if (var_map[v] < 0)
        throw EfError(ErrKind::RingMismatch, "reindex drops a used variable");
      e[var_map[v]] = fe[v];
    }
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(f.coeff(i));
  }
  return Polynomial::from_terms(dest, std::move(exps), std::move(coeffs));
}

// ---- parser ----

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  char get() {
    skip();
    return i < s.size() ? s[i++] : '\0';
  }
};

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, const std::string& text) : ring_(ring), lex_(text) {}

  Polynomial parse() {
    Polynomial r = expr();
    if (lex_.peek() != '\0')
      throw EfError(ErrKind::Parse, "unexpected character '" + std::string(1, lex_.peek()) +
                                        "' in polynomial");
    return r;
  }

 private:
  RingPtr ring_;
  Lexer lex_;

  Polynomial expr() {
    Polynomial acc = Polynomial::zero(ring_);
    bool neg = false;
    char c = lex_.peek();
    if (c == '+' || c == '-') {
      lex_.get();
      neg = c == '-';
    }
    acc = acc + (neg ? -term() : term());
    while (true) {
      c = lex_.peek();
      if (c != '+' && c != '-') break;
      lex_.get();
      Polynomial t = term();
      acc = c == '-' ? acc - t : acc + t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (lex_.peek() == '*') {
      lex_.get();
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (lex_.peek() == '^') {
      lex_.get();
      long long e = integer();
      if (e < 0) throw EfError(ErrKind::Parse, "negative exponent");
      Polynomial r = Polynomial::constant(ring_, 1);
      for (long long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  Polynomial atom() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.get();
      Polynomial r = expr();
      if (lex_.get() != ')') throw EfError(ErrKind::Parse, "expected ')'");
      return r;
    }
    if (c == '-') {
      lex_.get();
      return -atom();
    }
    if (std::isdigit((unsigned char)c)) return Polynomial::constant(ring_, (uint64_t)integer());
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string name;
      lex_.skip();
      while (lex_.i < lex_.s.size() &&
             (std::isalnum((unsigned char)lex_.s[lex_.i]) || lex_.s[lex_.i] == '_'))
        name += lex_.s[lex_.i++];
      int v = ring_->var_index(name);
      if (v < 0)
        throw EfError(ErrKind::UnknownName, "unknown variable '" + name + "' in ring " + ring_->name);
      return Polynomial::variable(ring_, v);
    }
    throw EfError(ErrKind::Parse, "unexpected character in polynomial");
  }

  long long integer() {
    lex_.skip();
    bool neg = false;
    if (lex_.peek() == '-') {
      lex_.get();
      neg = true;
    }
    if (!std::isdigit((unsigned char)lex_.peek())) throw EfError(ErrKind::Parse, "expected integer");
    long long v = 0;
    while (lex_.i < lex_.s.size() && std::isdigit((unsigned char)lex_.s[lex_.i])) {
      v = v * 10 + (lex_.s[lex_.i] - '0');
      ++lex_.i;
    }
    return neg ? -v : v;
  }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
  return PolyParser(ring, text).parse();
}

}  // namespace ef
