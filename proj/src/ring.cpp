#include "ringlab/ring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <random>
#include <unordered_map>

#include "ringlab/util.hpp"

namespace ringlab {

namespace {
// Full operation tables above this order cost more than recomputation saves.
constexpr int64_t kTableThreshold = 2048;

std::atomic<int> g_ring_counter{0};
}  // namespace

const Limits& default_limits() {
  static const Limits lim{};
  return lim;
}

FiniteRing::FiniteRing(int64_t order, Index zero, Index one, std::string provenance)
    : order_(order), zero_(zero), one_(one), provenance_(std::move(provenance)),
      id_(g_ring_counter.fetch_add(1)) {
  if (order < 2) throw RingError("ring carrier must have at least two elements");
  if (zero == one) throw RingError("rings here are unital and nonzero: 0 != 1");
}

void FiniteRing::init_tables() {
  if (tables_built_ || order_ > kTableThreshold) return;
  const auto n = static_cast<size_t>(order_);
  add_tab_.resize(n * n);
  mul_tab_.resize(n * n);
  neg_tab_.resize(n);
  for (Index a = 0; a < order_; ++a) {
    neg_tab_[a] = neg_impl(a);
    for (Index b = 0; b < order_; ++b) {
      add_tab_[static_cast<size_t>(a) * n + b] = static_cast<uint16_t>(add_impl(a, b));
      mul_tab_[static_cast<size_t>(a) * n + b] = static_cast<uint16_t>(mul_impl(a, b));
    }
  }
  tables_built_ = true;
}

Index FiniteRing::pow(Index x, uint64_t e) const {
  Index acc = one_;
  Index base = x;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

Subset::Subset(const FiniteRing& r, SubsetKind k)
    : kind(k), ring_id(r.id()), bits_(static_cast<size_t>(r.order()), false) {}

Subset Subset::of(const FiniteRing& r, SubsetKind kind, const std::vector<Index>& elems) {
  Subset s(r, kind);
  for (Index i : elems) {
    if (i < 0 || i >= r.order()) throw RingError("subset element out of range");
    s.insert(i);
  }
  return s;
}

int64_t Subset::count() const {
  int64_t c = 0;
  for (bool b : bits_) c += b;
  return c;
}

std::vector<Index> Subset::indices() const {
  std::vector<Index> out;
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<Index>(i));
  }
  return out;
}

namespace {

struct TripleSource {
  // Deterministic stream of (a,b,c) triples: exhaustive below the cap,
  // seeded uniform sampling above.
  const int64_t n;
  const bool exhaustive;
  int64_t budget;
  std::mt19937_64 rng;
  std::uniform_int_distribution<int64_t> dist;
  int64_t a = 0, b = 0, c = 0;

  TripleSource(int64_t order, bool exh, int64_t sample_budget, uint64_t seed)
      : n(order), exhaustive(exh),
        budget(exh ? order * order * order : sample_budget),
        rng(seed), dist(0, order - 1) {}

  bool next(Index& x, Index& y, Index& z) {
    if (budget-- <= 0) return false;
    if (exhaustive) {
      x = static_cast<Index>(a);
      y = static_cast<Index>(b);
      z = static_cast<Index>(c);
      if (++c == n) { c = 0; if (++b == n) { b = 0; ++a; } }
    } else {
      x = static_cast<Index>(dist(rng));
      y = static_cast<Index>(dist(rng));
      z = static_cast<Index>(dist(rng));
    }
    return true;
  }
};

}  // namespace

AxiomReport validate_ring_axioms(const FiniteRing& r, const Limits& lim) {
  AxiomReport rep;
  const int64_t n = r.order();
  rep.exhaustive = n <= lim.axiom_cap;
  const int64_t pair_budget = 200000;
  const int64_t triple_budget = 200000;

  auto fail = [&](const std::string& axiom, std::initializer_list<Index> at) {
    rep.ok = false;
    rep.first_violation = AxiomIssue{axiom, std::vector<Index>(at)};
  };

  if (r.zero() == r.one()) {
    fail("zero != one", {});
    return rep;
  }

  // Unary sweeps are always exhaustive.
  for (Index a = 0; a < n; ++a) {
    ++rep.cases_checked;
    if (r.add(a, r.zero()) != a) { fail("zero is additive identity", {a}); return rep; }
    if (r.add(a, r.neg(a)) != r.zero()) { fail("neg is additive inverse", {a}); return rep; }
    if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a) {
      fail("one is multiplicative identity", {a});
      return rep;
    }
  }

  // Commutativity of addition.
  {
    std::mt19937_64 rng(lim.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int64_t> dist(0, n - 1);
    int64_t cases = rep.exhaustive ? n * n : std::min(n * n, pair_budget);
    int64_t a = 0, b = 0;
    for (int64_t i = 0; i < cases; ++i) {
      Index x, y;
      if (rep.exhaustive) {
        x = static_cast<Index>(a);
        y = static_cast<Index>(b);
        if (++b == n) { b = 0; ++a; }
      } else {
        x = static_cast<Index>(dist(rng));
        y = static_cast<Index>(dist(rng));
      }
      ++rep.cases_checked;
      if (r.add(x, y) != r.add(y, x)) { fail("addition commutes", {x, y}); return rep; }
    }
  }

  struct TripleAxiom {
    const char* name;
    bool (*check)(const FiniteRing&, Index, Index, Index);
  };
  const TripleAxiom axioms[] = {
      {"addition associates",
       [](const FiniteRing& q, Index a, Index b, Index c) {
         return q.add(q.add(a, b), c) == q.add(a, q.add(b, c));
       }},
      {"multiplication associates",
       [](const FiniteRing& q, Index a, Index b, Index c) {
         return q.mul(q.mul(a, b), c) == q.mul(a, q.mul(b, c));
       }},
      {"left distributivity",
       [](const FiniteRing& q, Index a, Index b, Index c) {
         return q.mul(a, q.add(b, c)) == q.add(q.mul(a, b), q.mul(a, c));
       }},
      {"right distributivity",
       [](const FiniteRing& q, Index a, Index b, Index c) {
         return q.mul(q.add(a, b), c) == q.add(q.mul(a, c), q.mul(b, c));
       }},
  };
  uint64_t salt = 1;
  for (const auto& ax : axioms) {
    TripleSource src(n, rep.exhaustive, triple_budget, lim.seed + salt++);
    Index a, b, c;
    while (src.next(a, b, c)) {
      ++rep.cases_checked;
      if (!ax.check(r, a, b, c)) { fail(ax.name, {a, b, c}); return rep; }
    }
  }
  return rep;
}

CharData characteristic(const FiniteRing& r) {
  CharData cd;
  Index acc = r.one();
  int64_t t = 1;
  while (acc != r.zero()) {
    acc = r.add(acc, r.one());
    ++t;
    if (t > r.order() + 1) throw RingError("additive order of 1 exceeds carrier size");
  }
  cd.characteristic = t;
  cd.pi = distinct_prime_factors(t);
  return cd;
}

Index ring_int(const FiniteRing& r, int64_t t) {
  const int64_t ch = characteristic(r).characteristic;
  t %= ch;
  if (t < 0) t += ch;
  Index acc = r.zero();
  for (int64_t i = 0; i < t; ++i) acc = r.add(acc, r.one());
  return acc;
}

namespace {

// Smallest n >= 1 and k >= 1 with x^{n+k} = x^n, by walking the power
// sequence x, x^2, ... until it revisits a value.
std::pair<int, int> power_cycle(const FiniteRing& r, Index x) {
  std::array<Index, 96> buf;
  Index p = x;
  int step = 1;
  while (step <= 96) {
    for (int s = 1; s < step; ++s) {
      if (buf[s - 1] == p) return {s, step - s};
    }
    buf[step - 1] = p;
    p = r.mul(p, x);
    ++step;
  }
  std::unordered_map<Index, int> seen;
  for (int s = 1; s < step; ++s) seen.emplace(buf[s - 1], s);
  while (true) {
    auto it = seen.find(p);
    if (it != seen.end()) return {it->second, step - it->second};
    seen.emplace(p, step);
    p = r.mul(p, x);
    ++step;
  }
}

std::vector<bool> unit_bitmap(const FiniteRing& r) {
  const int64_t n = r.order();
  std::vector<bool> unit(static_cast<size_t>(n), false);
  std::vector<Index> stamp(static_cast<size_t>(n), -1);
  for (Index u = 0; u < n; ++u) {
    bool injective = true;
    for (Index y = 0; y < n; ++y) {
      Index p = r.mul(u, y);
      if (stamp[p] == u) {
        injective = false;
        break;
      }
      stamp[p] = u;
    }
    unit[u] = injective;
  }
  return unit;
}

}  // namespace

ElementSets units_idempotents_nilpotents(const FiniteRing& r) {
  const int64_t n = r.order();
  ElementSets out{Subset(r, SubsetKind::Units), Subset(r, SubsetKind::Idempotents),
                  Subset(r, SubsetKind::Nilpotents), std::vector<int>(n, 0), 1};

  std::vector<Index> stamp(static_cast<size_t>(n), -1);
  for (Index u = 0; u < n; ++u) {
    bool injective = true;
    for (Index y = 0; y < n; ++y) {
      Index p = r.mul(u, y);
      if (stamp[p] == u) {
        injective = false;
        break;
      }
      stamp[p] = u;
    }
    if (injective) out.units.insert(u);
    if (r.mul(u, u) == u) out.idempotents.insert(u);
  }

  for (Index x = 0; x < n; ++x) {
    auto [start, period] = power_cycle(r, x);
    if (period == 1 && r.pow(x, static_cast<uint64_t>(start)) == r.zero()) {
      out.nilpotents.insert(x);
      out.nil_index[x] = start;  // In(0) = 1 falls out: 0^1 = 0
      out.ring_nil_index = std::max(out.ring_nil_index, start);
    }
  }
  return out;
}

Subset center(const FiniteRing& r) {
  Subset c(r, SubsetKind::Center);
  const int64_t n = r.order();
  for (Index x = 0; x < n; ++x) {
    bool central = true;
    for (Index y = 0; y < n; ++y) {
      if (r.mul(x, y) != r.mul(y, x)) {
        central = false;
        break;
      }
    }
    if (central) c.insert(x);
  }
  return c;
}

std::vector<Index> jacobson_brute(const FiniteRing& r) {
  const int64_t n = r.order();
  std::vector<bool> unit = unit_bitmap(r);

  // J sits inside the nilpotents of a finite ring, so only those are
  // candidates for the quasi-regularity scan.
  std::vector<Index> out;
  for (Index x = 0; x < n; ++x) {
    auto [start, period] = power_cycle(r, x);
    if (!(period == 1 && r.pow(x, static_cast<uint64_t>(start)) == r.zero())) continue;
    bool in_j = true;
    for (Index s = 0; s < n; ++s) {
      if (!unit[r.sub(r.one(), r.mul(s, x))]) {
        in_j = false;
        break;
      }
    }
    if (in_j) out.push_back(x);
  }
  return out;
}

RadicalData jacobson_radical(const FiniteRing& r) {
  std::vector<Index> elems;
  bool structural = false;
  if (auto s = r.structural_jacobson()) {
    elems = std::move(*s);
    structural = true;
  } else {
    elems = jacobson_brute(r);
  }
  Subset ideal = Subset::of(r, SubsetKind::Radical, elems);
  RadicalData out{ideal, ideal_nilpotency_index(r, ideal), structural};
  return out;
}

Subset additive_span(const FiniteRing& r, const std::vector<Index>& gens) {
  Subset span(r, SubsetKind::Plain);
  span.insert(r.zero());
  std::vector<Index> members{r.zero()};
  for (Index g : gens) {
    if (span.contains(g)) continue;
    std::vector<Index> cyc;
    Index p = g;
    while (p != r.zero()) {
      cyc.push_back(p);
      p = r.add(p, g);
    }
    std::vector<Index> grown;
    for (Index s : members) {
      for (Index c : cyc) {
        Index e = r.add(s, c);
        if (!span.contains(e)) {
          span.insert(e);
          grown.push_back(e);
        }
      }
    }
    members.insert(members.end(), grown.begin(), grown.end());
  }
  return span;
}

Subset subset_product(const FiniteRing& r, const Subset& a, const Subset& b) {
  std::vector<Index> prods;
  for (Index x : a.indices()) {
    for (Index y : b.indices()) prods.push_back(r.mul(x, y));
  }
  return additive_span(r, prods);
}

int ideal_nilpotency_index(const FiniteRing& r, const Subset& ideal, int max_power) {
  Subset power = Subset::of(r, SubsetKind::Plain, ideal.indices());
  Subset base = power;
  for (int l = 1; l <= max_power; ++l) {
    if (power.count() == 1 && power.contains(r.zero())) return l;
    Subset next = subset_product(r, power, base);
    if (next == power) return 0;  // stabilised above zero: not nilpotent
    power = next;
  }
  return 0;
}

bool is_two_sided_ideal(const FiniteRing& r, const Subset& s) {
  if (s.ring_id != r.id()) throw RingError("subset belongs to a different ring");
  if (!s.contains(r.zero())) return false;
  auto elems = s.indices();
  for (Index a : elems) {
    if (!s.contains(r.neg(a))) return false;
    for (Index b : elems) {
      if (!s.contains(r.add(a, b))) return false;
    }
    for (Index x = 0; x < r.order(); ++x) {
      if (!s.contains(r.mul(x, a)) || !s.contains(r.mul(a, x))) return false;
    }
  }
  return true;
}

Subset ideal_closure(const FiniteRing& r, const std::vector<Index>& gens) {
  for (Index g : gens) {
    if (g < 0 || g >= r.order()) {
      throw RingError("ideal generator " + std::to_string(g) + " is out of range for " +
                      r.provenance() + " of order " + std::to_string(r.order()));
    }
  }
  Subset span = additive_span(r, gens);
  while (true) {
    std::vector<Index> extra;
    auto elems = span.indices();
    for (Index a : elems) {
      for (Index x = 0; x < r.order(); ++x) {
        Index l = r.mul(x, a);
        Index rr = r.mul(a, x);
        if (!span.contains(l)) extra.push_back(l);
        if (!span.contains(rr)) extra.push_back(rr);
      }
    }
    if (extra.empty()) break;
    auto all = elems;
    all.insert(all.end(), extra.begin(), extra.end());
    span = additive_span(r, all);
  }
  return Subset::of(r, SubsetKind::Ideal, span.indices());
}

QuotientRing::QuotientRing(RingPtr base, std::vector<Index> reps, std::vector<Index> proj)
    : FiniteRing(static_cast<int64_t>(reps.size()), proj[base->zero()], proj[base->one()],
                 "QUO(" + base->provenance() + ")"),
      base_(std::move(base)), reps_(std::move(reps)), proj_(std::move(proj)) {}

Index QuotientRing::add_impl(Index a, Index b) const {
  return proj_[base_->add(reps_[a], reps_[b])];
}
Index QuotientRing::mul_impl(Index a, Index b) const {
  return proj_[base_->mul(reps_[a], reps_[b])];
}
Index QuotientRing::neg_impl(Index a) const { return proj_[base_->neg(reps_[a])]; }

std::string QuotientRing::label(Index i) const {
  return "[" + base_->label(reps_[i]) + "]";
}

std::optional<std::vector<Index>> QuotientRing::structural_jacobson() const {
  // For finite rings J(R/I) is exactly the image of J(R): the preimage of
  // J(R/I) has idempotent image inside the semisimple R/J(R), so it lands in
  // J(R) + I.
  RadicalData base_rad = jacobson_radical(*base_);
  std::vector<bool> seen(static_cast<size_t>(order()), false);
  std::vector<Index> out;
  for (Index j : base_rad.ideal.indices()) {
    Index q = proj_[j];
    if (!seen[q]) {
      seen[q] = true;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuotientData quotient_ring(RingPtr r, const Subset& ideal) {
  if (!is_two_sided_ideal(*r, ideal)) {
    throw RingError("quotient requires a verified two-sided ideal");
  }
  if (ideal.count() == r->order()) {
    throw RingError("quotient by the whole ring is the zero ring; carriers here are "
                    "unital and nonzero");
  }
  const int64_t n = r->order();
  std::vector<Index> proj(static_cast<size_t>(n), -1);
  std::vector<Index> reps;
  auto ideal_elems = ideal.indices();
  for (Index x = 0; x < n; ++x) {
    if (proj[x] != -1) continue;
    Index coset_id = static_cast<Index>(reps.size());
    reps.push_back(x);  // ascending scan, so x is the least member of its coset
    for (Index i : ideal_elems) proj[r->add(x, i)] = coset_id;
  }
  auto q = std::make_shared<QuotientRing>(r, std::move(reps), std::move(proj));
  q->init_tables();
  QuotientData out{q, {}};
  out.projection.assign(static_cast<size_t>(n), 0);
  for (Index x = 0; x < n; ++x) out.projection[x] = q->project(x);
  return out;
}

namespace {
int64_t product_order(const std::vector<RingPtr>& factors) {
  int64_t o = 1;
  for (const auto& f : factors) o *= f->order();
  return o;
}

std::vector<int64_t> product_strides(const std::vector<RingPtr>& factors) {
  std::vector<int64_t> strides(factors.size(), 1);
  for (int i = static_cast<int>(factors.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * factors[i + 1]->order();
  }
  return strides;
}

Index product_point(const std::vector<RingPtr>& factors,
                    const std::vector<int64_t>& strides, bool ones) {
  int64_t idx = 0;
  for (size_t i = 0; i < factors.size(); ++i) {
    idx += static_cast<int64_t>(ones ? factors[i]->one() : factors[i]->zero()) * strides[i];
  }
  return static_cast<Index>(idx);
}

std::string product_provenance(const std::vector<RingPtr>& factors) {
  std::vector<std::string> ps;
  for (const auto& f : factors) ps.push_back(f->provenance());
  return join(ps, " x ");
}
}  // namespace

ProductRing::ProductRing(std::vector<RingPtr> factors)
    : FiniteRing(product_order(factors),
                 product_point(factors, product_strides(factors), false),
                 product_point(factors, product_strides(factors), true),
                 product_provenance(factors)),
      factors_(std::move(factors)) {
  for (const auto& f : factors_) bases_.push_back(f->order());
  strides_ = product_strides(factors_);
}

Index ProductRing::encode(const std::vector<Index>& comps) const {
  int64_t idx = 0;
  for (size_t i = 0; i < comps.size(); ++i) idx += static_cast<int64_t>(comps[i]) * strides_[i];
  return static_cast<Index>(idx);
}

std::vector<Index> ProductRing::decode(Index i) const {
  std::vector<Index> comps(factors_.size());
  int64_t rest = i;
  for (size_t k = 0; k < factors_.size(); ++k) {
    comps[k] = static_cast<Index>(rest / strides_[k]);
    rest -= static_cast<int64_t>(comps[k]) * strides_[k];
  }
  return comps;
}

Index ProductRing::add_impl(Index a, Index b) const {
  auto ca = decode(a), cb = decode(b);
  std::vector<Index> out(factors_.size());
  for (size_t i = 0; i < factors_.size(); ++i) out[i] = factors_[i]->add(ca[i], cb[i]);
  return encode(out);
}

Index ProductRing::mul_impl(Index a, Index b) const {
  auto ca = decode(a), cb = decode(b);
  std::vector<Index> out(factors_.size());
  for (size_t i = 0; i < factors_.size(); ++i) out[i] = factors_[i]->mul(ca[i], cb[i]);
  return encode(out);
}

Index ProductRing::neg_impl(Index a) const {
  auto ca = decode(a);
  std::vector<Index> out(factors_.size());
  for (size_t i = 0; i < factors_.size(); ++i) out[i] = factors_[i]->neg(ca[i]);
  return encode(out);
}

std::string ProductRing::label(Index i) const {
  auto comps = decode(i);
  std::vector<std::string> parts;
  for (size_t k = 0; k < factors_.size(); ++k) parts.push_back(factors_[k]->label(comps[k]));
  return "(" + join(parts, ", ") + ")";
}

std::optional<std::vector<Index>> ProductRing::structural_jacobson() const {
  std::vector<std::vector<Index>> factor_j;
  for (const auto& f : factors_) factor_j.push_back(jacobson_radical(*f).ideal.indices());
  std::vector<Index> out;
  std::vector<size_t> pos(factors_.size(), 0);
  while (true) {
    std::vector<Index> comps(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) comps[i] = factor_j[i][pos[i]];
    out.push_back(encode(comps));
    int i = static_cast<int>(factors_.size()) - 1;
    while (i >= 0 && ++pos[i] == factor_j[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

RingPtr direct_product(const std::vector<RingPtr>& factors, const Limits& lim) {
  if (factors.empty()) throw RingError("direct product of an empty list");
  uint64_t est = 1;
  for (const auto& f : factors) est = sat_mul(est, static_cast<uint64_t>(f->order()));
  if (est > static_cast<uint64_t>(lim.construct_cap)) {
    throw CapError("product order " + std::to_string(est) + " exceeds construction cap " +
                   std::to_string(lim.construct_cap));
  }
  auto p = std::make_shared<ProductRing>(factors);
  p->init_tables();
  return p;
}

}  // namespace ringlab
