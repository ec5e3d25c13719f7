#include "ringlab/classify.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "ringlab/constructions.hpp"
#include "ringlab/util.hpp"

namespace ringlab {

namespace {

std::vector<bool> nilpotent_bitmap(const FiniteRing& r) {
  std::vector<bool> nil(static_cast<size_t>(r.order()), false);
  for (Index x = 0; x < r.order(); ++x) {
    PeriodData pd = element_period(r, x);
    nil[x] = pd.k == 1 && r.pow(x, static_cast<uint64_t>(pd.n)) == r.zero();
  }
  return nil;
}

std::vector<int64_t> divisors_ascending(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PeriodData element_period(const FiniteRing& r, Index x) {
  // power sequences are short in practice; probe a stack buffer linearly and
  // only fall back to a map for long cycles
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

PeriodData uniform_period(const FiniteRing& r) {
  int n = 1;
  int64_t k = 1;
  for (Index x = 0; x < r.order(); ++x) {
    PeriodData pd = element_period(r, x);
    n = std::max(n, pd.n);
    k = std::lcm<int64_t>(k, pd.k);
  }
  return {n, static_cast<int>(k)};
}

Decomposition potent_nilpotent_decompose(const FiniteRing& r, Index x) {
  PeriodData pd = element_period(r, x);
  int64_t big_n = ((pd.n + pd.k - 1) / pd.k) * static_cast<int64_t>(pd.k);
  Index b = r.pow(x, static_cast<uint64_t>(big_n + 1));
  Index a = r.sub(x, b);

  Decomposition d;
  d.a = {r.id(), a};
  d.b = {r.id(), b};
  d.b_potency = pd.k + 1;
  d.a_nil_index = pd.n;
  d.commute = r.mul(a, b) == r.mul(b, a);
  d.annihilate = r.mul(a, b) == r.zero() && r.mul(b, a) == r.zero();

  if (r.add(a, b) != x || r.pow(b, static_cast<uint64_t>(pd.k) + 1) != b ||
      r.pow(a, static_cast<uint64_t>(pd.n)) != r.zero() || !d.annihilate) {
    throw RingError("decomposition certificate failed for element " + r.label(x));
  }
  return d;
}

RemarkReport check_remark_2_2(const FiniteRing& r) {
  RemarkReport rep;
  rep.uniform = uniform_period(r);
  CharData cd = characteristic(r);
  if (rep.uniform.k == 2) {
    rep.char_clause_applicable = true;
    rep.char_divisor = (int64_t{1} << rep.uniform.n) * 3;
    rep.char_clause_pass = rep.char_divisor % cd.characteristic == 0;
  }
  if (rep.uniform.k % 2 == 1) {
    // an odd period admits exponents m = n + k, n of opposite parity
    rep.parity_clause_applicable = true;
    bool potent = true;
    for (Index x = 0; x < r.order() && potent; ++x) {
      potent = element_period(r, x).n == 1;
    }
    rep.parity_clause_pass = potent;
  }
  rep.ok = rep.char_clause_pass && rep.parity_clause_pass;
  return rep;
}

ElementReport classify_element(const FiniteRing& r, Index x) {
  if (x < 0 || x >= r.order()) throw RingError("element index out of range");
  ElementReport er;
  er.x = x;
  er.label = r.label(x);
  er.period = element_period(r, x);
  er.nilpotent = er.period.k == 1 &&
                 r.pow(x, static_cast<uint64_t>(er.period.n)) == r.zero();
  er.nil_index = er.nilpotent ? er.period.n : 0;
  er.idempotent = r.mul(x, x) == x;
  er.tripotent = r.pow(x, 3) == x;
  if (er.period.n == 1) er.m_potent = er.period.k + 1;

  std::vector<bool> seen(static_cast<size_t>(r.order()), false);
  er.unit = true;
  for (Index y = 0; y < r.order(); ++y) {
    Index p = r.mul(x, y);
    if (seen[p]) {
      er.unit = false;
      break;
    }
    seen[p] = true;
  }
  if (er.unit) {
    Index p = x;
    er.unit_order = 1;
    while (p != r.one()) {
      p = r.mul(p, x);
      ++er.unit_order;
    }
  }
  er.in_jacobson = jacobson_radical(r).ideal.contains(x);
  er.central = true;
  for (Index y = 0; y < r.order(); ++y) {
    if (r.mul(x, y) != r.mul(y, x)) {
      er.central = false;
      break;
    }
  }
  return er;
}

namespace {

MNilCleanResult m_nil_clean_impl(const FiniteRing& r, int m, bool strong,
                                 const std::vector<bool>& nil) {
  MNilCleanResult res;
  std::vector<Index> potents;
  for (Index b = 0; b < r.order(); ++b) {
    if (r.pow(b, static_cast<uint64_t>(m)) == b) potents.push_back(b);
  }
  res.witness.assign(static_cast<size_t>(r.order()), {0, 0});
  for (Index x = 0; x < r.order(); ++x) {
    bool found = false;
    for (Index b : potents) {
      Index a = r.sub(x, b);
      if (!nil[a]) continue;
      if (strong && r.mul(a, b) != r.mul(b, a)) continue;
      res.witness[x] = {b, a};
      found = true;
      break;
    }
    if (!found) {
      res.ok = false;
      res.counterwitness = x;
      return res;
    }
  }
  return res;
}

}  // namespace

MNilCleanResult strongly_m_nil_clean(const FiniteRing& r, int m) {
  if (m < 2) throw RingError("m-nil-clean needs m >= 2");
  return m_nil_clean_impl(r, m, true, nilpotent_bitmap(r));
}

MNilCleanResult m_nil_clean(const FiniteRing& r, int m) {
  if (m < 2) throw RingError("m-nil-clean needs m >= 2");
  return m_nil_clean_impl(r, m, false, nilpotent_bitmap(r));
}

std::vector<MNilCleanVerdict> strongly_m_nil_clean_sweep(const FiniteRing& r,
                                                         const std::vector<int>& ms) {
  auto nil = nilpotent_bitmap(r);
  std::vector<MNilCleanVerdict> out;
  for (int m : ms) {
    MNilCleanResult res = m_nil_clean_impl(r, m, true, nil);
    out.push_back({m, res.ok, res.counterwitness});
  }
  return out;
}

std::vector<bool> nilpotent_elements(const FiniteRing& r) { return nilpotent_bitmap(r); }

int ring_nilpotency_degree(const FiniteRing& r) {
  int deg = 1;
  for (Index x = 0; x < r.order(); ++x) {
    PeriodData pd = element_period(r, x);
    if (pd.k == 1 && r.pow(x, static_cast<uint64_t>(pd.n)) == r.zero()) {
      deg = std::max(deg, x == r.zero() ? 1 : pd.n);
    }
  }
  return deg;
}

WeaklyPeriodicWitness weakly_periodic_witness(const FiniteRing& r) {
  WeaklyPeriodicWitness w;
  const int64_t n = r.order();
  std::vector<Index> nil_list;
  auto nil = nilpotent_bitmap(r);
  for (Index q = 0; q < n; ++q) {
    if (nil[q]) nil_list.push_back(q);
  }
  w.potent_part.resize(static_cast<size_t>(n));
  w.nilpotent_part.resize(static_cast<size_t>(n));
  w.potency_exponent.resize(static_cast<size_t>(n));
  for (Index x = 0; x < n; ++x) {
    bool found = false;
    for (Index q : nil_list) {
      Index p = r.sub(x, q);
      PeriodData pd = element_period(r, p);
      if (pd.n == 1) {
        w.potent_part[x] = p;
        w.nilpotent_part[x] = q;
        w.potency_exponent[x] = pd.k + 1;
        found = true;
        break;
      }
    }
    if (!found) {
      // impossible on a finite carrier: the index-period split always works
      throw RingError("no potent + nilpotent split found for " + r.label(x));
    }
  }
  return w;
}

RingProfile classify_ring(const FiniteRing& r, const Limits& lim) {
  RingProfile p;
  p.order = r.order();
  p.chars = characteristic(r);

  auto push = [&](const std::string& name, Flag f) {
    p.flags.emplace_back(name, std::move(f));
  };
  auto trivially = [&](const std::string& name, const std::string& why) {
    Flag f;
    f.status = FlagStatus::TriviallyTrueFinite;
    f.note = why;
    push(name, f);
  };
  auto verdict = [&](const std::string& name, bool ok, std::optional<Index> wit,
                     std::string note = "", std::optional<int> param = std::nullopt) {
    Flag f;
    f.status = ok ? FlagStatus::True : FlagStatus::False;
    f.witness = ok ? std::nullopt : wit;
    f.param = param;
    f.note = std::move(note);
    push(name, f);
  };

  const char* kTrivialNotes[5][2] = {
      {"periodic", "finite carrier: every power sequence cycles"},
      {"weakly_periodic", "finite carrier: see the witness map"},
      {"pi_UU", "finite carrier: u^{ord(u)} = 1 lies in 1 + Nil"},
      {"semi_clean", "finite carrier: x = (x-1) + 1 with x-1 periodic"},
      {"strongly_pi_regular", "finite carrier: power chains stabilise"},
  };

  if (r.order() > lim.classify_cap) {
    const char* searchable[] = {"potent", "boolean", "m_potent_uniform", "nil_clean",
                                "strongly_nil_clean", "m_nil_clean", "strongly_m_nil_clean",
                                "weakly_nil_clean", "UU", "abelian", "local", "NI",
                                "two_primal", "quasi_duo", "reduced", "commutative"};
    for (const char* name : searchable) {
      Flag f;
      f.status = FlagStatus::Skipped;
      f.note = "order " + std::to_string(r.order()) + " exceeds classification cap " +
               std::to_string(lim.classify_cap);
      push(name, f);
    }
    for (auto& row : kTrivialNotes) trivially(row[0], row[1]);
    return p;
  }

  auto sets = units_idempotents_nilpotents(r);
  auto rad = jacobson_radical(r);
  auto nil = nilpotent_bitmap(r);
  p.units = sets.units.count();
  p.idempotents = sets.idempotents.count();
  p.nilpotents = sets.nilpotents.count();
  p.radical_size = rad.ideal.count();
  p.in_ring = sets.ring_nil_index;

  int nmax = 1;
  int64_t klcm = 1;
  std::optional<Index> nonpotent;
  for (Index x = 0; x < r.order(); ++x) {
    PeriodData pd = element_period(r, x);
    nmax = std::max(nmax, pd.n);
    klcm = std::lcm<int64_t>(klcm, pd.k);
    if (pd.n > 1 && !nonpotent) nonpotent = x;
  }
  p.uniform = {nmax, static_cast<int>(klcm)};

  bool potent = !nonpotent.has_value();
  verdict("potent", potent, nonpotent,
          potent ? "x^" + std::to_string(klcm + 1) + " = x uniformly" : "",
          potent ? std::optional<int>(static_cast<int>(klcm) + 1) : std::nullopt);
  {
    std::optional<Index> wit;
    for (Index x = 0; x < r.order(); ++x) {
      if (r.mul(x, x) != x) {
        wit = x;
        break;
      }
    }
    verdict("boolean", !wit.has_value(), wit);
  }
  verdict("m_potent_uniform", potent, nonpotent, "",
          potent ? std::optional<int>(static_cast<int>(klcm) + 1) : std::nullopt);

  auto idem = sets.idempotents.indices();
  auto nil_clean_scan = [&](bool strong, bool weak) -> std::optional<Index> {
    for (Index x = 0; x < r.order(); ++x) {
      bool found = false;
      for (Index e : idem) {
        Index q = r.sub(x, e);
        if (nil[q] && (!strong || r.mul(e, x) == r.mul(x, e))) {
          found = true;
          break;
        }
        if (weak && nil[r.add(x, e)]) {
          found = true;
          break;
        }
      }
      if (!found) return x;
    }
    return std::nullopt;
  };
  {
    auto wit = nil_clean_scan(false, false);
    verdict("nil_clean", !wit.has_value(), wit);
    auto wits = nil_clean_scan(true, false);
    verdict("strongly_nil_clean", !wits.has_value(), wits);
  }
  {
    // valid periods divide the uniform one, so only the divisor-shifted
    // exponents m = d + 1 are candidates for the minimal m
    std::optional<int> minimal_m, minimal_strong_m;
    for (int64_t d : divisors_ascending(klcm)) {
      int m = static_cast<int>(d) + 1;
      if (!minimal_m && m_nil_clean_impl(r, m, false, nil).ok) minimal_m = m;
      if (!minimal_strong_m && m_nil_clean_impl(r, m, true, nil).ok) minimal_strong_m = m;
      if (minimal_m && minimal_strong_m) break;
    }
    Flag f;
    f.status = FlagStatus::True;
    f.param = minimal_m;
    f.note = "minimal m with every x = m-potent + nilpotent";
    push("m_nil_clean", f);
    Flag g;
    g.status = FlagStatus::True;
    g.param = minimal_strong_m;
    g.note = "minimal m with commuting parts";
    push("strongly_m_nil_clean", g);
  }
  {
    auto wit = nil_clean_scan(false, true);
    verdict("weakly_nil_clean", !wit.has_value(), wit);
  }

  trivially("weakly_periodic", kTrivialNotes[1][1]);
  trivially("periodic", kTrivialNotes[0][1]);

  {
    std::optional<Index> wit;
    for (Index u : sets.units.indices()) {
      if (!nil[r.sub(u, r.one())]) {
        wit = u;
        break;
      }
    }
    verdict("UU", !wit.has_value(), wit);
  }
  trivially("pi_UU", kTrivialNotes[2][1]);

  {
    std::optional<Index> wit;
    for (Index e : idem) {
      for (Index y = 0; y < r.order(); ++y) {
        if (r.mul(e, y) != r.mul(y, e)) {
          wit = e;
          break;
        }
      }
      if (wit) break;
    }
    verdict("abelian", !wit.has_value(), wit);
  }

  {
    std::optional<Index> wit;
    for (Index x = 0; x < r.order(); ++x) {
      if (!rad.ideal.contains(x) && !sets.units.contains(x)) {
        wit = x;
        break;
      }
    }
    verdict("local", !wit.has_value(), wit);
  }

  // NI: the nilpotents form an ideal, checked directly
  {
    std::optional<Index> wit;
    std::string note;
    auto nil_list = sets.nilpotents.indices();
    for (Index a : nil_list) {
      for (Index b : nil_list) {
        if (!nil[r.add(a, b)]) {
          wit = a;
          note = "nilpotent sum " + r.label(a) + " + " + r.label(b) + " is not nilpotent";
          break;
        }
      }
      if (wit) break;
      for (Index y = 0; y < r.order(); ++y) {
        if (!nil[r.mul(a, y)] || !nil[r.mul(y, a)]) {
          wit = a;
          note = "nilpotent " + r.label(a) + " has a non-nilpotent multiple";
          break;
        }
      }
      if (wit) break;
    }
    verdict("NI", !wit.has_value(), wit, note);
  }

  // two_primal through the finite collapse: the lower nilradical is J, so
  // compare Nil with J as sets
  {
    std::optional<Index> wit;
    for (Index x : sets.nilpotents.indices()) {
      if (!rad.ideal.contains(x)) {
        wit = x;
        break;
      }
    }
    verdict("two_primal", !wit.has_value(), wit,
            wit ? "nilpotent outside J" : "Nil = J");
  }

  // quasi_duo as "R/J reduced": no x outside J may square into J
  {
    std::optional<Index> wit;
    for (Index x = 0; x < r.order(); ++x) {
      if (!rad.ideal.contains(x) && rad.ideal.contains(r.mul(x, x))) {
        wit = x;
        break;
      }
    }
    verdict("quasi_duo", !wit.has_value(), wit,
            wit ? "x^2 falls into J while x does not: R/J is not reduced" : "R/J reduced");
  }

  {
    std::optional<Index> wit;
    for (Index x : sets.nilpotents.indices()) {
      if (x != r.zero()) {
        wit = x;
        break;
      }
    }
    verdict("reduced", !wit.has_value(), wit);
  }
  {
    std::optional<Index> wit;
    std::string note;
    for (Index x = 0; x < r.order() && !wit; ++x) {
      for (Index y = 0; y < r.order(); ++y) {
        if (r.mul(x, y) != r.mul(y, x)) {
          wit = x;
          note = "does not commute with " + r.label(y);
          break;
        }
      }
    }
    verdict("commutative", !wit.has_value(), wit, note);
  }

  trivially("semi_clean", kTrivialNotes[3][1]);
  trivially("strongly_pi_regular", kTrivialNotes[4][1]);
  return p;
}

const Flag* RingProfile::find(const std::string& name) const {
  for (const auto& [n, f] : flags) {
    if (n == name) return &f;
  }
  return nullptr;
}

bool RingProfile::is_true(const std::string& name) const {
  const Flag* f = find(name);
  return f && (f->status == FlagStatus::True || f->status == FlagStatus::TriviallyTrueFinite);
}

QBound q_bound(RingPtr r, int n, const Limits& lim) {
  QBound out;
  out.n = n;

  auto sets = units_idempotents_nilpotents(*r);
  for (Index e : sets.idempotents.indices()) {
    for (Index y = 0; y < r->order(); ++y) {
      if (r->mul(e, y) != r->mul(y, e)) {
        throw RingError("q_bound requires an abelian ring; idempotent " + r->label(e) +
                        " is not central");
      }
    }
  }

  auto rad = jacobson_radical(*r);
  auto quo = quotient_ring(r, rad.ideal);
  const FiniteRing& q = *quo.ring;
  for (Index x = 0; x < q.order(); ++x) {
    for (Index y = 0; y < q.order(); ++y) {
      if (q.mul(x, y) != q.mul(y, x)) {
        throw RingError("q_bound requires R/J commutative");
      }
    }
  }

  // primitive idempotents of the semisimple commutative quotient
  std::vector<Index> qidem;
  for (Index x = 0; x < q.order(); ++x) {
    if (q.mul(x, x) == x && x != q.zero()) qidem.push_back(x);
  }
  std::vector<Index> prims;
  for (Index e : qidem) {
    bool primitive = true;
    for (Index f : qidem) {
      Index ef = q.mul(e, f);
      if (ef != q.zero() && ef != e) {
        primitive = false;
        break;
      }
    }
    if (primitive) prims.push_back(e);
  }
  int64_t lcm = 1;
  for (Index e : prims) {
    std::vector<bool> seen(static_cast<size_t>(q.order()), false);
    int64_t field_order = 0;
    for (Index x = 0; x < q.order(); ++x) {
      Index ex = q.mul(e, x);
      if (!seen[ex]) {
        seen[ex] = true;
        ++field_order;
      }
    }
    out.field_orders.push_back(field_order);
    int64_t power = 1;
    for (int i = 1; i <= n; ++i) {
      if (power > (int64_t{1} << 40) / field_order) {
        throw CapError("q exponent overflows for field order " +
                       std::to_string(field_order) + " at i = " + std::to_string(i));
      }
      power *= field_order;
      lcm = std::lcm(lcm, power - 1);
    }
  }
  out.q = lcm + 1;

  auto mn = matrix_ring(n, r, MatrixShape::Full, lim);
  auto mat_nil = nilpotent_bitmap(*mn);
  out.verified = true;
  for (Index a = 0; a < mn->order(); ++a) {
    ++out.matrices_checked;
    Index diff = mn->sub(mn->pow(a, static_cast<uint64_t>(out.q)), a);
    if (!mat_nil[diff]) {
      out.verified = false;
      out.violation = a;
      break;
    }
  }
  return out;
}

PotentSplit tripotent_potent_decompose(const FiniteRing& carrier, RingPtr base,
                                       PotentMode mode) {
  for (Index x = 0; x < base->order(); ++x) {
    if (element_period(*base, x).n != 1) {
      throw RingError("tripotent/potent split requires a potent base ring; element " +
                      base->label(x) + " has index > 1");
    }
  }
  if (mode == PotentMode::Idempotent) {
    Index three = ring_int(*base, 3);
    std::vector<bool> seen(static_cast<size_t>(base->order()), false);
    for (Index y = 0; y < base->order(); ++y) {
      Index p = base->mul(three, y);
      if (seen[p]) {
        throw RingError("idempotent mode requires 3 to be a unit in the base ring");
      }
      seen[p] = true;
    }
  }

  std::vector<Index> parts;
  for (Index t = 0; t < carrier.order(); ++t) {
    bool keep = mode == PotentMode::Tripotent ? carrier.pow(t, 3) == t
                                              : carrier.mul(t, t) == t;
    if (keep) parts.push_back(t);
  }

  PotentSplit out;
  out.witness.assign(static_cast<size_t>(carrier.order()), {0, 0});
  for (Index a = 0; a < carrier.order(); ++a) {
    bool found = false;
    for (Index t : parts) {
      Index p = carrier.sub(a, t);
      if (element_period(carrier, p).n == 1) {
        out.witness[a] = {t, p};
        found = true;
        break;
      }
    }
    if (!found) {
      out.ok = false;
      out.failure = a;
      return out;
    }
  }
  return out;
}

Index lift_potent_mod_nil(RingPtr r, const Subset& nil_ideal, Index e_rep) {
  if (!is_two_sided_ideal(*r, nil_ideal)) {
    throw RingError("lift requires a two-sided ideal");
  }
  if (ideal_nilpotency_index(*r, nil_ideal) == 0) {
    throw RingError("lift requires a nil ideal");
  }
  auto quo = quotient_ring(r, nil_ideal);
  Index qe = quo.projection[e_rep];
  if (element_period(*quo.ring, qe).n != 1) {
    throw RingError("coset of " + r->label(e_rep) + " is not potent in the quotient");
  }

  if (quo.ring->mul(qe, qe) == qe) {
    // cubic refinement f <- 3f^2 - 2f^3 stays in the coset and converges
    // modulo a nilpotent ideal
    Index f = e_rep;
    for (int it = 0; it < 64; ++it) {
      if (r->mul(f, f) == f) break;
      Index f2 = r->mul(f, f);
      Index f3 = r->mul(f2, f);
      Index three_f2 = r->add(r->add(f2, f2), f2);
      Index two_f3 = r->add(f3, f3);
      f = r->sub(three_f2, two_f3);
    }
    if (r->mul(f, f) == f && quo.projection[f] == qe) return f;
  }

  for (Index i : nil_ideal.indices()) {
    Index f = r->add(e_rep, i);
    if (element_period(*r, f).n == 1) return f;
  }
  throw RingError("no potent lift found in the coset of " + r->label(e_rep) +
                  "; this would be a reportable finding");
}

}  // namespace ringlab
