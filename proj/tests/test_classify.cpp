#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ringlab/classify.hpp"
#include "ringlab/constructions.hpp"

using namespace ringlab;

namespace {

// Period oracle: precompute the power table and search exponents directly.
PeriodData oracle_period(const FiniteRing& r, Index x) {
  int bound = static_cast<int>(2 * r.order() + 2);
  std::vector<Index> pw(static_cast<size_t>(bound) + 1);
  pw[1] = x;
  for (int e = 2; e <= bound; ++e) pw[e] = r.mul(pw[e - 1], x);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; n + k <= bound; ++k) {
      if (pw[n + k] == pw[n]) return {n, k};
    }
  }
  return {0, 0};  // unreachable on a finite carrier
}

// Exhaustive split oracle: all (nilpotent, potent) pairs summing to x with
// the certificate conditions of the power-formula decomposition.
bool oracle_split_exists(const FiniteRing& r, Index x, Index a, Index b) {
  PeriodData pd = element_period(r, x);
  return r.add(a, b) == x && r.pow(b, static_cast<uint64_t>(pd.k) + 1) == b &&
         r.pow(a, static_cast<uint64_t>(pd.n)) == r.zero() &&
         r.mul(a, b) == r.zero() && r.mul(b, a) == r.zero();
}

std::vector<RingPtr> profile_pool() {
  return {cyclic_ring(4), cyclic_ring(6), cyclic_ring(12), galois_field(2, 2),
          matrix_ring(2, galois_field(2, 1)),
          group_ring(cyclic_ring(2), group_s3()).ring,
          group_ring(cyclic_ring(4), group_cyclic(2)).ring,
          direct_product({cyclic_ring(4), cyclic_ring(3)})};
}

}  // namespace

TEST_CASE("element periods match the power-table oracle") {
  for (const auto& r : std::vector<RingPtr>{cyclic_ring(12), cyclic_ring(8),
                                            matrix_ring(2, galois_field(2, 1)),
                                            galois_field(2, 2)}) {
    CAPTURE(r->provenance());
    for (Index x = 0; x < r->order(); ++x) {
      PeriodData got = element_period(*r, x);
      PeriodData want = oracle_period(*r, x);
      CHECK(got.n == want.n);
      CHECK(got.k == want.k);
    }
  }
  auto z12 = cyclic_ring(12);
  CHECK(element_period(*z12, 2).n == 2);
  CHECK(element_period(*z12, 2).k == 2);
  CHECK(element_period(*z12, 1).n == 1);
  CHECK(element_period(*z12, 1).k == 1);
  auto z8 = cyclic_ring(8);
  CHECK(element_period(*z8, 2).n == 3);
  CHECK(element_period(*z8, 2).k == 1);
}

TEST_CASE("period minimality") {
  for (const auto& r : std::vector<RingPtr>{cyclic_ring(12), galois_field(2, 2),
                                            matrix_ring(2, galois_field(2, 1))}) {
    for (Index x = 0; x < r->order(); ++x) {
      PeriodData pd = element_period(*r, x);
      if (pd.n > 1) {
        for (int kk = 1; kk <= pd.k * r->order(); ++kk) {
          CHECK(r->pow(x, static_cast<uint64_t>(pd.n - 1 + kk)) !=
                r->pow(x, static_cast<uint64_t>(pd.n - 1)));
        }
      }
      for (int kk = 1; kk < pd.k; ++kk) {
        CHECK(r->pow(x, static_cast<uint64_t>(pd.n + kk)) !=
              r->pow(x, static_cast<uint64_t>(pd.n)));
      }
    }
  }
}

TEST_CASE("power-formula decomposition: frozen spots and soundness everywhere") {
  auto z12 = cyclic_ring(12);
  Decomposition d = potent_nilpotent_decompose(*z12, 2);
  CHECK(d.a.index == 6);
  CHECK(d.b.index == 8);
  CHECK(d.b_potency == 3);
  CHECK(oracle_split_exists(*z12, 2, 6, 8));

  auto z6 = cyclic_ring(6);
  Decomposition d6 = potent_nilpotent_decompose(*z6, 5);
  CHECK(d6.a.index == 0);
  CHECK(d6.b.index == 5);

  auto z8 = cyclic_ring(8);
  Decomposition d8 = potent_nilpotent_decompose(*z8, 2);
  CHECK(d8.a.index == 2);
  CHECK(d8.b.index == 0);

  for (const auto& r : profile_pool()) {
    CAPTURE(r->provenance());
    for (Index x = 0; x < r->order(); ++x) {
      Decomposition dd = potent_nilpotent_decompose(*r, x);
      CHECK(oracle_split_exists(*r, x, dd.a.index, dd.b.index));
    }
  }
}

TEST_CASE("uniform periods: frozen values and consistency") {
  CHECK(uniform_period(*cyclic_ring(6)).n == 1);
  CHECK(uniform_period(*cyclic_ring(6)).k == 2);
  CHECK(uniform_period(*cyclic_ring(4)).n == 2);
  CHECK(uniform_period(*cyclic_ring(4)).k == 2);
  auto m = matrix_ring(2, galois_field(2, 1));
  CHECK(uniform_period(*m).n == 2);
  CHECK(uniform_period(*m).k == 6);
  CHECK(uniform_period(*galois_field(2, 2)).n == 1);
  CHECK(uniform_period(*galois_field(2, 2)).k == 3);

  for (const auto& r : profile_pool()) {
    PeriodData u = uniform_period(*r);
    for (Index x = 0; x < r->order(); ++x) {
      PeriodData pd = element_period(*r, x);
      CHECK(pd.n <= u.n);
      CHECK(u.k % pd.k == 0);
      CHECK(r->pow(x, static_cast<uint64_t>(u.n + u.k)) ==
            r->pow(x, static_cast<uint64_t>(u.n)));
    }
  }
}

TEST_CASE("characteristic and parity clauses of the period-2 remark") {
  auto r4 = check_remark_2_2(*cyclic_ring(4));
  CHECK(r4.char_clause_applicable);
  CHECK(r4.char_divisor == 12);
  CHECK(r4.ok);
  auto r6 = check_remark_2_2(*cyclic_ring(6));
  CHECK(r6.char_clause_applicable);
  CHECK(r6.ok);
  auto rf = check_remark_2_2(*galois_field(2, 1));
  CHECK(rf.parity_clause_applicable);
  CHECK(rf.parity_clause_pass);
}

TEST_CASE("element classification") {
  auto z6 = cyclic_ring(6);
  auto e3 = classify_element(*z6, 3);
  CHECK(e3.idempotent);
  CHECK(e3.tripotent);
  REQUIRE(e3.m_potent);
  CHECK(*e3.m_potent == 2);
  CHECK_FALSE(e3.unit);

  auto z4 = cyclic_ring(4);
  auto e43 = classify_element(*z4, 3);
  CHECK(e43.unit);
  CHECK(e43.unit_order == 2);
  REQUIRE(e43.m_potent);
  CHECK(*e43.m_potent == 3);

  auto m = matrix_ring(2, galois_field(2, 1));
  auto e12 = classify_element(*m, m->encode({0, 1, 0, 0}));
  CHECK(e12.nilpotent);
  CHECK(e12.nil_index == 2);
  CHECK_FALSE(e12.central);
}

TEST_CASE("ring profiles: frozen spot values") {
  auto p4 = classify_ring(*cyclic_ring(4));
  CHECK(p4.is_true("strongly_nil_clean"));
  CHECK(p4.is_true("local"));
  CHECK(p4.find("potent")->status == FlagStatus::False);
  CHECK(*p4.find("potent")->witness == 2);

  auto p6 = classify_ring(*cyclic_ring(6));
  CHECK(p6.is_true("potent"));
  CHECK(p6.find("nil_clean")->status == FlagStatus::False);
  CHECK(*p6.find("m_nil_clean")->param == 3);
  // 5 really is a counterwitness for nil-cleanness, as is the reported one
  auto sets = units_idempotents_nilpotents(*cyclic_ring(6));
  auto z6 = cyclic_ring(6);
  for (Index e : sets.idempotents.indices()) {
    CHECK_FALSE(sets.nilpotents.contains(z6->sub(5, e)));
    CHECK_FALSE(sets.nilpotents.contains(z6->sub(*p6.find("nil_clean")->witness, e)));
  }

  auto ps3 = classify_ring(*group_ring(cyclic_ring(2), group_s3()).ring);
  CHECK(ps3.is_true("nil_clean"));
  CHECK(ps3.find("abelian")->status == FlagStatus::False);
  CHECK(ps3.find("commutative")->status == FlagStatus::False);

  // trivially-true set is exactly the documented five
  for (const char* name :
       {"periodic", "weakly_periodic", "pi_UU", "semi_clean", "strongly_pi_regular"}) {
    CHECK(p6.find(name)->status == FlagStatus::TriviallyTrueFinite);
  }
  int trivial_count = 0;
  for (const auto& [name, f] : p6.flags) {
    if (f.status == FlagStatus::TriviallyTrueFinite) ++trivial_count;
  }
  CHECK(trivial_count == 5);
}

TEST_CASE("profile coherence chains") {
  for (const auto& r : profile_pool()) {
    CAPTURE(r->provenance());
    RingProfile p = classify_ring(*r);
    auto status = [&](const char* n) { return p.find(n)->status == FlagStatus::True; };
    if (status("strongly_nil_clean")) CHECK(status("nil_clean"));
    if (status("nil_clean")) CHECK(status("weakly_nil_clean"));
    if (status("boolean")) CHECK(status("potent"));
    if (status("potent")) {
      CHECK(status("reduced"));
      CHECK(p.uniform.n == 1);
    }
    // quasi-duo is definitionally "R/J reduced" here
    auto quo = quotient_ring(r, jacobson_radical(*r).ideal);
    RingProfile pq = classify_ring(*quo.ring);
    CHECK(status("quasi_duo") == (pq.find("reduced")->status == FlagStatus::True));
    // minimal strong m is at least the minimal plain m
    CHECK(*p.find("strongly_m_nil_clean")->param >= *p.find("m_nil_clean")->param);
  }
}

TEST_CASE("profile skips above the classification cap") {
  Limits lim;
  lim.classify_cap = 10;
  RingProfile p = classify_ring(*cyclic_ring(12), lim);
  CHECK(p.find("potent")->status == FlagStatus::Skipped);
  CHECK(p.find("periodic")->status == FlagStatus::TriviallyTrueFinite);
}

TEST_CASE("strongly m-nil clean search") {
  auto m = matrix_ring(2, galois_field(2, 1));
  CHECK_FALSE(strongly_m_nil_clean(*m, 2).ok);
  CHECK(strongly_m_nil_clean(*m, 4).ok);
  CHECK(strongly_m_nil_clean(*cyclic_ring(2), 2).ok);

  // witnesses re-multiply
  auto res = strongly_m_nil_clean(*m, 4);
  auto nil = nilpotent_elements(*m);
  for (Index x = 0; x < m->order(); ++x) {
    auto [b, a] = res.witness[x];
    CHECK(m->add(a, b) == x);
    CHECK(m->pow(b, 4) == b);
    CHECK(nil[a]);
    CHECK(m->mul(a, b) == m->mul(b, a));
  }

  auto sweep = strongly_m_nil_clean_sweep(*m, {2, 3, 4, 7});
  CHECK_FALSE(sweep[0].ok);
  CHECK_FALSE(sweep[1].ok);
  CHECK(sweep[2].ok);
  CHECK(sweep[3].ok);
}

TEST_CASE("weakly periodic witnesses on the frozen examples") {
  auto z4 = cyclic_ring(4);
  auto w = weakly_periodic_witness(*z4);
  CHECK(w.potent_part[3] == 3);
  CHECK(w.nilpotent_part[3] == 0);
  CHECK(w.potent_part[2] == 0);
  CHECK(w.nilpotent_part[2] == 2);

  auto gr = group_ring(cyclic_ring(2), group_cyclic(2));
  auto wg = weakly_periodic_witness(*gr.ring);
  CHECK(wg.potent_part[3] == 0);
  CHECK(wg.nilpotent_part[3] == 3);  // 1+g splits as 0 + (1+g)

  for (const auto& r : profile_pool()) {
    auto ww = weakly_periodic_witness(*r);
    auto nil = nilpotent_elements(*r);
    for (Index x = 0; x < r->order(); ++x) {
      CHECK(r->add(ww.potent_part[x], ww.nilpotent_part[x]) == x);
      CHECK(nil[ww.nilpotent_part[x]]);
      CHECK(element_period(*r, ww.potent_part[x]).n == 1);
      CHECK(r->pow(ww.potent_part[x],
                   static_cast<uint64_t>(ww.potency_exponent[x])) == ww.potent_part[x]);
    }
  }
}

TEST_CASE("matrix exponent bound q") {
  auto q1 = q_bound(galois_field(2, 1), 2);
  CHECK(q1.q == 4);
  CHECK(q1.verified);
  CHECK(q1.matrices_checked == 16);
  CHECK(q1.field_orders == std::vector<int64_t>{2});

  auto q2 = q_bound(cyclic_ring(4), 2);
  CHECK(q2.q == 4);
  CHECK(q2.verified);
  CHECK(q2.matrices_checked == 256);

  auto q3 = q_bound(galois_field(3, 1), 1);
  CHECK(q3.q == 3);
  CHECK(q3.verified);

  auto q6 = q_bound(cyclic_ring(6), 2);
  // R/J = F2 x F3: q = lcm(1, 3, 2, 8) + 1 = 25
  CHECK(q6.q == 25);
  CHECK(q6.verified);

  CHECK_THROWS_AS(q_bound(matrix_ring(2, galois_field(2, 1)), 1), RingError);
}

TEST_CASE("tripotent/idempotent plus potent splits for matrices") {
  auto m2f2 = matrix_ring(2, galois_field(2, 1));
  auto s = tripotent_potent_decompose(*m2f2, galois_field(2, 1), PotentMode::Tripotent);
  CHECK(s.ok);
  for (Index a = 0; a < m2f2->order(); ++a) {
    auto [t, p] = s.witness[a];
    CHECK(m2f2->add(t, p) == a);
    CHECK(m2f2->pow(t, 3) == t);
    CHECK(element_period(*m2f2, p).n == 1);
  }
  Index zero_t = s.witness[m2f2->zero()].first;
  CHECK(zero_t == m2f2->zero());  // 0 = 0 + 0 is found first

  auto m2f7 = matrix_ring(2, galois_field(7, 1));
  CHECK(tripotent_potent_decompose(*m2f7, galois_field(7, 1), PotentMode::Idempotent).ok);

  // 3 is not a unit mod 6, so idempotent mode must be rejected there
  CHECK_THROWS_AS(tripotent_potent_decompose(*matrix_ring(2, cyclic_ring(6)),
                                             cyclic_ring(6), PotentMode::Idempotent),
                  RingError);
  // base must be potent
  CHECK_THROWS_AS(tripotent_potent_decompose(*matrix_ring(2, cyclic_ring(4)),
                                             cyclic_ring(4), PotentMode::Tripotent),
                  RingError);
}

TEST_CASE("potent lifting modulo nil ideals") {
  auto z4 = cyclic_ring(4);
  auto j4 = jacobson_radical(*z4).ideal;
  CHECK(lift_potent_mod_nil(z4, j4, 1) == 1);

  auto z9 = cyclic_ring(9);
  auto j9 = jacobson_radical(*z9).ideal;
  CHECK(j9.indices() == std::vector<Index>{0, 3, 6});
  CHECK(lift_potent_mod_nil(z9, j9, 1) == 1);

  // trivial ideal: the representative itself comes back
  auto z5 = cyclic_ring(5);
  Subset zero_ideal = Subset::of(*z5, SubsetKind::Ideal, {0});
  CHECK(lift_potent_mod_nil(z5, zero_ideal, 3) == 3);

  // every potent coset of M(2, Z4)/J lifts
  auto m = matrix_ring(2, cyclic_ring(4));
  auto jm = jacobson_radical(*m).ideal;
  auto quo = quotient_ring(m, jm);
  int lifted = 0;
  for (Index c = 0; c < quo.ring->order(); ++c) {
    if (element_period(*quo.ring, c).n != 1) continue;
    Index f = lift_potent_mod_nil(m, jm, quo.ring->rep(c));
    CHECK(element_period(*m, f).n == 1);
    CHECK(quo.projection[f] == c);
    ++lifted;
  }
  CHECK(lifted > 0);

  // rejects ideals that are not nil
  auto z6 = cyclic_ring(6);
  Subset whole = Subset::of(*z6, SubsetKind::Ideal, {0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(lift_potent_mod_nil(z6, whole, 1), RingError);
}
