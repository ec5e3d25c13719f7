#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ringlab/classify.hpp"
#include "ringlab/constructions.hpp"
#include "ringlab/ring.hpp"

using namespace ringlab;

namespace {

// Independent unit oracle: search for a genuine two-sided inverse instead of
// the injectivity shortcut the implementation uses.
std::vector<Index> oracle_units(const FiniteRing& r) {
  std::vector<Index> out;
  for (Index u = 0; u < r.order(); ++u) {
    for (Index v = 0; v < r.order(); ++v) {
      if (r.mul(u, v) == r.one() && r.mul(v, u) == r.one()) {
        out.push_back(u);
        break;
      }
    }
  }
  return out;
}

// Independent radical oracle: intersect the maximal right ideals, with right
// ideals enumerated from principal ones and closed under sums. Viable for the
// small carriers used here.
Subset right_ideal_closure(const FiniteRing& r, const std::vector<Index>& gens) {
  Subset s = additive_span(r, gens);
  while (true) {
    std::vector<Index> extra;
    for (Index a : s.indices()) {
      for (Index x = 0; x < r.order(); ++x) {
        Index ax = r.mul(a, x);
        if (!s.contains(ax)) extra.push_back(ax);
      }
    }
    if (extra.empty()) break;
    auto all = s.indices();
    all.insert(all.end(), extra.begin(), extra.end());
    s = additive_span(r, all);
  }
  return s;
}

std::vector<Index> oracle_jacobson(const FiniteRing& r) {
  std::set<std::vector<Index>> ideals;
  for (Index x = 0; x < r.order(); ++x) {
    ideals.insert(right_ideal_closure(r, {x}).indices());
  }
  while (true) {
    std::set<std::vector<Index>> grown = ideals;
    for (const auto& a : ideals) {
      for (const auto& b : ideals) {
        auto both = a;
        both.insert(both.end(), b.begin(), b.end());
        grown.insert(right_ideal_closure(r, both).indices());
      }
    }
    if (grown == ideals) break;
    ideals = std::move(grown);
  }
  // maximal proper right ideals
  std::vector<std::vector<Index>> proper;
  for (const auto& i : ideals) {
    if (static_cast<int64_t>(i.size()) < r.order()) proper.push_back(i);
  }
  std::vector<std::vector<Index>> maximal;
  for (const auto& i : proper) {
    bool is_max = true;
    for (const auto& j : proper) {
      if (i == j) continue;
      if (std::includes(j.begin(), j.end(), i.begin(), i.end())) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(i);
  }
  std::vector<Index> inter;
  for (Index x = 0; x < r.order(); ++x) {
    bool in_all = true;
    for (const auto& m : maximal) {
      if (!std::binary_search(m.begin(), m.end(), x)) {
        in_all = false;
        break;
      }
    }
    if (in_all) inter.push_back(x);
  }
  return inter;
}

std::vector<RingPtr> small_ring_pool() {
  std::vector<RingPtr> pool;
  pool.push_back(cyclic_ring(4));
  pool.push_back(cyclic_ring(6));
  pool.push_back(cyclic_ring(12));
  pool.push_back(galois_field(2, 2));
  pool.push_back(matrix_ring(2, galois_field(2, 1)));
  pool.push_back(matrix_ring(2, cyclic_ring(2), MatrixShape::UpperTriangular));
  pool.push_back(group_ring(cyclic_ring(2), group_cyclic(2)).ring);
  pool.push_back(group_ring(cyclic_ring(4), group_cyclic(2)).ring);
  pool.push_back(direct_product({cyclic_ring(4), cyclic_ring(3)}));
  pool.push_back(formal_matrix_s_int(cyclic_ring(2), 0, 2, FormalVariant::K));
  return pool;
}

}  // namespace

TEST_CASE("characteristic and prime divisors") {
  CHECK(characteristic(*cyclic_ring(6)).characteristic == 6);
  CHECK(characteristic(*cyclic_ring(6)).pi == std::vector<int64_t>{2, 3});
  CHECK(characteristic(*matrix_ring(2, cyclic_ring(4))).characteristic == 4);
  CHECK(characteristic(*matrix_ring(2, cyclic_ring(4))).pi == std::vector<int64_t>{2});
  CHECK(characteristic(*galois_field(2, 2)).characteristic == 2);
}

TEST_CASE("units, idempotents and nilpotents of Z(6), Z(4), M(2,F2)") {
  auto z6 = cyclic_ring(6);
  auto sets = units_idempotents_nilpotents(*z6);
  CHECK(sets.units.indices() == std::vector<Index>{1, 5});
  CHECK(sets.idempotents.indices() == std::vector<Index>{0, 1, 3, 4});
  CHECK(sets.nilpotents.indices() == std::vector<Index>{0});
  CHECK(sets.ring_nil_index == 1);

  auto z4 = cyclic_ring(4);
  auto s4 = units_idempotents_nilpotents(*z4);
  CHECK(s4.nilpotents.indices() == std::vector<Index>{0, 2});
  CHECK(s4.nil_index[2] == 2);

  auto m = matrix_ring(2, galois_field(2, 1));
  CHECK(units_idempotents_nilpotents(*m).ring_nil_index == 2);
}

TEST_CASE("unit detection agrees with the two-sided inverse oracle") {
  for (const auto& r : small_ring_pool()) {
    CAPTURE(r->provenance());
    CHECK(units_idempotents_nilpotents(*r).units.indices() == oracle_units(*r));
  }
}

TEST_CASE("center of commutative and matrix carriers") {
  CHECK(center(*cyclic_ring(6)).count() == 6);
  auto m = matrix_ring(2, galois_field(2, 1));
  auto c = center(*m);
  CHECK(c.indices() == std::vector<Index>{m->zero(), m->one()});
  auto t = matrix_ring(2, cyclic_ring(2), MatrixShape::UpperTriangular);
  CHECK(center(*t).indices() == std::vector<Index>{t->zero(), t->one()});
}

TEST_CASE("radical against the maximal-right-ideal oracle") {
  for (const auto& r : small_ring_pool()) {
    if (r->order() > 64) continue;
    CAPTURE(r->provenance());
    CHECK(jacobson_brute(*r) == oracle_jacobson(*r));
    CHECK(jacobson_radical(*r).ideal.indices() == oracle_jacobson(*r));
  }
}

TEST_CASE("radical values and nilpotency indices") {
  auto z0 = cyclic_ring(4);
  auto rad = jacobson_radical(*z0);
  CHECK(rad.ideal.indices() == std::vector<Index>{0, 2});
  CHECK(rad.nilpotency_index == 2);

  auto m = matrix_ring(2, galois_field(2, 1));
  CHECK(jacobson_radical(*m).ideal.indices() == std::vector<Index>{0});

  auto gr = group_ring(cyclic_ring(2), group_cyclic(2));
  auto jr = jacobson_radical(*gr.ring);
  // J = {0, 1+g} is exactly the augmentation ideal here
  CHECK(jr.ideal.indices() == std::vector<Index>{0, 3});
  CHECK(jr.nilpotency_index == 2);
  CHECK(gr.delta.indices() == jr.ideal.indices());
}

TEST_CASE("radical structure properties across the pool") {
  for (const auto& r : small_ring_pool()) {
    CAPTURE(r->provenance());
    auto rad = jacobson_radical(*r);
    CHECK(is_two_sided_ideal(*r, rad.ideal));
    auto sets = units_idempotents_nilpotents(*r);
    for (Index j : rad.ideal.indices()) {
      CHECK(sets.nilpotents.contains(j));
      CHECK(sets.units.contains(r->add(r->one(), j)));
    }
    CHECK(r->order() % rad.ideal.count() == 0);

    auto quo = quotient_ring(r, rad.ideal);
    CHECK(jacobson_radical(*quo.ring).ideal.count() == 1);  // semiprimitive quotient
    CHECK(characteristic(*r).characteristic %
              characteristic(*quo.ring).characteristic ==
          0);
    // units never nilpotent on carriers bigger than the zero ring
    for (Index u : sets.units.indices()) CHECK_FALSE(sets.nilpotents.contains(u));
    CHECK(sets.idempotents.contains(r->zero()));
    CHECK(sets.idempotents.contains(r->one()));
  }
}

TEST_CASE("ideal closure examples and idempotence") {
  auto z12 = cyclic_ring(12);
  CHECK(ideal_closure(*z12, {6}).indices() == std::vector<Index>{0, 6});
  auto z8 = cyclic_ring(8);
  CHECK(ideal_closure(*z8, {2}).indices() == std::vector<Index>{0, 2, 4, 6});
  auto m = matrix_ring(2, cyclic_ring(2));
  Index e11 = m->encode({1, 0, 0, 0});
  CHECK(ideal_closure(*m, {e11}).count() == m->order());  // simple ring

  for (const auto& r : small_ring_pool()) {
    auto rad = jacobson_radical(*r);
    CHECK(ideal_closure(*r, rad.ideal.indices()).indices() == rad.ideal.indices());
  }
}

TEST_CASE("quotients: canonical representatives and orders") {
  auto z4 = cyclic_ring(4);
  auto q = quotient_ring(z4, jacobson_radical(*z4).ideal);
  CHECK(q.ring->order() == 2);
  // two-element unital ring: boolean
  CHECK(q.ring->mul(q.ring->one(), q.ring->one()) == q.ring->one());
  for (Index x = 0; x < 2; ++x) CHECK(q.ring->mul(x, x) == x);

  auto gr = group_ring(cyclic_ring(2), group_cyclic(2));
  auto qg = quotient_ring(gr.ring, gr.delta);
  CHECK(qg.ring->order() == 2);
  // the projection sends g to 1
  std::vector<Index> coeffs{0, 1};  // g as a coefficient tuple
  CHECK(qg.projection[gr.ring->encode(coeffs)] ==
        qg.projection[gr.ring->one()]);

  auto m = matrix_ring(2, cyclic_ring(4));
  auto qm = quotient_ring(m, jacobson_radical(*m).ideal);
  CHECK(qm.ring->order() == 16);
  bool all_idem = true;
  for (Index x = 0; x < qm.ring->order(); ++x) {
    if (qm.ring->mul(x, x) != x) all_idem = false;
    CHECK(qm.ring->pow(x, 8) == qm.ring->pow(x, 2));
  }
  CHECK_FALSE(all_idem);

  // rejects a non-ideal, and the improper ideal (the zero ring is out)
  Subset bogus = Subset::of(*z4, SubsetKind::Plain, {0, 1});
  CHECK_THROWS_AS(quotient_ring(z4, bogus), RingError);
  CHECK_THROWS_AS(quotient_ring(z4, ideal_closure(*z4, {1})), RingError);
}

TEST_CASE("products and the CRT isomorphism Z(12) = Z(4) x Z(3)") {
  auto prod = direct_product({cyclic_ring(4), cyclic_ring(3)});
  CHECK(prod->order() == 12);
  CHECK(characteristic(*prod).characteristic == 12);

  auto bool2 = direct_product({cyclic_ring(2), cyclic_ring(2)});
  for (Index x = 0; x < bool2->order(); ++x) CHECK(bool2->mul(x, x) == x);

  auto z12 = cyclic_ring(12);
  auto pr = std::dynamic_pointer_cast<const ProductRing>(prod);
  REQUIRE(pr);
  for (Index x = 0; x < 12; ++x) {
    Index fx = pr->encode({static_cast<Index>(x % 4), static_cast<Index>(x % 3)});
    for (Index y = 0; y < 12; ++y) {
      Index fy = pr->encode({static_cast<Index>(y % 4), static_cast<Index>(y % 3)});
      CHECK(pr->encode({static_cast<Index>(z12->add(x, y) % 4),
                        static_cast<Index>(z12->add(x, y) % 3)}) == prod->add(fx, fy));
      CHECK(pr->encode({static_cast<Index>(z12->mul(x, y) % 4),
                        static_cast<Index>(z12->mul(x, y) % 3)}) == prod->mul(fx, fy));
    }
  }

  Limits tight;
  tight.construct_cap = 10;
  CHECK_THROWS_AS(direct_product({cyclic_ring(4), cyclic_ring(3)}, tight), CapError);
}

TEST_CASE("axiom validation: pass, forced violation, sampling above the cap") {
  for (const auto& r : small_ring_pool()) {
    CAPTURE(r->provenance());
    auto rep = validate_ring_axioms(*r);
    CHECK(rep.ok);
    CHECK(rep.exhaustive);
  }

  // a 2-element table with constant-zero multiplication: 1 is no identity
  auto broken = table_ring(2, 0, 1, {0, 1, 1, 0}, {0, 0, 0, 0}, {0, 1}, "broken");
  auto rep = validate_ring_axioms(*broken);
  CHECK_FALSE(rep.ok);
  CHECK(rep.first_violation->axiom == "one is multiplicative identity");

  Limits lim;
  lim.axiom_cap = 8;
  auto big = cyclic_ring(16);
  auto sampled = validate_ring_axioms(*big, lim);
  CHECK(sampled.ok);
  CHECK_FALSE(sampled.exhaustive);
}

TEST_CASE("quotient radical image rule beyond the radical itself") {
  // quotient by an ideal that is not contained in J
  auto z12 = cyclic_ring(12);
  auto quo = quotient_ring(z12, ideal_closure(*z12, {4})).ring;  // four cosets
  CHECK(quo->order() == 4);
  CHECK(jacobson_brute(*quo) == *quo->structural_jacobson());
  // and a quotient of a quotient
  auto z8 = cyclic_ring(8);
  auto q1 = quotient_ring(z8, ideal_closure(*z8, {4})).ring;
  auto q2 = quotient_ring(RingPtr(q1), ideal_closure(*q1, {q1->project(2)})).ring;
  CHECK(q2->order() == 2);
  CHECK(jacobson_brute(*q2) == *q2->structural_jacobson());
}

TEST_CASE("subset power arithmetic") {
  auto z8 = cyclic_ring(8);
  Subset j = jacobson_radical(*z8).ideal;  // {0,2,4,6}
  CHECK(ideal_nilpotency_index(*z8, j) == 3);
  Subset sq = subset_product(*z8, j, j);
  CHECK(sq.indices() == std::vector<Index>{0, 4});
}
