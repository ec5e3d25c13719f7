#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ringlab/classify.hpp"
#include "ringlab/constructions.hpp"
#include "ringlab/expr.hpp"

using namespace ringlab;

namespace {

std::vector<int> order_multiset(const GroupTable& g) {
  auto o = group_element_orders(g);
  std::sort(o.begin(), o.end());
  return o;
}

void check_dual_path_radical(RingPtr r) {
  CAPTURE(r->provenance());
  auto structural = r->structural_jacobson();
  REQUIRE(structural);
  CHECK(jacobson_brute(*r) == *structural);
}

}  // namespace

TEST_CASE("cyclic rings and Galois fields") {
  CHECK(cyclic_ring(2)->order() == 2);
  CHECK_THROWS_AS(cyclic_ring(1), RingError);
  CHECK(classify_ring(*cyclic_ring(2)).is_true("boolean"));
  CHECK(classify_ring(*cyclic_ring(6)).is_true("potent"));
  CHECK(characteristic(*cyclic_ring(4)).characteristic == 4);

  auto f4 = galois_field(2, 2);
  CHECK(f4->order() == 4);
  CHECK(f4->modulus_string() == "t^2+t+1");
  PeriodData u = uniform_period(*f4);
  CHECK(u.n == 1);
  CHECK(u.k == 3);

  auto f8 = galois_field(2, 3);
  CHECK(f8->modulus_string() == "t^3+t+1");  // least encoding wins
  for (Index x = 0; x < f8->order(); ++x) CHECK(f8->pow(x, 8) == x);

  auto f3 = galois_field(3, 1);
  CHECK(units_idempotents_nilpotents(*f3).units.count() == 2);

  CHECK_THROWS_AS(galois_field(4, 1), RingError);
  CHECK(validate_ring_axioms(*galois_field(3, 2)).ok);
}

TEST_CASE("matrix rings, full and triangular") {
  auto m1 = matrix_ring(1, cyclic_ring(6));
  CHECK(m1->order() == 6);
  for (Index x = 0; x < 6; ++x) {
    for (Index y = 0; y < 6; ++y) CHECK(m1->mul(x, y) == cyclic_ring(6)->mul(x, y));
  }

  auto t2 = matrix_ring(2, cyclic_ring(2), MatrixShape::UpperTriangular);
  CHECK(t2->order() == 8);
  auto jt = jacobson_radical(*t2);
  CHECK(jt.ideal.count() == 2);  // the strictly upper part
  check_dual_path_radical(t2);

  check_dual_path_radical(matrix_ring(2, cyclic_ring(4)));
  check_dual_path_radical(matrix_ring(3, cyclic_ring(2), MatrixShape::UpperTriangular));
  CHECK(validate_ring_axioms(*matrix_ring(2, cyclic_ring(4))).ok);

  Limits tight;
  tight.construct_cap = 100;
  CHECK_THROWS_AS(matrix_ring(3, cyclic_ring(8), MatrixShape::Full, tight), CapError);
}

TEST_CASE("twisted 2x2 rings and their radical blocks") {
  auto k42 = formal_matrix_s_int(cyclic_ring(4), 2, 2, FormalVariant::K);
  CHECK(k42->order() == 256);
  auto jk = jacobson_radical(*k42);
  CHECK(jk.structural);
  CHECK(jk.ideal.count() == 64);
  check_dual_path_radical(k42);

  // s = 0 kills the trace terms: E12-style elements square to zero
  auto k0 = formal_matrix_s_int(cyclic_ring(2), 0, 2, FormalVariant::K);
  Index e12 = k0->encode({0, 1, 0, 0});
  CHECK(k0->mul(e12, e12) == k0->zero());
  check_dual_path_radical(k0);
  CHECK(validate_ring_axioms(*k0).ok);

  // invertible twist: the carrier is a plain matrix ring in disguise, so the
  // radical block is all-radical entries
  auto k52 = formal_matrix_s_int(cyclic_ring(5), 2, 2, FormalVariant::K);
  auto j52 = k52->structural_jacobson();
  REQUIRE(j52);
  CHECK(j52->size() == 1);
  check_dual_path_radical(k52);

  // centrality is demanded of s
  auto m2 = matrix_ring(2, cyclic_ring(2));
  Index noncentral = m2->encode({0, 1, 0, 0});
  CHECK_THROWS_AS(formal_matrix_s(m2, noncentral, 2, FormalVariant::K), RingError);
}

TEST_CASE("twisted n x n product rule") {
  // the 2x2 twisted ring coincides with the s^2-twisted block ring
  for (int s : {0, 2}) {
    for (int64_t n : {2, 4}) {
      auto chk = verify_ms2_equals_k(cyclic_ring(n), ring_int(*cyclic_ring(n), s));
      CAPTURE(n);
      CAPTURE(s);
      CHECK(chk.ok);
    }
  }
  // column/row block products
  auto disp = verify_ms_displays(cyclic_ring(2), 0, 3);
  CHECK(disp.ok);
  CHECK(disp.checked == 16);  // 4 columns x 4 rows over Z2^2
  auto disp4 = verify_ms_displays(cyclic_ring(4), ring_int(*cyclic_ring(4), 2), 3);
  CHECK(disp4.ok);
  CHECK(disp4.checked == 256);

  // s = 0 reduces every twisted term through index 3 to zero
  Limits lim;
  lim.construct_cap = 1 << 20;
  auto ms30 = formal_matrix_s_int(cyclic_ring(2), 0, 3, FormalVariant::Mn, lim);
  std::vector<Index> e13(9, 0), e31(9, 0);
  e13[2] = 1;
  e31[6] = 1;
  CHECK(ms30->mul(ms30->encode(e13), ms30->encode(e31)) == ms30->zero());
  check_dual_path_radical(ms30);
}

TEST_CASE("group tables") {
  std::string issue;
  for (int64_t n : {1, 2, 3, 4, 6}) {
    CHECK(validate_group_table(group_cyclic(n), &issue));
    CHECK(validate_group_table(group_dihedral(n), &issue));
  }
  CHECK(validate_group_table(group_s3(), &issue));
  CHECK_FALSE(group_s3().abelian);
  CHECK(group_dihedral(2).abelian);   // Klein four group
  CHECK_FALSE(group_dihedral(3).abelian);

  // C(2) x C(3) is cyclic of order 6: same multiset of element orders
  auto prod = group_product(group_cyclic(2), group_cyclic(3));
  CHECK(validate_group_table(prod, &issue));
  CHECK(order_multiset(prod) == order_multiset(group_cyclic(6)));
  // C(2) x C(2) is not
  auto klein = group_product(group_cyclic(2), group_cyclic(2));
  CHECK(order_multiset(klein) != order_multiset(group_cyclic(4)));
  // D(3) and S3 agree as well
  CHECK(order_multiset(group_dihedral(3)) == order_multiset(group_s3()));
}

TEST_CASE("group rings and augmentation data") {
  auto gr22 = group_ring(cyclic_ring(2), group_cyclic(2));
  CHECK(gr22.ring->order() == 4);
  CHECK(gr22.delta.indices() == std::vector<Index>{0, 3});
  CHECK(gr22.delta_nilpotent);
  CHECK(gr22.delta_index == 2);
  check_dual_path_radical(gr22.ring);

  auto gr32 = group_ring(cyclic_ring(3), group_cyclic(2));
  CHECK(classify_ring(*gr32.ring).is_true("potent"));
  CHECK_FALSE(gr32.delta_nilpotent);  // 2 is invertible mod 3
  check_dual_path_radical(gr32.ring);

  auto gr42 = group_ring(cyclic_ring(4), group_cyclic(2));
  CHECK(gr42.delta_nilpotent);
  CHECK(gr42.delta_index == 3);
  check_dual_path_radical(gr42.ring);

  auto grs3 = group_ring(cyclic_ring(2), group_s3());
  CHECK(grs3.ring->order() == 64);
  CHECK(jacobson_brute(*grs3.ring).size() == 2);

  check_dual_path_radical(
      group_ring(cyclic_ring(2), group_product(group_cyclic(2), group_cyclic(2))).ring);
}

TEST_CASE("augmentation map is a surjective ring map with kernel delta") {
  for (auto gr : {group_ring(cyclic_ring(2), group_cyclic(2)),
                  group_ring(cyclic_ring(4), group_cyclic(2)),
                  group_ring(cyclic_ring(3), group_cyclic(3))}) {
    auto rg = gr.ring;
    RingPtr base = rg->base();
    std::vector<bool> hit(static_cast<size_t>(base->order()), false);
    for (Index x = 0; x < rg->order(); ++x) {
      hit[rg->augmentation(x)] = true;
      CHECK((rg->augmentation(x) == base->zero()) == gr.delta.contains(x));
    }
    for (bool h : hit) CHECK(h);
    for (Index x = 0; x < rg->order(); ++x) {
      for (Index y = 0; y < rg->order(); ++y) {
        CHECK(rg->augmentation(rg->mul(x, y)) ==
              base->mul(rg->augmentation(x), rg->augmentation(y)));
        CHECK(rg->augmentation(rg->add(x, y)) ==
              base->add(rg->augmentation(x), rg->augmentation(y)));
      }
    }
    // RG / delta matches the base ring elementwise through the projection
    auto quo = quotient_ring(rg, gr.delta);
    CHECK(quo.ring->order() == base->order());
    for (Index c = 0; c < quo.ring->order(); ++c) {
      for (Index d = 0; d < quo.ring->order(); ++d) {
        Index pc = rg->augmentation(quo.ring->rep(c));
        Index pd = rg->augmentation(quo.ring->rep(d));
        CHECK(rg->augmentation(quo.ring->rep(quo.ring->mul(c, d))) == base->mul(pc, pd));
        CHECK(rg->augmentation(quo.ring->rep(quo.ring->add(c, d))) == base->add(pc, pd));
      }
    }
  }
}

TEST_CASE("endomorphism rings") {
  auto e42 = endo_ring(AbelianGroupSpec{{4, 2}});
  CHECK(e42->order() == 32);
  auto rep = endo_oracle_check(*e42);
  CHECK(rep.ok);
  CHECK(rep.oracle_size == 32);
  CHECK(rep.candidate_tuples == 64);
  CHECK(rep.ops_exhaustive);
  check_dual_path_radical(e42);

  auto e22 = endo_ring(AbelianGroupSpec{{2, 2}});
  CHECK(e22->order() == 16);
  CHECK(endo_oracle_check(*e22).ok);
  check_dual_path_radical(e22);

  for (int64_t n : {2, 3, 4, 6, 8, 12}) {
    auto en = endo_ring(AbelianGroupSpec{{n}});
    CHECK(en->order() == n);
    CHECK(endo_oracle_check(*en).ok);
  }

  auto e93 = endo_ring(AbelianGroupSpec{{9, 3}});
  CHECK(e93->order() == 243);
  CHECK(endo_oracle_check(*e93).ok);
  check_dual_path_radical(e93);

  // mixed invariants run through the per-prime radical rule as well
  check_dual_path_radical(endo_ring(AbelianGroupSpec{{12, 2}}));
  check_dual_path_radical(endo_ring(AbelianGroupSpec{{8, 2}}));
  check_dual_path_radical(endo_ring(AbelianGroupSpec{{2, 4}}));  // unsorted invariants
  CHECK(validate_ring_axioms(*e42).ok);
}

TEST_CASE("idealization") {
  auto z4 = cyclic_ring(4);
  auto i = ideal_closure(*z4, {2});
  auto idz = idealization(z4, i);
  CHECK(idz->order() == 8);
  // (0, 2)^2 = 0
  auto ring = std::dynamic_pointer_cast<const IdealizationRing>(idz);
  REQUIRE(ring);
  Index x = ring->encode(0, 1);
  CHECK(ring->mul(x, x) == ring->zero());
  check_dual_path_radical(idz);

  auto z9 = cyclic_ring(9);
  auto idz9 = idealization(z9, ideal_closure(*z9, {3}));
  CHECK(idz9->order() == 27);
  auto j9 = jacobson_radical(*idz9);
  CHECK(j9.ideal.count() == 9);  // {(r, i) : r in 3Z9}
  check_dual_path_radical(idz9);

  // R idealized by the zero ideal is R again
  auto idz0 = idealization(z4, ideal_closure(*z4, {0}));
  CHECK(idz0->order() == 4);
  for (Index a = 0; a < 4; ++a) {
    for (Index b = 0; b < 4; ++b) CHECK(idz0->mul(a, b) == z4->mul(a, b));
  }
  // the square-zero part: quotient by {0} x I gives back R
  std::vector<Index> corner;
  auto full = std::dynamic_pointer_cast<const IdealizationRing>(idz);
  for (int p = 0; p < 2; ++p) corner.push_back(full->encode(0, p));
  Subset corner_set = Subset::of(*idz, SubsetKind::Ideal, corner);
  CHECK(is_two_sided_ideal(*idz, corner_set));
  CHECK(ideal_nilpotency_index(*idz, corner_set) == 2);
  auto quo = quotient_ring(idz, corner_set);
  CHECK(quo.ring->order() == 4);

  Subset bogus = Subset::of(*z4, SubsetKind::Plain, {0, 1});
  CHECK_THROWS_AS(idealization(z4, bogus), RingError);
}

TEST_CASE("tensor products of algebra presentations") {
  auto t = tensor_product_algebra(alg_galois(2, 2), alg_galois(2, 2));
  CHECK(t->order() == 16);
  auto sets = units_idempotents_nilpotents(*t);
  CHECK(sets.idempotents.count() == 4);
  CHECK(classify_ring(*t).is_true("potent"));

  // tensoring with the rank-one algebra changes nothing
  auto a = alg_galois(2, 2);
  auto t1 = tensor_product_algebra(a, alg_cyclic(2));
  auto plain = algebra_ring(a);
  CHECK(t1->order() == plain->order());
  for (Index x = 0; x < t1->order(); ++x) {
    for (Index y = 0; y < t1->order(); ++y) {
      CHECK(t1->mul(x, y) == plain->mul(x, y));
    }
  }

  // dual numbers over Z4 tensored with Z4: radical holds 2 and t
  auto dn = tensor_product_algebra(alg_dual_numbers(4), alg_cyclic(4));
  CHECK(dn->order() == 16);
  auto jd = jacobson_radical(*dn);
  auto ring = std::dynamic_pointer_cast<const AlgebraRing>(dn);
  CHECK(jd.ideal.contains(ring->encode({2, 0})));
  CHECK(jd.ideal.contains(ring->encode({0, 1})));
  CHECK(jd.ideal.count() == 8);

  CHECK_THROWS_AS(tensor_product_algebra(alg_cyclic(2), alg_cyclic(3)), RingError);
  CHECK(validate_ring_axioms(*algebra_ring(alg_upper_tri2(2))).ok);
}

TEST_CASE("morita context rings") {
  auto z4 = cyclic_ring(4);
  auto ideal = ideal_closure(*z4, {2});
  MoritaData d = morita_from_ideal(z4, ideal);
  CHECK_FALSE(validate_morita(d).has_value());
  auto res = morita_ring(d);
  CHECK(res.ring->order() == 64);
  CHECK(res.trace_mn == std::vector<Index>{0});
  CHECK(res.mn_nilpotency == 1);
  check_dual_path_radical(res.ring);
  CHECK(validate_ring_axioms(*res.ring).ok);

  // zero bimodules give the direct product
  MoritaData tri = morita_upper_triangular(cyclic_ring(2));
  auto tri_res = morita_ring(tri);
  CHECK(tri_res.ring->order() == 8);
  check_dual_path_radical(tri_res.ring);

  // both modules trivial: the block ring is A x B elementwise
  MoritaData split = morita_upper_triangular(cyclic_ring(6));
  split.M = split.N;  // N is already the zero module
  split.phi.assign(1, split.A->zero());
  split.psi.assign(1, split.B->zero());
  auto split_res = morita_ring(split);
  CHECK(split_res.ring->order() == 36);
  auto prod = direct_product({split.A, split.B});
  for (Index x = 0; x < 36; ++x) {
    for (Index y = 0; y < 36; ++y) {
      CHECK(split_res.ring->mul(x, y) == prod->mul(x, y));
      CHECK(split_res.ring->add(x, y) == prod->add(x, y));
    }
  }

  // a deliberately unbalanced pairing is rejected with a witness
  MoritaData broken = morita_from_ideal(z4, ideal);
  broken.phi[broken.phi.size() - 1] = 1;  // phi(2,2) := 1 breaks bilinearity
  auto issue = validate_morita(broken);
  REQUIRE(issue.has_value());
  CHECK_FALSE(issue->at.empty());
  CHECK_THROWS_AS(morita_ring(broken), RingError);

  // building the carrier anyway trips the axiom sweep on a concrete triple
  auto raw = std::make_shared<MoritaRing>(broken);
  auto rep = validate_ring_axioms(*raw);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.first_violation.has_value());
  // the unbalanced pairing surfaces as a broken product law on a triple
  CHECK(rep.first_violation->axiom.find("associates") != std::string::npos);
  CHECK(rep.first_violation->at.size() == 3);
}

TEST_CASE("data file loaders") {
  const char* alg_path = "test_alg_dual2.txt";
  {
    std::ofstream out(alg_path);
    out << "# dual numbers over Z2\n"
        << "algebra\n"
        << "modulus = 2\n"
        << "rank = 2\n"
        << "unit = 1 0\n"
        << "sc = 1 0\n"
        << "sc = 0 1\n"
        << "sc = 0 1\n"
        << "sc = 0 0\n";
  }
  auto pres = alg_from_file(alg_path);
  CHECK(pres.rank == 2);
  auto ring = algebra_ring(pres);
  CHECK(ring->order() == 4);
  auto builtin = algebra_ring(alg_dual_numbers(2));
  for (Index x = 0; x < 4; ++x) {
    for (Index y = 0; y < 4; ++y) CHECK(ring->mul(x, y) == builtin->mul(x, y));
  }
  std::remove(alg_path);

  const char* mor_path = "test_morita_tri.txt";
  {
    // T(Z2, Z2, Z2) as explicit tables
    std::ofstream out(mor_path);
    out << "morita\n"
        << "A = Z(2)\n"
        << "B = Z(2)\n"
        << "M.order = 2\n"
        << "M.add = 0 1 1 0\n"
        << "M.neg = 0 1\n"
        << "M.left = 0 0 0 1\n"
        << "M.right = 0 0 0 1\n"
        << "N.order = 1\n"
        << "N.add = 0\n"
        << "N.neg = 0\n"
        << "N.left = 0 0\n"
        << "N.right = 0 0\n"
        << "phi = 0 0\n"
        << "psi = 0 0\n";
  }
  MoritaData file_data = morita_from_file(mor_path);
  CHECK_FALSE(validate_morita(file_data).has_value());
  auto file_ring = morita_ring(file_data);
  CHECK(file_ring.ring->order() == 8);
  auto t2 = matrix_ring(2, cyclic_ring(2), MatrixShape::UpperTriangular);
  CHECK(uniform_period(*file_ring.ring).n == uniform_period(*t2).n);
  CHECK(uniform_period(*file_ring.ring).k == uniform_period(*t2).k);
  std::remove(mor_path);

  CHECK_THROWS_AS(alg_from_file("does_not_exist.txt"), RingError);
}

TEST_CASE("builder outputs satisfy the ring axioms") {
  std::vector<RingPtr> pool = {
      cyclic_ring(6),
      galois_field(3, 2),
      matrix_ring(2, cyclic_ring(6)),
      matrix_ring(3, cyclic_ring(2), MatrixShape::UpperTriangular),
      formal_matrix_s_int(cyclic_ring(4), 2, 2, FormalVariant::K),
      formal_matrix_s_int(cyclic_ring(2), 0, 3, FormalVariant::Mn),
      group_ring(cyclic_ring(3), group_cyclic(3)).ring,
      group_ring(cyclic_ring(2), group_s3()).ring,
      endo_ring(AbelianGroupSpec{{4, 2}}),
      [] {
        auto z9 = cyclic_ring(9);
        return idealization(z9, ideal_closure(*z9, {3}));
      }(),
      tensor_product_algebra(alg_galois(2, 2), alg_galois(2, 2)),
      direct_product({cyclic_ring(4), cyclic_ring(3)}),
  };
  Limits lim;
  lim.axiom_cap = 256;  // larger carriers run the sampled sweep
  for (const auto& r : pool) {
    CAPTURE(r->provenance());
    CHECK(validate_ring_axioms(*r, lim).ok);
  }
}
