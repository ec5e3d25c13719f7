#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ringlab/expr.hpp"

using namespace ringlab;

namespace {

void roundtrip(const std::string& s) {
  auto e = parse_expr(s);
  std::string printed = print_expr(*e);
  auto e2 = parse_expr(printed);
  CAPTURE(s);
  CAPTURE(printed);
  CHECK(expr_equal(*e, *e2));
}

// deterministic random expression generator for the round-trip property
ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  auto e = std::make_shared<RingExpr>();
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  int choice = depth <= 0 ? pick(2) : pick(10);
  switch (choice) {
    case 0:
      e->kind = RingExpr::Kind::Z;
      e->n = 2 + pick(11);
      break;
    case 1: {
      e->kind = RingExpr::Kind::GF;
      const int64_t ps[] = {2, 3, 5, 7};
      e->n = ps[pick(4)];
      e->k = 1 + pick(3);
      break;
    }
    case 2:
      e->kind = RingExpr::Kind::Product;
      e->children.push_back(random_expr(rng, depth - 1));
      e->children.push_back(random_expr(rng, depth - 1));
      if (pick(2)) e->children.push_back(random_expr(rng, depth - 1));
      break;
    case 3:
      e->kind = pick(2) ? RingExpr::Kind::Matrix : RingExpr::Kind::Tri;
      e->n = 2 + pick(2);
      e->children.push_back(random_expr(rng, depth - 1));
      break;
    case 4:
      e->kind = RingExpr::Kind::K;
      e->s = pick(4);
      e->s_is_index = pick(3) == 0;
      e->children.push_back(random_expr(rng, depth - 1));
      break;
    case 5:
      e->kind = RingExpr::Kind::MS;
      e->n = 2 + pick(2);
      e->s = pick(4);
      e->children.push_back(random_expr(rng, depth - 1));
      break;
    case 6: {
      e->kind = RingExpr::Kind::GR;
      e->children.push_back(random_expr(rng, depth - 1));
      GroupExpr g;
      int gk = pick(4);
      if (gk == 0) {
        g.kind = GroupExpr::Kind::Cyclic;
        g.n = 1 + pick(6);
      } else if (gk == 1) {
        g.kind = GroupExpr::Kind::Dihedral;
        g.n = 1 + pick(4);
      } else if (gk == 2) {
        g.kind = GroupExpr::Kind::Sym3;
      } else {
        g.kind = GroupExpr::Kind::Product;
        GroupExpr c1{GroupExpr::Kind::Cyclic, 2 + pick(3), {}};
        GroupExpr c2{GroupExpr::Kind::Cyclic, 2 + pick(3), {}};
        g.factors = {c1, c2};
      }
      e->group = g;
      break;
    }
    case 7: {
      e->kind = RingExpr::Kind::END;
      int parts = 1 + pick(3);
      for (int i = 0; i < parts; ++i) e->dlist.push_back(2 + pick(7));
      break;
    }
    case 8: {
      e->kind = pick(2) ? RingExpr::Kind::IDZ : RingExpr::Kind::QUO;
      e->children.push_back(random_expr(rng, depth - 1));
      int parts = 1 + pick(2);
      for (int i = 0; i < parts; ++i) e->gens.push_back(pick(8));
      break;
    }
    default: {
      e->kind = RingExpr::Kind::TEN;
      auto alg = [&] {
        AlgExpr a;
        int ak = pick(4);
        a.kind = ak == 0   ? AlgExpr::Kind::Z
                 : ak == 1 ? AlgExpr::Kind::GF
                 : ak == 2 ? AlgExpr::Kind::DN
                           : AlgExpr::Kind::UT2;
        a.a = ak == 1 ? 2 : 2 + pick(5);
        if (ak == 1) a.b = 1 + pick(3);
        return a;
      };
      e->alg1 = alg();
      e->alg2 = alg();
      break;
    }
  }
  return e;
}

}  // namespace

TEST_CASE("constructor syntax parses") {
  roundtrip("Z(6)");
  roundtrip("GF(2,2)");
  roundtrip("M(2, Z(4))");
  roundtrip("T(3, GF(2,1))");
  roundtrip("GR(Z(2), S3)");
  roundtrip("GR(Z(2), C(2) x C(2))");
  roundtrip("GR(GF(2,2), D(4))");
  roundtrip("K(Z(8), s=2) x Z(3)");
  roundtrip("K(Z(4), s=#2)");
  roundtrip("MS(3, Z(4), s=2)");
  roundtrip("END(C(4)+C(2))");
  roundtrip("IDZ(Z(4), 2)");
  roundtrip("QUO(Z(8), 2, 4)");
  roundtrip("TEN(GF(2,2), GF(2,2))");
  roundtrip("TEN(DN(4), UT2(4))");
  roundtrip("Z(2) x Z(3) x Z(5)");
  roundtrip("M(2, Z(2) x Z(3))");
  roundtrip("MOR(@share/example.morita)");
}

TEST_CASE("round-trip property on generated expressions") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    auto e = random_expr(rng, 3);
    std::string printed = print_expr(*e);
    CAPTURE(printed);
    auto back = parse_expr(printed);
    CHECK(expr_equal(*e, *back));
  }
}

TEST_CASE("size estimates precede construction") {
  CHECK(estimate_order(*parse_expr("M(2, Z(4))")) == 256);
  CHECK(estimate_order(*parse_expr("GR(Z(2), S3)")) == 64);
  CHECK(estimate_order(*parse_expr("END(C(4)+C(2))")) == 32);
  CHECK(estimate_order(*parse_expr("MS(3, Z(4), s=2)")) == 262144);
  CHECK(estimate_order(*parse_expr("GR(Z(16), C(16))")) == kOrderSaturated);

  Limits tight;
  tight.construct_cap = 100;
  try {
    build_ring("Z(3) x M(2, Z(4))", tight);
    FAIL("cap should have triggered");
  } catch (const CapError& e) {
    // the error names the offending subexpression
    CHECK(std::string(e.what()).find("M(2, Z(4))") != std::string::npos);
  }
}

TEST_CASE("built carriers match their expressions") {
  CHECK(build_ring("Z(6)")->order() == 6);
  CHECK(build_ring("M(2, Z(4))")->order() == 256);
  CHECK(build_ring("M(2, Z(4))")->provenance() == "M(2, Z(4))");
  CHECK(build_ring("GR(Z(2), S3)")->order() == 64);
  CHECK(build_ring("END(C(4)+C(2))")->order() == 32);
  CHECK(build_ring("QUO(Z(8), 2)")->order() == 2);
  CHECK(build_ring("IDZ(Z(4), 2)")->order() == 8);
  CHECK(build_ring("TEN(GF(2,2), GF(2,2))")->order() == 16);
  CHECK(build_ring("K(Z(2), s=0)")->order() == 16);
  CHECK(build_ring("Z(4) x Z(3)")->order() == 12);
  // s by element index
  CHECK(build_ring("K(Z(4), s=#2)")->order() == 256);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_expr("M(2, W(4))");
    FAIL("should not parse");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 6);
  }
  try {
    parse_expr("Z(4) x");
    FAIL("should not parse");
  } catch (const ParseError& e) {
    CHECK(e.col == 7);
  }
  CHECK_THROWS_AS(parse_expr("Z(4) Z(6)"), ParseError);
  CHECK_THROWS_AS(parse_expr("END(D(3))"), ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
}
