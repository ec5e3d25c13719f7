#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ringlab/constructions.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line), col(col) {}
  int line;
  int col;
};

struct GroupExpr {
  enum class Kind { Cyclic, Dihedral, Sym3, Product };
  Kind kind = Kind::Cyclic;
  int64_t n = 0;
  std::vector<GroupExpr> factors;
};

struct AlgExpr {
  enum class Kind { Z, GF, DN, UT2, File };
  Kind kind = Kind::Z;
  int64_t a = 0;
  int64_t b = 0;
  std::string path;
};

struct RingExpr;
using ExprPtr = std::shared_ptr<RingExpr>;

/// Surface syntax for every construction the library provides:
///   Z(n), GF(p,k), products with "x", M(n,.), T(n,.), K(., s=int|#idx),
///   MS(n, ., s=...), GR(., group), END(C(d1)+...+C(dr)), IDZ(., gens),
///   TEN(alg, alg), QUO(., gens), MOR(@file).
struct RingExpr {
  enum class Kind { Z, GF, Product, Matrix, Tri, K, MS, GR, END, IDZ, TEN, QUO, MOR };
  Kind kind = Kind::Z;
  int64_t n = 0;  // modulus, matrix size, or GF characteristic
  int64_t k = 0;  // GF degree
  int64_t s = 0;
  bool s_is_index = false;  // "s=#i" addresses an element by index
  std::vector<ExprPtr> children;
  GroupExpr group;
  std::vector<int64_t> dlist;  // END invariants
  std::vector<int64_t> gens;   // IDZ / QUO generators
  AlgExpr alg1, alg2;
  std::string path;  // MOR data file
};

bool expr_equal(const RingExpr& a, const RingExpr& b);
bool group_equal(const GroupExpr& a, const GroupExpr& b);

ExprPtr parse_expr(const std::string& text);
std::string print_expr(const RingExpr& e);
std::string print_group(const GroupExpr& g);

/// Saturating upper bound on the carrier order, computed before anything is
/// built. MOR/ALG file nodes read the file header to size themselves.
uint64_t estimate_order(const RingExpr& e);

/// Builds the carrier; throws CapError naming the offending subexpression
/// when any node's estimate exceeds the cap.
RingPtr build_ring(const RingExpr& e, const Limits& lim = default_limits());

GroupTable build_group(const GroupExpr& g);
AlgebraPresentation build_algebra(const AlgExpr& a);

inline RingPtr build_ring(const std::string& text, const Limits& lim = default_limits()) {
  return build_ring(*parse_expr(text), lim);
}

}  // namespace ringlab
