#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/ring.hpp"
#include "ringlab/util.hpp"

namespace ringlab {

// ---------------------------------------------------------------------------
// Cyclic rings and Galois fields
// ---------------------------------------------------------------------------

class CyclicRing : public FiniteRing {
 public:
  explicit CyclicRing(int64_t n);
  int64_t modulus() const { return n_; }
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override { return static_cast<Index>((a + b) % n_); }
  Index mul_impl(Index a, Index b) const override {
    return static_cast<Index>((static_cast<int64_t>(a) * b) % n_);
  }
  Index neg_impl(Index a) const override { return static_cast<Index>((n_ - a) % n_); }

 private:
  int64_t n_;
};

std::shared_ptr<const CyclicRing> cyclic_ring(int64_t n);

/// GF(p^k) built on Z_p[t] modulo the smallest monic irreducible of degree k,
/// "smallest" meaning the least integer encoding sum c_i p^i of the non-leading
/// coefficients. Element index i has base-p digits = coefficients, constant
/// term least significant.
class GaloisFieldRing : public FiniteRing {
 public:
  GaloisFieldRing(int64_t p, int k);
  int64_t p() const { return p_; }
  int k() const { return k_; }
  const std::vector<int64_t>& modulus_coeffs() const { return mod_; }
  std::string modulus_string() const;
  std::string label(Index i) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override {
    return std::vector<Index>{zero()};
  }

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  int64_t p_;
  int k_;
  std::vector<int64_t> mod_;  // f = x^k + mod_[k-1] x^{k-1} + ... + mod_[0]
};

std::shared_ptr<const GaloisFieldRing> galois_field(int64_t p, int k);

// ---------------------------------------------------------------------------
// Matrix rings
// ---------------------------------------------------------------------------

enum class MatrixShape { Full, UpperTriangular };

class MatrixRing : public FiniteRing {
 public:
  MatrixRing(int n, RingPtr base, MatrixShape shape);
  int n() const { return n_; }
  MatrixShape shape() const { return shape_; }
  const RingPtr& base() const { return base_; }
  int entry_count() const { return static_cast<int>(positions_.size()); }

  // Entries row-major over the stored positions; (i,j) outside the stored
  // triangle reads as zero.
  Index encode(const std::vector<Index>& entries) const;
  std::vector<Index> decode(Index x) const;
  Index entry(const std::vector<Index>& entries, int i, int j) const;

  std::string label(Index x) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  int pos_of(int i, int j) const { return pos_lookup_[i * n_ + j]; }

  int n_;
  RingPtr base_;
  MatrixShape shape_;
  std::vector<std::pair<int, int>> positions_;  // stored (i,j) pairs row-major
  std::vector<int> pos_lookup_;                 // (i,j) -> position or -1
  MixedRadix radix_;
};

std::shared_ptr<const MatrixRing> matrix_ring(int n, RingPtr base,
                                              MatrixShape shape = MatrixShape::Full,
                                              const Limits& lim = default_limits());

// ---------------------------------------------------------------------------
// Formal matrix rings K_s(R) and M_n(R; s)
// ---------------------------------------------------------------------------

enum class FormalVariant { K, Mn };

/// K_s(R): 2x2 entries with the twisted product
///   (a1,x1,y1,b1)(a2,x2,y2,b2) = (a1a2 + s x1y2, a1x2 + x1b2,
///                                 y1a2 + b1y2,  s y1x2 + b1b2).
/// M_n(R;s): entry rule c_ij = sum_k s^{d(i,k,j)} a_ik b_kj with
///   d(i,k,j) = 1 + [i=j] - [i=k] - [k=j].
class FormalMatrixRing : public FiniteRing {
 public:
  FormalMatrixRing(RingPtr base, Index s, int n, FormalVariant variant);
  const RingPtr& base() const { return base_; }
  Index s() const { return s_; }
  int n() const { return n_; }
  FormalVariant variant() const { return variant_; }

  Index encode(const std::vector<Index>& entries) const;
  std::vector<Index> decode(Index x) const;

  std::string label(Index x) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  RingPtr base_;
  Index s_;
  int n_;
  FormalVariant variant_;
  MixedRadix radix_;
  Index s_pow_[3];  // s^0, s^1, s^2
};

std::shared_ptr<const FormalMatrixRing> formal_matrix_s(RingPtr base, Index s_elem, int n,
                                                        FormalVariant variant,
                                                        const Limits& lim = default_limits());
std::shared_ptr<const FormalMatrixRing> formal_matrix_s_int(RingPtr base, int64_t s, int n,
                                                            FormalVariant variant,
                                                            const Limits& lim = default_limits());

struct IdentityCheck {
  bool ok = true;
  int64_t checked = 0;
  std::string issue;
};

/// M_2(R;s) and K_{s^2}(R) share the carrier indexing; compares both ring
/// operations elementwise.
IdentityCheck verify_ms2_equals_k(RingPtr base, Index s, const Limits& lim = default_limits());

/// Checks the block products of M_n(R;s): a column (entries in column n)
/// times a row gives s^2 on the diagonal and s off it, and a row times a
/// column lands in s^2 R. Runs over all column/row pairs.
IdentityCheck verify_ms_displays(RingPtr base, Index s, int n);

// ---------------------------------------------------------------------------
// Groups and group rings
// ---------------------------------------------------------------------------

struct GroupTable {
  int64_t order = 0;
  int identity = 0;
  std::vector<int> mul;      // order x order, row-major
  std::vector<int> inverse;  // order
  std::vector<std::string> labels;
  bool abelian = false;
  std::string provenance;

  int compose(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
};

GroupTable group_cyclic(int64_t n);
GroupTable group_dihedral(int64_t n);  // order 2n
GroupTable group_s3();
GroupTable group_product(const GroupTable& a, const GroupTable& b);
bool validate_group_table(const GroupTable& g, std::string* issue = nullptr);
std::vector<int> group_element_orders(const GroupTable& g);

class GroupRing : public FiniteRing {
 public:
  GroupRing(RingPtr base, GroupTable group);
  const RingPtr& base() const { return base_; }
  const GroupTable& group() const { return group_; }

  Index encode(const std::vector<Index>& coeffs) const;
  std::vector<Index> decode(Index x) const;
  Index augmentation(Index x) const;  // coefficient sum, in the base ring

  std::string label(Index x) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  RingPtr base_;
  GroupTable group_;
  MixedRadix radix_;
};

struct GroupRingResult {
  std::shared_ptr<const GroupRing> ring;
  Subset delta;          // kernel of the augmentation map
  bool delta_nilpotent = false;
  int delta_index = 0;   // least l with Delta^l = 0, or 0 when not nilpotent
};

GroupRingResult group_ring(RingPtr base, const GroupTable& g,
                           const Limits& lim = default_limits());

// ---------------------------------------------------------------------------
// Endomorphism rings of finite abelian groups
// ---------------------------------------------------------------------------

struct AbelianGroupSpec {
  std::vector<int64_t> invariants;  // cyclic orders d_i, each >= 2

  int64_t order() const;
  std::string provenance() const;  // "C(4)+C(2)"
  // p -> exponents k_j with multiplicities, as {k, count} sorted by k
  std::map<int64_t, std::map<int, int>> primary_decomposition() const;
  AbelianGroupSpec primary_component(int64_t p) const;
};

/// E(G) as constrained integer matrices: entry (i,j) is a multiple of
/// d_i/gcd(d_i,d_j) in Z_{d_i}, stored as the multiplier digit in
/// [0, gcd(d_i,d_j)). Composition is the matrix product with row-wise moduli.
class EndoRing : public FiniteRing {
 public:
  explicit EndoRing(AbelianGroupSpec spec);
  const AbelianGroupSpec& spec() const { return spec_; }
  int rank() const { return static_cast<int>(spec_.invariants.size()); }
  int64_t gcd_at(int i, int j) const { return gcds_[i * rank() + j]; }

  Index encode(const std::vector<int64_t>& digits) const;
  std::vector<int64_t> decode_digits(Index x) const;
  // digit -> actual value a_ij * (d_i / g_ij) in Z_{d_i}
  int64_t value_at(const std::vector<int64_t>& digits, int i, int j) const;

  // Group element codec (mixed radix over the d_i) and endomorphism action.
  int64_t group_order() const { return group_radix_.size(); }
  int64_t apply(Index f, int64_t g_elem) const;

  std::string label(Index x) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  AbelianGroupSpec spec_;
  std::vector<int64_t> gcds_;
  MixedRadix radix_;        // digits
  MixedRadix group_radix_;  // group element tuples
};

std::shared_ptr<const EndoRing> endo_ring(const AbelianGroupSpec& spec,
                                          const Limits& lim = default_limits());

struct EndoOracleReport {
  bool ok = true;
  int64_t model_size = 0;
  int64_t oracle_size = 0;
  int64_t candidate_tuples = 0;  // generator-image tuples before filtering
  bool ops_exhaustive = true;
  int64_t pairs_checked = 0;
  std::string issue;
};

/// Enumerates all additive maps by generator images, filters by order
/// constraints, and compares the resulting monoid with the matrix model.
/// Operation preservation is checked on all pairs up to full_pair_cap
/// elements and on a seeded sample above.
EndoOracleReport endo_oracle_check(const EndoRing& e, int64_t full_pair_cap = 4096,
                                   uint64_t seed = 42);

// ---------------------------------------------------------------------------
// Idealization (trivial extension) R ∝ I
// ---------------------------------------------------------------------------

class IdealizationRing : public FiniteRing {
 public:
  IdealizationRing(RingPtr base, std::vector<Index> ideal_elems);
  const RingPtr& base() const { return base_; }
  const std::vector<Index>& ideal_elems() const { return ideal_; }

  Index encode(Index r, int ideal_pos) const;
  std::pair<Index, int> decode(Index x) const;

  std::string label(Index x) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  RingPtr base_;
  std::vector<Index> ideal_;       // sorted element indices of I
  std::vector<int> pos_of_;        // base index -> position in ideal_, or -1
};

std::shared_ptr<const IdealizationRing> idealization(RingPtr base, const Subset& ideal,
                                                     const Limits& lim = default_limits());

// ---------------------------------------------------------------------------
// Finite algebras over Z_c and tensor products
// ---------------------------------------------------------------------------

struct AlgebraPresentation {
  int64_t modulus = 0;  // algebra over Z_c
  int rank = 0;
  std::vector<int64_t> unit;               // coordinates of 1, length rank
  std::vector<std::vector<int64_t>> sc;    // sc[i*rank+j] = coords of e_i e_j
  std::vector<std::string> basis_labels;
  std::string name;

  std::vector<int64_t> mul_coords(const std::vector<int64_t>& x,
                                  const std::vector<int64_t>& y) const;
};

AlgebraPresentation alg_cyclic(int64_t c);          // Z_c itself, rank 1
AlgebraPresentation alg_galois(int64_t p, int k);   // GF(p,k) over Z_p
AlgebraPresentation alg_dual_numbers(int64_t c);    // Z_c[t]/(t^2)
AlgebraPresentation alg_upper_tri2(int64_t c);      // 2x2 upper triangular over Z_c
AlgebraPresentation alg_from_file(const std::string& path);
AlgebraPresentation tensor_presentation(const AlgebraPresentation& a,
                                        const AlgebraPresentation& b);
void validate_algebra(const AlgebraPresentation& a);  // throws RingError

class AlgebraRing : public FiniteRing {
 public:
  explicit AlgebraRing(AlgebraPresentation pres);
  const AlgebraPresentation& presentation() const { return pres_; }

  Index encode(const std::vector<int64_t>& coords) const;
  std::vector<int64_t> decode_coords(Index x) const;

  std::string label(Index x) const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  AlgebraPresentation pres_;
  MixedRadix radix_;
};

std::shared_ptr<const AlgebraRing> algebra_ring(const AlgebraPresentation& pres,
                                                const Limits& lim = default_limits());
std::shared_ptr<const AlgebraRing> tensor_product_algebra(const AlgebraPresentation& a,
                                                          const AlgebraPresentation& b,
                                                          const Limits& lim = default_limits());

// ---------------------------------------------------------------------------
// Morita context rings
// ---------------------------------------------------------------------------

struct BimoduleTable {
  int64_t order = 0;
  Index zero = 0;
  std::vector<Index> add;    // order x order
  std::vector<Index> neg;    // order
  std::vector<Index> left;   // |left ring| x order -> module
  std::vector<Index> right;  // order x |right ring| -> module
  std::vector<std::string> labels;

  Index plus(Index a, Index b) const { return add[static_cast<size_t>(a) * order + b]; }
  Index lact(Index r, Index m) const { return left[static_cast<size_t>(r) * order + m]; }
  Index ract(Index m, Index s) const {
    return right[static_cast<size_t>(m) * right_cols + s];
  }
  int64_t right_cols = 0;  // |right ring|
};

struct MoritaData {
  RingPtr A, B;
  BimoduleTable M;  // (A,B)-bimodule
  BimoduleTable N;  // (B,A)-bimodule
  std::vector<Index> phi;  // |M| x |N| -> A
  std::vector<Index> psi;  // |N| x |M| -> B
  std::string name = "MOR";

  Index pairing_phi(Index m, Index n) const { return phi[static_cast<size_t>(m) * N.order + n]; }
  Index pairing_psi(Index n, Index m) const { return psi[static_cast<size_t>(n) * M.order + m]; }
};

struct MoritaIssue {
  std::string what;
  std::vector<int64_t> at;
};

std::optional<MoritaIssue> validate_morita(const MoritaData& d);

struct MoritaBlock {
  Index a, m, n, b;
};

class MoritaRing : public FiniteRing {
 public:
  explicit MoritaRing(MoritaData data);
  const MoritaData& data() const { return data_; }

  Index encode(const MoritaBlock& e) const;
  MoritaBlock decode(Index x) const;

  std::string label(Index x) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  MoritaData data_;
  MixedRadix radix_;
};

struct MoritaResult {
  std::shared_ptr<const MoritaRing> ring;
  std::vector<Index> trace_mn;  // elements of A spanned by the phi image
  std::vector<Index> trace_nm;  // elements of B spanned by the psi image
  int mn_nilpotency = 0;        // 0 when not nilpotent
  int nm_nilpotency = 0;
};

/// Validates the Morita data (throws RingError carrying the witness triple on
/// a broken pairing) and builds the 2x2 block ring with its trace ideals.
MoritaResult morita_ring(const MoritaData& d, const Limits& lim = default_limits());

// Canonical small data sets.
MoritaData morita_from_ideal(RingPtr r, const Subset& ideal);  // A=B=R, M=N=I
MoritaData morita_k_s(RingPtr r, Index s);                     // A=B=M=N=R, twisted pairings
MoritaData morita_upper_triangular(RingPtr r);                 // A=B=M=R, N=0
MoritaData morita_from_file(const std::string& path, const Limits& lim = default_limits());

// ---------------------------------------------------------------------------
// Explicit table-backed rings (user input and deliberately broken fixtures)
// ---------------------------------------------------------------------------

class TableRing : public FiniteRing {
 public:
  TableRing(int64_t order, Index zero, Index one, std::vector<Index> add,
            std::vector<Index> mul, std::vector<Index> neg,
            std::string provenance = "TABLE");

 protected:
  Index add_impl(Index a, Index b) const override {
    return add_[static_cast<size_t>(a) * order() + b];
  }
  Index mul_impl(Index a, Index b) const override {
    return mul_[static_cast<size_t>(a) * order() + b];
  }
  Index neg_impl(Index a) const override { return neg_[a]; }

 private:
  std::vector<Index> add_, mul_, neg_;
};

std::shared_ptr<const TableRing> table_ring(int64_t order, Index zero, Index one,
                                            std::vector<Index> add, std::vector<Index> mul,
                                            std::vector<Index> neg,
                                            std::string provenance = "TABLE");

}  // namespace ringlab
