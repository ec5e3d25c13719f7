#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringlab {

using Index = int32_t;

struct Limits {
  int64_t axiom_cap = 512;       // exhaustive axiom sweeps up to this order
  int64_t classify_cap = 10000;  // exhaustive classification cap
  int64_t construct_cap = 65536; // largest carrier a builder will create
  uint64_t seed = 42;            // drives sampling above the axiom cap
};

const Limits& default_limits();

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a requested carrier would exceed the configured size cap.
class CapError : public RingError {
 public:
  using RingError::RingError;
};

/// A finite unital ring presented through index-based total operations on
/// the carrier 0..order-1. Instances are immutable once built; structured
/// carriers compute operations on demand and memoise small orders into flat
/// tables, rather than materialising quadratic tables for every order.
class FiniteRing {
 public:
  virtual ~FiniteRing() = default;

  int64_t order() const { return order_; }
  Index zero() const { return zero_; }
  Index one() const { return one_; }
  int id() const { return id_; }
  const std::string& provenance() const { return provenance_; }

  Index add(Index a, Index b) const {
    return tables_built_ ? add_tab_[static_cast<size_t>(a) * order_ + b]
                         : add_impl(a, b);
  }
  Index mul(Index a, Index b) const {
    return tables_built_ ? mul_tab_[static_cast<size_t>(a) * order_ + b]
                         : mul_impl(a, b);
  }
  Index neg(Index a) const {
    return tables_built_ ? neg_tab_[a] : neg_impl(a);
  }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }
  Index pow(Index x, uint64_t e) const;

  virtual std::string label(Index i) const { return std::to_string(i); }

  /// The Jacobson radical as the construction knows it, when it does.
  /// Builders with a known radical shape override this; everyone else gets
  /// the brute-force path.
  virtual std::optional<std::vector<Index>> structural_jacobson() const {
    return std::nullopt;
  }

  // Fills the flat operation tables; called by builders once the object is
  // fully constructed, and a no-op above the memoisation threshold.
  void init_tables();

 protected:
  FiniteRing(int64_t order, Index zero, Index one, std::string provenance);

  virtual Index add_impl(Index a, Index b) const = 0;
  virtual Index mul_impl(Index a, Index b) const = 0;
  virtual Index neg_impl(Index a) const = 0;

 private:
  int64_t order_;
  Index zero_;
  Index one_;
  std::string provenance_;
  int id_;
  bool tables_built_ = false;
  std::vector<uint16_t> add_tab_, mul_tab_;
  std::vector<Index> neg_tab_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

struct ElementRef {
  int ring_id = -1;
  Index index = 0;
};

enum class SubsetKind { Plain, Ideal, Radical, Nilpotents, Units, Idempotents, Center };

class Subset {
 public:
  Subset(const FiniteRing& r, SubsetKind kind);
  static Subset of(const FiniteRing& r, SubsetKind kind, const std::vector<Index>& elems);

  bool contains(Index i) const { return bits_[static_cast<size_t>(i)]; }
  void insert(Index i) { bits_[static_cast<size_t>(i)] = true; }
  int64_t count() const;
  std::vector<Index> indices() const;
  int64_t carrier_order() const { return static_cast<int64_t>(bits_.size()); }

  bool operator==(const Subset& o) const {
    return ring_id == o.ring_id && bits_ == o.bits_;
  }

  SubsetKind kind;
  int ring_id;

 private:
  std::vector<bool> bits_;
};

struct CharData {
  int64_t characteristic = 0;
  std::vector<int64_t> pi;  // distinct prime divisors of the characteristic
};

struct AxiomIssue {
  std::string axiom;
  std::vector<Index> at;
};

struct AxiomReport {
  bool ok = true;
  bool exhaustive = true;
  int64_t cases_checked = 0;
  std::optional<AxiomIssue> first_violation;
};

/// Exhaustive ring-axiom sweep up to lim.axiom_cap, seeded sampling above.
AxiomReport validate_ring_axioms(const FiniteRing& r, const Limits& lim = default_limits());

CharData characteristic(const FiniteRing& r);

/// t |-> t*1 for integer t (negative allowed).
Index ring_int(const FiniteRing& r, int64_t t);

struct ElementSets {
  Subset units;
  Subset idempotents;
  Subset nilpotents;
  std::vector<int> nil_index;  // In(r); 0 when r is not nilpotent
  int ring_nil_index = 1;      // max In over nilpotents, with In(0) = 1
};

// Units are detected through injectivity of y |-> u*y; on a finite carrier
// that already forces a two-sided inverse.
ElementSets units_idempotents_nilpotents(const FiniteRing& r);

Subset center(const FiniteRing& r);

struct RadicalData {
  Subset ideal;
  int nilpotency_index = 1;  // least l with J^l = {0}
  bool structural = false;   // true when a registered fast path supplied J
};

/// J(R) with its nilpotency index. Uses the construction's structural shape
/// when registered, the quasi-regularity scan otherwise.
RadicalData jacobson_radical(const FiniteRing& r);

/// The oracle path: candidates restricted to nilpotents, then the full
/// "1 - rx is a unit for every r" scan. Never consults structural shapes.
std::vector<Index> jacobson_brute(const FiniteRing& r);

bool is_two_sided_ideal(const FiniteRing& r, const Subset& s);
Subset ideal_closure(const FiniteRing& r, const std::vector<Index>& gens);

// Additive closure helpers shared by the radical and harness code.
Subset additive_span(const FiniteRing& r, const std::vector<Index>& gens);
Subset subset_product(const FiniteRing& r, const Subset& a, const Subset& b);
int ideal_nilpotency_index(const FiniteRing& r, const Subset& ideal, int max_power = 64);

class QuotientRing;

struct QuotientData {
  std::shared_ptr<const QuotientRing> ring;
  std::vector<Index> projection;  // base index -> quotient index
};

/// Quotient by a verified two-sided ideal; canonical coset representative is
/// the least base index, so outputs are reproducible across runs.
QuotientData quotient_ring(RingPtr r, const Subset& ideal);

class QuotientRing : public FiniteRing {
 public:
  QuotientRing(RingPtr base, std::vector<Index> reps, std::vector<Index> proj);

  std::string label(Index i) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

  const RingPtr& base() const { return base_; }
  Index rep(Index i) const { return reps_[i]; }
  Index project(Index base_index) const { return proj_[base_index]; }

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  RingPtr base_;
  std::vector<Index> reps_;
  std::vector<Index> proj_;
};

class ProductRing : public FiniteRing {
 public:
  explicit ProductRing(std::vector<RingPtr> factors);

  std::string label(Index i) const override;
  std::optional<std::vector<Index>> structural_jacobson() const override;

  const std::vector<RingPtr>& factors() const { return factors_; }
  Index encode(const std::vector<Index>& comps) const;
  std::vector<Index> decode(Index i) const;

 protected:
  Index add_impl(Index a, Index b) const override;
  Index mul_impl(Index a, Index b) const override;
  Index neg_impl(Index a) const override;

 private:
  std::vector<RingPtr> factors_;
  std::vector<int64_t> bases_;
  std::vector<int64_t> strides_;
};

RingPtr direct_product(const std::vector<RingPtr>& factors,
                       const Limits& lim = default_limits());

}  // namespace ringlab
