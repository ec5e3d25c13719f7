#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/ring.hpp"

namespace ringlab {

/// Minimal exponents with x^{n+k} = x^n; n is the index, k the period.
struct PeriodData {
  int n = 1;
  int k = 1;
};

PeriodData element_period(const FiniteRing& r, Index x);

/// Uniform exponents valid for every element at once: n = max of the element
/// indices, k = lcm of the element periods (lexicographically least pair,
/// n minimised first).
PeriodData uniform_period(const FiniteRing& r);

struct Decomposition {
  ElementRef a;           // nilpotent part
  ElementRef b;           // potent part
  int b_potency = 2;      // m with b^m = b
  int a_nil_index = 1;    // a^idx = 0
  bool commute = false;
  bool annihilate = false;  // ab = ba = 0
};

/// x = a + b with b = x^{N+1} for the least multiple N of k with N >= n.
/// Certifies b^{k+1} = b, a^n = 0, ab = ba = 0 before returning.
Decomposition potent_nilpotent_decompose(const FiniteRing& r, Index x);

struct RemarkReport {
  PeriodData uniform;
  bool char_clause_applicable = false;  // k = 2
  bool char_clause_pass = true;         // characteristic divides 2^n * 3
  int64_t char_divisor = 0;
  bool parity_clause_applicable = false;  // k odd gives opposite-parity exponents
  bool parity_clause_pass = true;         // then the ring must be potent
  bool ok = true;
};

RemarkReport check_remark_2_2(const FiniteRing& r);

struct ElementReport {
  Index x = 0;
  bool nilpotent = false;
  int nil_index = 0;  // In(x), 0 when not nilpotent
  bool idempotent = false;
  bool tripotent = false;
  std::optional<int> m_potent;  // least m >= 2 with x^m = x
  bool unit = false;
  int unit_order = 0;
  PeriodData period;
  bool in_jacobson = false;
  bool central = false;
  std::string label;
};

ElementReport classify_element(const FiniteRing& r, Index x);

enum class FlagStatus { True, False, TriviallyTrueFinite, Skipped };

struct Flag {
  FlagStatus status = FlagStatus::Skipped;
  std::optional<Index> witness;  // counterwitness element for False
  std::optional<int> param;      // minimal m for the m-parameterised flags
  std::string note;
};

struct RingProfile {
  // insertion-ordered flag list for stable reports
  std::vector<std::pair<std::string, Flag>> flags;
  PeriodData uniform;
  int64_t order = 0;
  CharData chars;
  int64_t units = 0, idempotents = 0, nilpotents = 0, radical_size = 0;
  int in_ring = 1;  // In(R)

  const Flag* find(const std::string& name) const;
  bool is_true(const std::string& name) const;  // True or TriviallyTrueFinite
};

/// Evaluates the whole predicate zoo by exhaustive search with witnesses.
/// The flags {periodic, weakly_periodic, pi_UU, semi_clean,
/// strongly_pi_regular} are constant-true on finite carriers and are labelled
/// that way instead of being "verified" by a vacuous search.
RingProfile classify_ring(const FiniteRing& r, const Limits& lim = default_limits());

struct MNilCleanResult {
  bool ok = true;
  std::optional<Index> counterwitness;
  // witness per element: (b, a) with x = a + b, b^m = b, a nilpotent
  std::vector<std::pair<Index, Index>> witness;
};

/// Strong variant: the two parts must commute. Candidate potent parts are
/// scanned in index order, first hit wins.
MNilCleanResult strongly_m_nil_clean(const FiniteRing& r, int m);
MNilCleanResult m_nil_clean(const FiniteRing& r, int m);  // no commutation

struct MNilCleanVerdict {
  int m = 2;
  bool ok = true;
  std::optional<Index> counterwitness;
};

/// Verdicts for several m over one carrier, sharing the nilpotent scan.
std::vector<MNilCleanVerdict> strongly_m_nil_clean_sweep(const FiniteRing& r,
                                                         const std::vector<int>& ms);

std::vector<bool> nilpotent_elements(const FiniteRing& r);
int ring_nilpotency_degree(const FiniteRing& r);  // In(R), with In(0) = 1

struct WeaklyPeriodicWitness {
  std::vector<Index> potent_part;
  std::vector<Index> nilpotent_part;
  std::vector<int> potency_exponent;  // minimal m with p^m = p
};

/// x = p + q with q nilpotent and p potent, no commutation required. The
/// nilpotent part is scanned in index order; on finite carriers a witness
/// always exists, and the map itself is the deliverable.
WeaklyPeriodicWitness weakly_periodic_witness(const FiniteRing& r);

struct QBound {
  int64_t q = 0;
  std::vector<int64_t> field_orders;
  int n = 1;
  bool verified = false;
  int64_t matrices_checked = 0;
  std::optional<Index> violation;
};

/// Splits R/J into fields through its primitive idempotents, forms
/// q = lcm(|F|^i - 1 : fields F, 1 <= i <= n) + 1 and then checks
/// A^q - A nilpotent for every A in M_n(R). Requires an abelian input.
QBound q_bound(RingPtr r, int n, const Limits& lim = default_limits());

enum class PotentMode { Tripotent, Idempotent };

struct PotentSplit {
  bool ok = true;
  std::optional<Index> failure;    // matrix with no decomposition
  std::vector<std::pair<Index, Index>> witness;  // (t, p) per element
};

/// Every matrix as tripotent + potent (or idempotent + potent when 3 is a
/// unit in the base). The constrained part is scanned in index order.
PotentSplit tripotent_potent_decompose(const FiniteRing& matrix_ring_carrier,
                                       RingPtr base, PotentMode mode);

/// A potent element f = e mod I for a nil ideal I and a coset e + I whose
/// image is potent in R/I. Idempotent cosets take the cubic Newton step
/// f <- 3f^2 - 2f^3; everything else falls back to the coset scan.
Index lift_potent_mod_nil(RingPtr r, const Subset& nil_ideal, Index e_rep);

}  // namespace ringlab
