#include "ringlab/constructions.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <map>
#include <set>

namespace ringlab {

namespace {

bool element_is_nilpotent(const FiniteRing& r, Index x) {
  std::set<Index> seen;
  Index p = x;
  while (true) {
    if (p == r.zero()) return true;
    if (!seen.insert(p).second) return false;
    p = r.mul(p, x);
  }
}

bool element_is_unit(const FiniteRing& r, Index u) {
  std::vector<bool> seen(static_cast<size_t>(r.order()), false);
  for (Index y = 0; y < r.order(); ++y) {
    Index p = r.mul(u, y);
    if (seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

void check_cap(uint64_t estimate, const Limits& lim, const std::string& what) {
  if (estimate > static_cast<uint64_t>(lim.construct_cap)) {
    throw CapError(what + " has order " +
                   (estimate == kOrderSaturated ? std::string("overflow")
                                                : std::to_string(estimate)) +
                   ", exceeding construction cap " + std::to_string(lim.construct_cap));
  }
}

// Odometer over per-position candidate lists; emits encoded indices in
// lexicographic digit order, which is ascending index order for a
// big-endian radix.
std::vector<Index> enumerate_combinations(const MixedRadix& radix,
                                          const std::vector<std::vector<Index>>& lists) {
  std::vector<Index> out;
  std::vector<size_t> pos(lists.size(), 0);
  while (true) {
    std::vector<int64_t> digits(lists.size());
    for (size_t i = 0; i < lists.size(); ++i) digits[i] = lists[i][pos[i]];
    out.push_back(static_cast<Index>(radix.encode(digits)));
    int i = static_cast<int>(lists.size()) - 1;
    while (i >= 0 && ++pos[i] == lists[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cyclic rings
// ---------------------------------------------------------------------------

CyclicRing::CyclicRing(int64_t n)
    : FiniteRing(n, 0, 1, "Z(" + std::to_string(n) + ")"), n_(n) {}

std::optional<std::vector<Index>> CyclicRing::structural_jacobson() const {
  int64_t rad = 1;
  for (int64_t p : distinct_prime_factors(n_)) rad *= p;
  std::vector<Index> out;
  for (int64_t m = 0; m < n_; m += rad) out.push_back(static_cast<Index>(m));
  return out;
}

std::shared_ptr<const CyclicRing> cyclic_ring(int64_t n) {
  if (n < 2) throw RingError("Z(n) needs n >= 2");
  auto r = std::make_shared<CyclicRing>(n);
  r->init_tables();
  return r;
}

// ---------------------------------------------------------------------------
// Galois fields
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<int64_t>;  // coefficients, constant term first

// Remainder of f by the monic divisor d over F_p.
Poly poly_rem(Poly f, const Poly& d, int64_t p) {
  const int dd = static_cast<int>(d.size()) - 1;
  for (int i = static_cast<int>(f.size()) - 1; i >= dd; --i) {
    int64_t c = f[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      f[i - dd + j] = ((f[i - dd + j] - c * d[j]) % p + p * p) % p;
    }
  }
  f.resize(dd);
  return f;
}

bool poly_is_zero(const Poly& f) {
  for (int64_t c : f) {
    if (c != 0) return false;
  }
  return true;
}

bool is_irreducible(const Poly& f, int64_t p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    const int64_t count = ipow(p, d);
    for (int64_t enc = 0; enc < count; ++enc) {
      Poly g(d + 1, 0);
      int64_t e = enc;
      for (int i = 0; i < d; ++i) {
        g[i] = e % p;
        e /= p;
      }
      g[d] = 1;
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

// The least monic irreducible of degree k, "least" by the integer encoding
// sum c_i p^i of the non-leading coefficients.
Poly smallest_irreducible(int64_t p, int k) {
  const int64_t count = ipow(p, k);
  for (int64_t enc = 0; enc < count; ++enc) {
    Poly f(k + 1, 0);
    int64_t e = enc;
    for (int i = 0; i < k; ++i) {
      f[i] = e % p;
      e /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw RingError("no irreducible polynomial found");  // unreachable
}

}  // namespace

GaloisFieldRing::GaloisFieldRing(int64_t p, int k)
    : FiniteRing(ipow(p, k), 0, 1,
                 "GF(" + std::to_string(p) + "," + std::to_string(k) + ")"),
      p_(p), k_(k) {
  Poly f = smallest_irreducible(p, k);
  mod_.assign(f.begin(), f.end() - 1);  // x^k = -(mod_[k-1] x^{k-1} + ... + mod_[0])
}

std::string GaloisFieldRing::modulus_string() const {
  std::vector<std::string> parts{"t^" + std::to_string(k_)};
  for (int i = k_ - 1; i >= 0; --i) {
    if (mod_[i] == 0) continue;
    std::string term = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    std::string coef = (mod_[i] == 1 && i > 0) ? "" : std::to_string(mod_[i]);
    parts.push_back(coef + term);
  }
  return join(parts, "+");
}

Index GaloisFieldRing::add_impl(Index a, Index b) const {
  int64_t out = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * mult;
    a = static_cast<Index>(a / p_);
    b = static_cast<Index>(b / p_);
    mult *= p_;
  }
  return static_cast<Index>(out);
}

Index GaloisFieldRing::neg_impl(Index a) const {
  int64_t out = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((p_ - a % p_) % p_) * mult;
    a = static_cast<Index>(a / p_);
    mult *= p_;
  }
  return static_cast<Index>(out);
}

Index GaloisFieldRing::mul_impl(Index a, Index b) const {
  Poly pa(k_), pb(k_);
  int64_t ta = a, tb = b;
  for (int i = 0; i < k_; ++i) {
    pa[i] = ta % p_;
    ta /= p_;
    pb[i] = tb % p_;
    tb /= p_;
  }
  Poly prod(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i) {
    if (pa[i] == 0) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
  }
  // reduce by x^k = -mod_
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    int64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k_; ++i) {
      prod[d - k_ + i] = ((prod[d - k_ + i] - c * mod_[i]) % p_ + p_ * p_) % p_;
    }
  }
  int64_t out = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    out += prod[i] * mult;
    mult *= p_;
  }
  return static_cast<Index>(out);
}

std::string GaloisFieldRing::label(Index x) const {
  if (x == 0) return "0";
  std::vector<std::string> parts;
  int64_t t = x;
  for (int i = 0; i < k_; ++i) {
    int64_t c = t % p_;
    t /= p_;
    if (c == 0) continue;
    std::string var = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    std::string coef = (c == 1 && i > 0) ? "" : std::to_string(c);
    parts.push_back(coef + var);
  }
  std::reverse(parts.begin(), parts.end());
  return join(parts, "+");
}

std::shared_ptr<const GaloisFieldRing> galois_field(int64_t p, int k) {
  if (!is_prime(p)) throw RingError("GF(p,k) needs p prime, got " + std::to_string(p));
  if (k < 1) throw RingError("GF(p,k) needs k >= 1");
  if (sat_pow(static_cast<uint64_t>(p), static_cast<uint64_t>(k)) > (1u << 20)) {
    throw CapError("GF(" + std::to_string(p) + "," + std::to_string(k) + ") is too large");
  }
  auto r = std::make_shared<GaloisFieldRing>(p, k);
  r->init_tables();
  return r;
}

// ---------------------------------------------------------------------------
// Matrix rings
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> matrix_positions(int n, MatrixShape shape) {
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (shape == MatrixShape::UpperTriangular && j < i) continue;
      pos.emplace_back(i, j);
    }
  }
  return pos;
}

int64_t encode_big_endian(int64_t base, const std::vector<int64_t>& digits) {
  int64_t idx = 0;
  for (int64_t d : digits) idx = idx * base + d;
  return idx;
}

int64_t matrix_point(int n, const FiniteRing& base, MatrixShape shape, bool identity) {
  auto pos = matrix_positions(n, shape);
  std::vector<int64_t> digits;
  digits.reserve(pos.size());
  for (auto [i, j] : pos) {
    digits.push_back(identity && i == j ? base.one() : base.zero());
  }
  return encode_big_endian(base.order(), digits);
}

int64_t carrier_power(int64_t base_order, int count) {
  int64_t o = 1;
  for (int i = 0; i < count; ++i) o *= base_order;
  return o;
}

}  // namespace

MatrixRing::MatrixRing(int n, RingPtr base, MatrixShape shape)
    : FiniteRing(
          carrier_power(base->order(), static_cast<int>(matrix_positions(n, shape).size())),
          static_cast<Index>(matrix_point(n, *base, shape, false)),
          static_cast<Index>(matrix_point(n, *base, shape, true)),
          std::string(shape == MatrixShape::Full ? "M(" : "T(") + std::to_string(n) + ", " +
              base->provenance() + ")"),
      n_(n), base_(std::move(base)), shape_(shape) {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (shape_ == MatrixShape::UpperTriangular && j < i) continue;
      positions_.emplace_back(i, j);
    }
  }
  pos_lookup_.assign(n_ * n_, -1);
  for (size_t p = 0; p < positions_.size(); ++p) {
    pos_lookup_[positions_[p].first * n_ + positions_[p].second] = static_cast<int>(p);
  }
  radix_ = MixedRadix(std::vector<int64_t>(positions_.size(), base_->order()));
}

Index MatrixRing::encode(const std::vector<Index>& entries) const {
  std::vector<int64_t> digits(entries.begin(), entries.end());
  return static_cast<Index>(radix_.encode(digits));
}

std::vector<Index> MatrixRing::decode(Index x) const {
  auto digits = radix_.decode(x);
  return std::vector<Index>(digits.begin(), digits.end());
}

Index MatrixRing::entry(const std::vector<Index>& entries, int i, int j) const {
  int p = pos_of(i, j);
  return p < 0 ? base_->zero() : entries[p];
}

Index MatrixRing::add_impl(Index a, Index b) const {
  std::array<Index, 64> ea, eb, out;
  const size_t m = positions_.size();
  radix_.decode_to(a, ea.data());
  radix_.decode_to(b, eb.data());
  for (size_t i = 0; i < m; ++i) out[i] = base_->add(ea[i], eb[i]);
  return static_cast<Index>(radix_.encode_from(out.data()));
}

Index MatrixRing::neg_impl(Index a) const {
  std::array<Index, 64> ea, out;
  const size_t m = positions_.size();
  radix_.decode_to(a, ea.data());
  for (size_t i = 0; i < m; ++i) out[i] = base_->neg(ea[i]);
  return static_cast<Index>(radix_.encode_from(out.data()));
}

Index MatrixRing::mul_impl(Index a, Index b) const {
  std::array<Index, 64> ea, eb, out;
  radix_.decode_to(a, ea.data());
  radix_.decode_to(b, eb.data());
  const Index z = base_->zero();
  auto at = [&](const std::array<Index, 64>& e, int i, int j) {
    int p = pos_lookup_[i * n_ + j];
    return p < 0 ? z : e[p];
  };
  for (size_t p = 0; p < positions_.size(); ++p) {
    auto [i, j] = positions_[p];
    Index acc = z;
    for (int k = 0; k < n_; ++k) {
      Index l = at(ea, i, k);
      Index r = at(eb, k, j);
      if (l == z || r == z) continue;
      acc = base_->add(acc, base_->mul(l, r));
    }
    out[p] = acc;
  }
  return static_cast<Index>(radix_.encode_from(out.data()));
}

std::string MatrixRing::label(Index x) const {
  auto e = decode(x);
  std::vector<std::string> rows;
  for (int i = 0; i < n_; ++i) {
    std::vector<std::string> cols;
    for (int j = 0; j < n_; ++j) cols.push_back(base_->label(entry(e, i, j)));
    rows.push_back("[" + join(cols, ",") + "]");
  }
  return "[" + join(rows, ",") + "]";
}

std::optional<std::vector<Index>> MatrixRing::structural_jacobson() const {
  auto jb = jacobson_radical(*base_).ideal.indices();
  std::vector<Index> all(base_->order());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<Index>> lists;
  for (auto [i, j] : positions_) {
    if (shape_ == MatrixShape::Full || i == j) {
      lists.push_back(jb);
    } else {
      lists.push_back(all);  // strict upper part is free in the triangular case
    }
  }
  return enumerate_combinations(radix_, lists);
}

std::shared_ptr<const MatrixRing> matrix_ring(int n, RingPtr base, MatrixShape shape,
                                              const Limits& lim) {
  if (n < 1 || n > 8) throw RingError("matrix size must be between 1 and 8");
  int entries = shape == MatrixShape::Full ? n * n : n * (n + 1) / 2;
  check_cap(sat_pow(static_cast<uint64_t>(base->order()), entries), lim,
            std::string(shape == MatrixShape::Full ? "M(" : "T(") + std::to_string(n) + ", " +
                base->provenance() + ")");
  auto r = std::make_shared<MatrixRing>(n, std::move(base), shape);
  r->init_tables();
  return r;
}

// ---------------------------------------------------------------------------
// Formal matrix rings
// ---------------------------------------------------------------------------

FormalMatrixRing::FormalMatrixRing(RingPtr base, Index s, int n, FormalVariant variant)
    : FiniteRing(
          carrier_power(base->order(), n * n),
          static_cast<Index>(matrix_point(n, *base, MatrixShape::Full, false)),
          static_cast<Index>(matrix_point(n, *base, MatrixShape::Full, true)),
          variant == FormalVariant::K
              ? "K(" + base->provenance() + ", s=" + base->label(s) + ")"
              : "MS(" + std::to_string(n) + ", " + base->provenance() + ", s=" +
                    base->label(s) + ")"),
      base_(std::move(base)), s_(s), n_(n), variant_(variant) {
  radix_ = MixedRadix(std::vector<int64_t>(static_cast<size_t>(n_) * n_, base_->order()));
  s_pow_[0] = base_->one();
  s_pow_[1] = s_;
  s_pow_[2] = base_->mul(s_, s_);
}

Index FormalMatrixRing::encode(const std::vector<Index>& entries) const {
  std::vector<int64_t> digits(entries.begin(), entries.end());
  return static_cast<Index>(radix_.encode(digits));
}

std::vector<Index> FormalMatrixRing::decode(Index x) const {
  auto digits = radix_.decode(x);
  return std::vector<Index>(digits.begin(), digits.end());
}

Index FormalMatrixRing::add_impl(Index a, Index b) const {
  std::array<Index, 36> ea, eb, out;
  const size_t m = static_cast<size_t>(n_) * n_;
  radix_.decode_to(a, ea.data());
  radix_.decode_to(b, eb.data());
  for (size_t i = 0; i < m; ++i) out[i] = base_->add(ea[i], eb[i]);
  return static_cast<Index>(radix_.encode_from(out.data()));
}

Index FormalMatrixRing::neg_impl(Index a) const {
  std::array<Index, 36> ea, out;
  const size_t m = static_cast<size_t>(n_) * n_;
  radix_.decode_to(a, ea.data());
  for (size_t i = 0; i < m; ++i) out[i] = base_->neg(ea[i]);
  return static_cast<Index>(radix_.encode_from(out.data()));
}

Index FormalMatrixRing::mul_impl(Index a, Index b) const {
  std::array<Index, 36> ea, eb, out;
  radix_.decode_to(a, ea.data());
  radix_.decode_to(b, eb.data());
  if (variant_ == FormalVariant::K) {
    Index a1 = ea[0], x1 = ea[1], y1 = ea[2], b1 = ea[3];
    Index a2 = eb[0], x2 = eb[1], y2 = eb[2], b2 = eb[3];
    out[0] = base_->add(base_->mul(a1, a2), base_->mul(s_, base_->mul(x1, y2)));
    out[1] = base_->add(base_->mul(a1, x2), base_->mul(x1, b2));
    out[2] = base_->add(base_->mul(y1, a2), base_->mul(b1, y2));
    out[3] = base_->add(base_->mul(s_, base_->mul(y1, x2)), base_->mul(b1, b2));
  } else {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        Index acc = base_->zero();
        for (int k = 0; k < n_; ++k) {
          int d = 1 + (i == j ? 1 : 0) - (i == k ? 1 : 0) - (k == j ? 1 : 0);
          Index term = base_->mul(ea[i * n_ + k], eb[k * n_ + j]);
          acc = base_->add(acc, base_->mul(s_pow_[d], term));
        }
        out[i * n_ + j] = acc;
      }
    }
  }
  return static_cast<Index>(radix_.encode_from(out.data()));
}

std::string FormalMatrixRing::label(Index x) const {
  auto e = decode(x);
  std::vector<std::string> rows;
  for (int i = 0; i < n_; ++i) {
    std::vector<std::string> cols;
    for (int j = 0; j < n_; ++j) cols.push_back(base_->label(e[i * n_ + j]));
    rows.push_back("[" + join(cols, ",") + "]");
  }
  return "[" + join(rows, ",") + "]";
}

std::optional<std::vector<Index>> FormalMatrixRing::structural_jacobson() const {
  bool s_nil = element_is_nilpotent(*base_, s_);
  bool s_unit = !s_nil && element_is_unit(*base_, s_);
  if (!s_nil && !(s_unit && variant_ == FormalVariant::K)) return std::nullopt;

  auto jb = jacobson_radical(*base_).ideal.indices();
  std::vector<Index> all(base_->order());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<Index>> lists;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      // s nilpotent: radical entries on the diagonal, everything off it.
      // s a unit (K only): the ring is a genuine 2x2 matrix ring, all entries
      // come from the base radical.
      lists.push_back(s_nil ? (i == j ? jb : all) : jb);
    }
  }
  return enumerate_combinations(radix_, lists);
}

std::shared_ptr<const FormalMatrixRing> formal_matrix_s(RingPtr base, Index s_elem, int n,
                                                        FormalVariant variant,
                                                        const Limits& lim) {
  if (variant == FormalVariant::K) n = 2;
  if (n < 2 || n > 6) throw RingError("formal matrix size must be between 2 and 6");
  if (s_elem < 0 || s_elem >= base->order()) throw RingError("s is out of range");
  for (Index r = 0; r < base->order(); ++r) {
    if (base->mul(r, s_elem) != base->mul(s_elem, r)) {
      throw RingError("s must be central; it does not commute with element " +
                      base->label(r));
    }
  }
  check_cap(sat_pow(static_cast<uint64_t>(base->order()), n * n), lim,
            "formal matrix ring over " + base->provenance());
  auto r = std::make_shared<FormalMatrixRing>(base, s_elem, n, variant);
  r->init_tables();

  // Construction self-checks, run when small enough to be free.
  if (variant == FormalVariant::Mn && n == 2 && r->order() <= lim.axiom_cap) {
    auto chk = verify_ms2_equals_k(base, s_elem, lim);
    if (!chk.ok) throw RingError("M_2(R;s) self-check failed: " + chk.issue);
  }
  if (variant == FormalVariant::Mn &&
      sat_pow(static_cast<uint64_t>(base->order()), 2 * (n - 1)) <= 65536) {
    auto chk = verify_ms_displays(base, s_elem, n);
    if (!chk.ok) throw RingError("M_n(R;s) display self-check failed: " + chk.issue);
  }
  return r;
}

std::shared_ptr<const FormalMatrixRing> formal_matrix_s_int(RingPtr base, int64_t s, int n,
                                                            FormalVariant variant,
                                                            const Limits& lim) {
  return formal_matrix_s(base, ring_int(*base, s), n, variant, lim);
}

IdentityCheck verify_ms2_equals_k(RingPtr base, Index s, const Limits& lim) {
  IdentityCheck out;
  Index s2 = base->mul(s, s);
  auto ms = std::make_shared<FormalMatrixRing>(base, s, 2, FormalVariant::Mn);
  auto ks = std::make_shared<FormalMatrixRing>(base, s2, 2, FormalVariant::K);
  (void)lim;
  const int64_t n = ms->order();
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      ++out.checked;
      if (ms->mul(a, b) != ks->mul(a, b) || ms->add(a, b) != ks->add(a, b)) {
        out.ok = false;
        out.issue = "operations differ at pair (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")";
        return out;
      }
    }
  }
  return out;
}

IdentityCheck verify_ms_displays(RingPtr base, Index s, int n) {
  IdentityCheck out;
  auto ms = std::make_shared<FormalMatrixRing>(base, s, n, FormalVariant::Mn);
  const int64_t m = base->order();
  const int cols = n - 1;
  Index s2 = base->mul(s, s);

  // s R and s^2 R as membership sets for the trace inclusions.
  std::vector<bool> in_sR(static_cast<size_t>(m), false), in_s2R(static_cast<size_t>(m), false);
  for (Index r = 0; r < m; ++r) {
    in_sR[base->mul(s, r)] = true;
    in_s2R[base->mul(s2, r)] = true;
  }

  std::vector<int64_t> xv(cols), yv(cols);
  MixedRadix tup(std::vector<int64_t>(cols, m));
  for (int64_t xi = 0; xi < tup.size(); ++xi) {
    tup.decode_into(xi, xv);
    std::vector<Index> col(static_cast<size_t>(n) * n, base->zero());
    for (int i = 0; i < cols; ++i) col[i * n + (n - 1)] = static_cast<Index>(xv[i]);
    Index X = ms->encode(col);
    for (int64_t yi = 0; yi < tup.size(); ++yi) {
      tup.decode_into(yi, yv);
      std::vector<Index> row(static_cast<size_t>(n) * n, base->zero());
      for (int j = 0; j < cols; ++j) row[(n - 1) * n + j] = static_cast<Index>(yv[j]);
      Index Y = ms->encode(row);
      ++out.checked;

      auto xy = ms->decode(ms->mul(X, Y));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Index got = xy[i * n + j];
          Index want = base->zero();
          if (i < cols && j < cols) {
            Index f = (i == j) ? s2 : s;
            want = base->mul(f, base->mul(static_cast<Index>(xv[i]), static_cast<Index>(yv[j])));
          }
          if (got != want) {
            out.ok = false;
            out.issue = "column-row product disagrees at entry (" + std::to_string(i) +
                        "," + std::to_string(j) + ")";
            return out;
          }
          if (i < cols && j < cols && !in_sR[got]) {
            out.ok = false;
            out.issue = "column-row product escapes sA";
            return out;
          }
        }
      }
      auto yx = ms->decode(ms->mul(Y, X));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Index got = yx[i * n + j];
          if (i == n - 1 && j == n - 1) {
            Index want = base->zero();
            for (int k = 0; k < cols; ++k) {
              want = base->add(want, base->mul(s2, base->mul(static_cast<Index>(yv[k]),
                                                             static_cast<Index>(xv[k]))));
            }
            if (got != want || !in_s2R[got]) {
              out.ok = false;
              out.issue = "row-column product is not the expected s^2 sum";
              return out;
            }
          } else if (got != base->zero()) {
            out.ok = false;
            out.issue = "row-column product has support off the corner";
            return out;
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

GroupTable group_cyclic(int64_t n) {
  if (n < 1) throw RingError("C(n) needs n >= 1");
  GroupTable g;
  g.order = n;
  g.identity = 0;
  g.mul.resize(static_cast<size_t>(n) * n);
  g.inverse.resize(static_cast<size_t>(n));
  g.labels.resize(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    g.inverse[i] = static_cast<int>((n - i) % n);
    g.labels[i] = i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i));
    for (int64_t j = 0; j < n; ++j) g.mul[i * n + j] = static_cast<int>((i + j) % n);
  }
  g.abelian = true;
  g.provenance = "C(" + std::to_string(n) + ")";
  return g;
}

GroupTable group_dihedral(int64_t n) {
  if (n < 1) throw RingError("D(n) needs n >= 1");
  const int64_t order = 2 * n;
  GroupTable g;
  g.order = order;
  g.identity = 0;
  g.mul.resize(static_cast<size_t>(order) * order);
  g.inverse.resize(static_cast<size_t>(order));
  g.labels.resize(static_cast<size_t>(order));
  // index i < n is r^i, index n+i is s r^i, with s r^i s = r^{-i}
  for (int64_t a = 0; a < order; ++a) {
    g.labels[a] = a < n ? (a == 0 ? "1" : (a == 1 ? "r" : "r^" + std::to_string(a)))
                        : (a == n ? "s" : "sr^" + std::to_string(a - n));
    for (int64_t b = 0; b < order; ++b) {
      int64_t res;
      if (a < n && b < n) {
        res = (a + b) % n;                    // r^a r^b
      } else if (a < n) {
        res = n + ((b - n - a) % n + n) % n;  // r^a (s r^j) = s r^{j-a}
      } else if (b < n) {
        res = n + ((a - n + b) % n);          // (s r^i) r^b = s r^{i+b}
      } else {
        res = (((b - n) - (a - n)) % n + n) % n;  // (s r^i)(s r^j) = r^{j-i}
      }
      g.mul[a * order + b] = static_cast<int>(res);
    }
  }
  for (int64_t a = 0; a < order; ++a) {
    for (int64_t b = 0; b < order; ++b) {
      if (g.mul[a * order + b] == 0) {
        g.inverse[a] = static_cast<int>(b);
        break;
      }
    }
  }
  g.abelian = n <= 2;
  g.provenance = "D(" + std::to_string(n) + ")";
  return g;
}

GroupTable group_s3() {
  // permutations of {0,1,2}, lexicographic one-line order
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const char* names[6] = {"e", "(23)", "(12)", "(123)", "(132)", "(13)"};
  GroupTable g;
  g.order = 6;
  g.identity = 0;
  g.mul.resize(36);
  g.inverse.resize(6);
  g.labels.assign(names, names + 6);
  auto find = [&](const int* image) {
    for (int p = 0; p < 6; ++p) {
      if (perms[p][0] == image[0] && perms[p][1] == image[1] && perms[p][2] == image[2]) {
        return p;
      }
    }
    return -1;
  };
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      int image[3];
      for (int x = 0; x < 3; ++x) image[x] = perms[a][perms[b][x]];
      g.mul[a * 6 + b] = find(image);
    }
    for (int b = 0; b < 6; ++b) {
      if (g.mul[a * 6 + b] == 0) g.inverse[a] = b;
    }
  }
  g.abelian = false;
  g.provenance = "S3";
  return g;
}

GroupTable group_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  g.order = a.order * b.order;
  g.identity = a.identity * static_cast<int>(b.order) + b.identity;
  g.mul.resize(static_cast<size_t>(g.order) * g.order);
  g.inverse.resize(static_cast<size_t>(g.order));
  g.labels.resize(static_cast<size_t>(g.order));
  for (int64_t x = 0; x < g.order; ++x) {
    int ax = static_cast<int>(x / b.order), bx = static_cast<int>(x % b.order);
    g.labels[x] = "(" + a.labels[ax] + "," + b.labels[bx] + ")";
    g.inverse[x] = a.inverse[ax] * static_cast<int>(b.order) + b.inverse[bx];
    for (int64_t y = 0; y < g.order; ++y) {
      int ay = static_cast<int>(y / b.order), by = static_cast<int>(y % b.order);
      g.mul[x * g.order + y] =
          a.compose(ax, ay) * static_cast<int>(b.order) + b.compose(bx, by);
    }
  }
  g.abelian = a.abelian && b.abelian;
  g.provenance = a.provenance + " x " + b.provenance;
  return g;
}

bool validate_group_table(const GroupTable& g, std::string* issue) {
  auto report = [&](const std::string& s) {
    if (issue) *issue = s;
    return false;
  };
  const int64_t n = g.order;
  for (int64_t a = 0; a < n; ++a) {
    if (g.compose(g.identity, a) != a || g.compose(a, g.identity) != a) {
      return report("identity fails at " + std::to_string(a));
    }
    if (g.compose(a, g.inverse[a]) != g.identity ||
        g.compose(g.inverse[a], a) != g.identity) {
      return report("inverse fails at " + std::to_string(a));
    }
  }
  for (int64_t a = 0; a < n; ++a) {
    for (int64_t b = 0; b < n; ++b) {
      int ab = g.compose(static_cast<int>(a), static_cast<int>(b));
      if (ab < 0 || ab >= n) return report("table escapes the carrier");
      for (int64_t c = 0; c < n; ++c) {
        if (g.compose(ab, static_cast<int>(c)) !=
            g.compose(static_cast<int>(a), g.compose(static_cast<int>(b), static_cast<int>(c)))) {
          return report("associativity fails at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
  bool ab = true;
  for (int64_t a = 0; a < n && ab; ++a) {
    for (int64_t b = 0; b < n; ++b) {
      if (g.compose(static_cast<int>(a), static_cast<int>(b)) !=
          g.compose(static_cast<int>(b), static_cast<int>(a))) {
        ab = false;
        break;
      }
    }
  }
  if (ab != g.abelian) return report("abelian flag does not match the table");
  return true;
}

std::vector<int> group_element_orders(const GroupTable& g) {
  std::vector<int> orders(static_cast<size_t>(g.order));
  for (int64_t a = 0; a < g.order; ++a) {
    int p = static_cast<int>(a), ord = 1;
    while (p != g.identity) {
      p = g.compose(p, static_cast<int>(a));
      ++ord;
    }
    orders[a] = ord;
  }
  return orders;
}

// ---------------------------------------------------------------------------
// Group rings
// ---------------------------------------------------------------------------

namespace {
int64_t group_ring_point(const FiniteRing& base, const GroupTable& g, bool identity) {
  std::vector<int64_t> digits(static_cast<size_t>(g.order), base.zero());
  if (identity) digits[g.identity] = base.one();
  return encode_big_endian(base.order(), digits);
}
}  // namespace

GroupRing::GroupRing(RingPtr base, GroupTable group)
    : FiniteRing(carrier_power(base->order(), static_cast<int>(group.order)),
                 static_cast<Index>(group_ring_point(*base, group, false)),
                 static_cast<Index>(group_ring_point(*base, group, true)),
                 "GR(" + base->provenance() + ", " + group.provenance + ")"),
      base_(std::move(base)), group_(std::move(group)) {
  radix_ = MixedRadix(std::vector<int64_t>(static_cast<size_t>(group_.order), base_->order()));
}

Index GroupRing::encode(const std::vector<Index>& coeffs) const {
  std::vector<int64_t> digits(coeffs.begin(), coeffs.end());
  return static_cast<Index>(radix_.encode(digits));
}

std::vector<Index> GroupRing::decode(Index x) const {
  auto digits = radix_.decode(x);
  return std::vector<Index>(digits.begin(), digits.end());
}

Index GroupRing::augmentation(Index x) const {
  auto c = decode(x);
  Index acc = base_->zero();
  for (Index v : c) acc = base_->add(acc, v);
  return acc;
}

Index GroupRing::add_impl(Index a, Index b) const {
  std::array<Index, 64> ca, cb, out;
  const size_t m = static_cast<size_t>(group_.order);
  radix_.decode_to(a, ca.data());
  radix_.decode_to(b, cb.data());
  for (size_t i = 0; i < m; ++i) out[i] = base_->add(ca[i], cb[i]);
  return static_cast<Index>(radix_.encode_from(out.data()));
}

Index GroupRing::neg_impl(Index a) const {
  std::array<Index, 64> ca, out;
  const size_t m = static_cast<size_t>(group_.order);
  radix_.decode_to(a, ca.data());
  for (size_t i = 0; i < m; ++i) out[i] = base_->neg(ca[i]);
  return static_cast<Index>(radix_.encode_from(out.data()));
}

Index GroupRing::mul_impl(Index a, Index b) const {
  std::array<Index, 64> ca, cb, out;
  const size_t m = static_cast<size_t>(group_.order);
  radix_.decode_to(a, ca.data());
  radix_.decode_to(b, cb.data());
  const Index z = base_->zero();
  out.fill(z);
  for (size_t i = 0; i < m; ++i) {
    if (ca[i] == z) continue;
    for (size_t j = 0; j < m; ++j) {
      if (cb[j] == z) continue;
      int k = group_.compose(static_cast<int>(i), static_cast<int>(j));
      out[k] = base_->add(out[k], base_->mul(ca[i], cb[j]));
    }
  }
  return static_cast<Index>(radix_.encode_from(out.data()));
}

std::string GroupRing::label(Index x) const {
  auto c = decode(x);
  std::vector<std::string> parts;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == base_->zero()) continue;
    std::string coef = base_->label(c[i]);
    std::string term = group_.labels[i];
    if (term == "1") {
      parts.push_back(coef);
    } else if (coef == "1") {
      parts.push_back(term);
    } else {
      parts.push_back(coef + term);
    }
  }
  return parts.empty() ? "0" : join(parts, "+");
}

std::optional<std::vector<Index>> GroupRing::structural_jacobson() const {
  RadicalData jb = jacobson_radical(*base_);
  // characteristic of R/J(R) without building the quotient
  int64_t chq = 1;
  Index acc = base_->one();
  while (!jb.ideal.contains(acc)) {
    acc = base_->add(acc, base_->one());
    ++chq;
  }
  auto piq = distinct_prime_factors(chq);
  bool coprime = true;
  for (int64_t p : piq) {
    if (group_.order % p == 0) coprime = false;
  }
  if (coprime) {
    // |G| invertible modulo J: J(RG) = J(R)G
    auto jlist = jb.ideal.indices();
    std::vector<std::vector<Index>> lists(static_cast<size_t>(group_.order), jlist);
    return enumerate_combinations(radix_, lists);
  }
  if (piq.size() == 1) {
    int64_t p = piq[0];
    int64_t g = group_.order;
    while (g % p == 0) g /= p;
    if (g == 1) {
      // p-group over a base whose semisimple part has characteristic p:
      // J(RG) is the preimage of J(R) under the augmentation map.
      std::vector<Index> out;
      for (Index x = 0; x < order(); ++x) {
        if (jb.ideal.contains(augmentation(x))) out.push_back(x);
      }
      return out;
    }
  }
  return std::nullopt;
}

GroupRingResult group_ring(RingPtr base, const GroupTable& g, const Limits& lim) {
  std::string issue;
  if (!validate_group_table(g, &issue)) throw RingError("broken group table: " + issue);
  if (g.order > 64) throw RingError("group rings support |G| <= 64");
  check_cap(sat_pow(static_cast<uint64_t>(base->order()), static_cast<uint64_t>(g.order)),
            lim, "GR(" + base->provenance() + ", " + g.provenance + ")");
  auto ring = std::make_shared<GroupRing>(base, g);
  ring->init_tables();

  GroupRingResult out{ring, Subset(*ring, SubsetKind::Ideal), false, 0};
  for (Index x = 0; x < ring->order(); ++x) {
    if (ring->augmentation(x) == base->zero()) out.delta.insert(x);
  }
  // a nil ideal of a finite ring is nilpotent, so the status reduces to an
  // elementwise scan; the exact index is computed when the ideal is small
  // enough for subset powers (index -1 = nilpotent, index not computed)
  out.delta_nilpotent = true;
  for (Index x : out.delta.indices()) {
    if (!element_is_nilpotent(*ring, x)) {
      out.delta_nilpotent = false;
      break;
    }
  }
  if (!out.delta_nilpotent) {
    out.delta_index = 0;
  } else if (out.delta.count() <= 4096) {
    out.delta_index = ideal_nilpotency_index(*ring, out.delta);
  } else {
    out.delta_index = -1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Endomorphism rings of finite abelian groups
// ---------------------------------------------------------------------------

int64_t AbelianGroupSpec::order() const {
  int64_t o = 1;
  for (int64_t d : invariants) o *= d;
  return o;
}

std::string AbelianGroupSpec::provenance() const {
  std::vector<std::string> parts;
  for (int64_t d : invariants) parts.push_back("C(" + std::to_string(d) + ")");
  return join(parts, "+");
}

std::map<int64_t, std::map<int, int>> AbelianGroupSpec::primary_decomposition() const {
  std::map<int64_t, std::map<int, int>> out;
  for (int64_t d : invariants) {
    for (const auto& [p, e] : factorize(d)) out[p][e] += 1;
  }
  return out;
}

AbelianGroupSpec AbelianGroupSpec::primary_component(int64_t p) const {
  AbelianGroupSpec out;
  for (int64_t d : invariants) {
    int v = 0;
    int64_t q = 1;
    int64_t dd = d;
    while (dd % p == 0) {
      dd /= p;
      ++v;
      q *= p;
    }
    if (v > 0) out.invariants.push_back(q);
  }
  return out;
}

namespace {

std::vector<int64_t> endo_gcds(const AbelianGroupSpec& spec) {
  const int r = static_cast<int>(spec.invariants.size());
  std::vector<int64_t> g(static_cast<size_t>(r) * r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      g[i * r + j] = std::gcd(spec.invariants[i], spec.invariants[j]);
    }
  }
  return g;
}

int64_t endo_order(const AbelianGroupSpec& spec) {
  int64_t o = 1;
  for (int64_t g : endo_gcds(spec)) o *= g;
  return o;
}

int64_t endo_identity_index(const AbelianGroupSpec& spec) {
  auto gcds = endo_gcds(spec);
  const int r = static_cast<int>(spec.invariants.size());
  int64_t idx = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      idx = idx * gcds[i * r + j] + (i == j ? 1 : 0);
    }
  }
  return idx;
}

}  // namespace

EndoRing::EndoRing(AbelianGroupSpec spec)
    : FiniteRing(endo_order(spec), 0, static_cast<Index>(endo_identity_index(spec)),
                 "END(" + spec.provenance() + ")"),
      spec_(std::move(spec)) {
  gcds_ = endo_gcds(spec_);
  radix_ = MixedRadix(gcds_);
  group_radix_ = MixedRadix(spec_.invariants);
}

Index EndoRing::encode(const std::vector<int64_t>& digits) const {
  return static_cast<Index>(radix_.encode(digits));
}

std::vector<int64_t> EndoRing::decode_digits(Index x) const { return radix_.decode(x); }

int64_t EndoRing::value_at(const std::vector<int64_t>& digits, int i, int j) const {
  const int r = rank();
  return (digits[i * r + j] * (spec_.invariants[i] / gcds_[i * r + j])) %
         spec_.invariants[i];
}

Index EndoRing::add_impl(Index a, Index b) const {
  auto da = radix_.decode(a), db = radix_.decode(b);
  std::vector<int64_t> out(da.size());
  for (size_t i = 0; i < da.size(); ++i) out[i] = (da[i] + db[i]) % radix_.base(static_cast<int>(i));
  return encode(out);
}

Index EndoRing::neg_impl(Index a) const {
  auto da = radix_.decode(a);
  std::vector<int64_t> out(da.size());
  for (size_t i = 0; i < da.size(); ++i) {
    int64_t g = radix_.base(static_cast<int>(i));
    out[i] = (g - da[i]) % g;
  }
  return encode(out);
}

Index EndoRing::mul_impl(Index a, Index b) const {
  const int r = rank();
  auto da = radix_.decode(a), db = radix_.decode(b);
  std::vector<int64_t> out(da.size());
  for (int i = 0; i < r; ++i) {
    const int64_t di = spec_.invariants[i];
    for (int j = 0; j < r; ++j) {
      int64_t v = 0;
      for (int k = 0; k < r; ++k) {
        v = (v + value_at(da, i, k) * value_at(db, k, j)) % di;
      }
      // composition stays inside Hom, so v is a multiple of d_i / g_ij
      int64_t step = di / gcds_[i * r + j];
      if (v % step != 0) throw RingError("endomorphism product escaped Hom constraints");
      out[i * r + j] = v / step;
    }
  }
  return encode(out);
}

int64_t EndoRing::apply(Index f, int64_t g_elem) const {
  const int r = rank();
  auto df = radix_.decode(f);
  auto x = group_radix_.decode(g_elem);
  std::vector<int64_t> y(static_cast<size_t>(r), 0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      y[i] = (y[i] + value_at(df, i, j) * x[j]) % spec_.invariants[i];
    }
  }
  return group_radix_.encode(y);
}

std::string EndoRing::label(Index x) const {
  const int r = rank();
  auto d = radix_.decode(x);
  std::vector<std::string> rows;
  for (int i = 0; i < r; ++i) {
    std::vector<std::string> cols;
    for (int j = 0; j < r; ++j) cols.push_back(std::to_string(value_at(d, i, j)));
    rows.push_back("[" + join(cols, ",") + "]");
  }
  return "[" + join(rows, ",") + "]";
}

std::optional<std::vector<Index>> EndoRing::structural_jacobson() const {
  // f is in J exactly when, for every prime p at which d_i and d_j have the
  // same positive valuation, the (i,j) digit is itself divisible by p. Pairs
  // with unequal valuations already land in J through the Hom constraint.
  const int r = rank();
  std::vector<std::vector<Index>> lists;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      int64_t g = gcds_[i * r + j];
      int64_t rad = 1;
      for (int64_t p : distinct_prime_factors(g)) {
        if (p_valuation(spec_.invariants[i], p) == p_valuation(spec_.invariants[j], p)) {
          rad *= p;
        }
      }
      std::vector<Index> allowed;
      for (int64_t a = 0; a < g; a += rad) allowed.push_back(static_cast<Index>(a));
      lists.push_back(allowed);
    }
  }
  return enumerate_combinations(radix_, lists);
}

std::shared_ptr<const EndoRing> endo_ring(const AbelianGroupSpec& spec, const Limits& lim) {
  if (spec.invariants.empty()) throw RingError("END needs a nontrivial group");
  for (int64_t d : spec.invariants) {
    if (d < 2) throw RingError("END invariants must be >= 2");
  }
  uint64_t est = 1;
  const int r = static_cast<int>(spec.invariants.size());
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      est = sat_mul(est, static_cast<uint64_t>(std::gcd(spec.invariants[i], spec.invariants[j])));
    }
  }
  check_cap(est, lim, "END(" + spec.provenance() + ")");
  auto e = std::make_shared<EndoRing>(spec);
  e->init_tables();
  return e;
}

EndoOracleReport endo_oracle_check(const EndoRing& e, int64_t full_pair_cap, uint64_t seed) {
  EndoOracleReport rep;
  const auto& spec = e.spec();
  const int r = static_cast<int>(spec.invariants.size());
  const int64_t gn = e.group_order();
  rep.model_size = e.order();

  MixedRadix grp(spec.invariants);
  // candidate images per generator: elements killed by d_j
  std::vector<std::vector<int64_t>> cands(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j) {
    for (int64_t x = 0; x < gn; ++x) {
      auto t = grp.decode(x);
      bool ok = true;
      for (int i = 0; i < r; ++i) {
        if ((t[i] * spec.invariants[j]) % spec.invariants[i] != 0) ok = false;
      }
      if (ok) cands[j].push_back(x);
    }
  }
  rep.candidate_tuples = 1;  // raw generator-image tuples, before the order filter
  for (int j = 0; j < r; ++j) rep.candidate_tuples *= gn;

  // oracle: every generator-image tuple linearly extends to one endomorphism
  std::set<std::vector<int64_t>> oracle_tables;
  {
    std::vector<size_t> pos(static_cast<size_t>(r), 0);
    while (true) {
      std::vector<std::vector<int64_t>> imgs;
      for (int j = 0; j < r; ++j) imgs.push_back(grp.decode(cands[j][pos[j]]));
      std::vector<int64_t> table(static_cast<size_t>(gn));
      for (int64_t x = 0; x < gn; ++x) {
        auto t = grp.decode(x);
        std::vector<int64_t> y(static_cast<size_t>(r), 0);
        for (int j = 0; j < r; ++j) {
          for (int i = 0; i < r; ++i) {
            y[i] = (y[i] + t[j] * imgs[j][i]) % spec.invariants[i];
          }
        }
        table[x] = grp.encode(y);
      }
      oracle_tables.insert(std::move(table));
      int i = r - 1;
      while (i >= 0 && ++pos[i] == cands[i].size()) pos[i--] = 0;
      if (i < 0) break;
    }
  }
  rep.oracle_size = static_cast<int64_t>(oracle_tables.size());

  // model tables must be exactly the oracle set, without collisions
  std::map<std::vector<int64_t>, Index> model_tables;
  for (Index f = 0; f < e.order(); ++f) {
    std::vector<int64_t> table(static_cast<size_t>(gn));
    for (int64_t x = 0; x < gn; ++x) table[x] = e.apply(f, x);
    if (!oracle_tables.count(table)) {
      rep.ok = false;
      rep.issue = "model element " + std::to_string(f) + " is not an endomorphism table";
      return rep;
    }
    if (!model_tables.emplace(std::move(table), f).second) {
      rep.ok = false;
      rep.issue = "model elements collide as functions";
      return rep;
    }
  }
  if (rep.model_size != rep.oracle_size) {
    rep.ok = false;
    rep.issue = "model and oracle sizes differ";
    return rep;
  }

  // operation preservation against function tables
  auto check_pair = [&](Index f, Index h) {
    Index fh = e.mul(f, h);
    Index fplus = e.add(f, h);
    for (int64_t x = 0; x < gn; ++x) {
      if (e.apply(fh, x) != e.apply(f, e.apply(h, x))) return false;
      auto a = grp.decode(e.apply(f, x));
      auto b = grp.decode(e.apply(h, x));
      std::vector<int64_t> sum(a.size());
      for (size_t i = 0; i < a.size(); ++i) sum[i] = (a[i] + b[i]) % spec.invariants[i];
      if (e.apply(fplus, x) != grp.encode(sum)) return false;
    }
    return true;
  };
  if (e.order() <= full_pair_cap) {
    for (Index f = 0; f < e.order(); ++f) {
      for (Index h = 0; h < e.order(); ++h) {
        ++rep.pairs_checked;
        if (!check_pair(f, h)) {
          rep.ok = false;
          rep.issue = "operations disagree at pair (" + std::to_string(f) + "," +
                      std::to_string(h) + ")";
          return rep;
        }
      }
    }
  } else {
    rep.ops_exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> dist(0, e.order() - 1);
    for (int i = 0; i < 200000; ++i) {
      ++rep.pairs_checked;
      Index f = static_cast<Index>(dist(rng)), h = static_cast<Index>(dist(rng));
      if (!check_pair(f, h)) {
        rep.ok = false;
        rep.issue = "operations disagree at sampled pair (" + std::to_string(f) + "," +
                    std::to_string(h) + ")";
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Idealization
// ---------------------------------------------------------------------------

IdealizationRing::IdealizationRing(RingPtr base, std::vector<Index> ideal_elems)
    : FiniteRing(base->order() * static_cast<int64_t>(ideal_elems.size()),
                 [&] {
                   // (0, 0): position of base zero inside the sorted ideal list
                   auto it = std::lower_bound(ideal_elems.begin(), ideal_elems.end(),
                                              base->zero());
                   int64_t zpos = it - ideal_elems.begin();
                   return static_cast<Index>(
                       static_cast<int64_t>(base->zero()) * ideal_elems.size() + zpos);
                 }(),
                 [&] {
                   auto it = std::lower_bound(ideal_elems.begin(), ideal_elems.end(),
                                              base->zero());
                   int64_t zpos = it - ideal_elems.begin();
                   return static_cast<Index>(
                       static_cast<int64_t>(base->one()) * ideal_elems.size() + zpos);
                 }(),
                 "IDZ(" + base->provenance() + ", |I|=" +
                     std::to_string(ideal_elems.size()) + ")"),
      base_(std::move(base)), ideal_(std::move(ideal_elems)) {
  pos_of_.assign(static_cast<size_t>(base_->order()), -1);
  for (size_t p = 0; p < ideal_.size(); ++p) pos_of_[ideal_[p]] = static_cast<int>(p);
}

Index IdealizationRing::encode(Index r, int ideal_pos) const {
  return static_cast<Index>(static_cast<int64_t>(r) * ideal_.size() + ideal_pos);
}

std::pair<Index, int> IdealizationRing::decode(Index x) const {
  return {static_cast<Index>(x / static_cast<Index>(ideal_.size())),
          static_cast<int>(x % static_cast<Index>(ideal_.size()))};
}

Index IdealizationRing::add_impl(Index a, Index b) const {
  auto [r1, i1] = decode(a);
  auto [r2, i2] = decode(b);
  Index isum = base_->add(ideal_[i1], ideal_[i2]);
  return encode(base_->add(r1, r2), pos_of_[isum]);
}

Index IdealizationRing::neg_impl(Index a) const {
  auto [r1, i1] = decode(a);
  return encode(base_->neg(r1), pos_of_[base_->neg(ideal_[i1])]);
}

Index IdealizationRing::mul_impl(Index a, Index b) const {
  auto [r1, i1] = decode(a);
  auto [r2, i2] = decode(b);
  Index mixed = base_->add(base_->mul(r1, ideal_[i2]), base_->mul(ideal_[i1], r2));
  return encode(base_->mul(r1, r2), pos_of_[mixed]);
}

std::string IdealizationRing::label(Index x) const {
  auto [r1, i1] = decode(x);
  return "(" + base_->label(r1) + ", " + base_->label(ideal_[i1]) + ")";
}

std::optional<std::vector<Index>> IdealizationRing::structural_jacobson() const {
  auto jb = jacobson_radical(*base_).ideal.indices();
  std::vector<Index> out;
  for (Index j : jb) {
    for (size_t p = 0; p < ideal_.size(); ++p) out.push_back(encode(j, static_cast<int>(p)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const IdealizationRing> idealization(RingPtr base, const Subset& ideal,
                                                     const Limits& lim) {
  if (!is_two_sided_ideal(*base, ideal)) {
    throw RingError("idealization requires a verified two-sided ideal");
  }
  check_cap(sat_mul(static_cast<uint64_t>(base->order()),
                    static_cast<uint64_t>(ideal.count())),
            lim, "IDZ(" + base->provenance() + ")");
  auto r = std::make_shared<IdealizationRing>(base, ideal.indices());
  r->init_tables();
  return r;
}

// ---------------------------------------------------------------------------
// Algebra presentations and tensor products
// ---------------------------------------------------------------------------

std::vector<int64_t> AlgebraPresentation::mul_coords(const std::vector<int64_t>& x,
                                                     const std::vector<int64_t>& y) const {
  std::vector<int64_t> z(static_cast<size_t>(rank), 0);
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank; ++j) {
      if (y[j] == 0) continue;
      int64_t c = (x[i] * y[j]) % modulus;
      const auto& basis = sc[static_cast<size_t>(i) * rank + j];
      for (int w = 0; w < rank; ++w) z[w] = (z[w] + c * basis[w]) % modulus;
    }
  }
  return z;
}

AlgebraPresentation alg_cyclic(int64_t c) {
  AlgebraPresentation a;
  a.modulus = c;
  a.rank = 1;
  a.unit = {1};
  a.sc = {{1}};
  a.basis_labels = {"1"};
  a.name = "Z(" + std::to_string(c) + ")";
  return a;
}

AlgebraPresentation alg_galois(int64_t p, int k) {
  if (!is_prime(p)) throw RingError("algebra GF(p,k) needs p prime");
  auto gf = galois_field(p, k);
  AlgebraPresentation a;
  a.modulus = p;
  a.rank = k;
  a.unit.assign(static_cast<size_t>(k), 0);
  a.unit[0] = 1;
  a.sc.resize(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      // t^i * t^j reduced by the field modulus, read off as coefficients
      Index prod = gf->mul(static_cast<Index>(ipow(p, i)), static_cast<Index>(ipow(p, j)));
      std::vector<int64_t> coords(static_cast<size_t>(k));
      int64_t t = prod;
      for (int w = 0; w < k; ++w) {
        coords[w] = t % p;
        t /= p;
      }
      a.sc[static_cast<size_t>(i) * k + j] = coords;
    }
  }
  for (int i = 0; i < k; ++i) {
    a.basis_labels.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
  }
  a.name = "GF(" + std::to_string(p) + "," + std::to_string(k) + ")";
  return a;
}

AlgebraPresentation alg_dual_numbers(int64_t c) {
  AlgebraPresentation a;
  a.modulus = c;
  a.rank = 2;
  a.unit = {1, 0};
  a.sc = {{1, 0}, {0, 1}, {0, 1}, {0, 0}};  // 1*1, 1*t, t*1, t*t
  a.basis_labels = {"1", "t"};
  a.name = "DN(" + std::to_string(c) + ")";
  return a;
}

AlgebraPresentation alg_upper_tri2(int64_t c) {
  AlgebraPresentation a;
  a.modulus = c;
  a.rank = 3;  // basis E11, E12, E22
  a.unit = {1, 0, 1};
  a.sc = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 0},  // E11 * {E11, E12, E22}
      {0, 0, 0}, {0, 0, 0}, {0, 1, 0},  // E12 * ...
      {0, 0, 0}, {0, 0, 0}, {0, 0, 1},  // E22 * ...
  };
  a.basis_labels = {"E11", "E12", "E22"};
  a.name = "UT2(" + std::to_string(c) + ")";
  return a;
}

AlgebraPresentation tensor_presentation(const AlgebraPresentation& a,
                                        const AlgebraPresentation& b) {
  if (a.modulus != b.modulus) {
    throw RingError("tensor product needs matching base moduli, got " +
                    std::to_string(a.modulus) + " and " + std::to_string(b.modulus));
  }
  AlgebraPresentation t;
  t.modulus = a.modulus;
  t.rank = a.rank * b.rank;
  t.unit.assign(static_cast<size_t>(t.rank), 0);
  for (int i = 0; i < a.rank; ++i) {
    for (int j = 0; j < b.rank; ++j) {
      t.unit[static_cast<size_t>(i) * b.rank + j] = (a.unit[i] * b.unit[j]) % t.modulus;
      t.basis_labels.push_back(a.basis_labels[i] + "*" + b.basis_labels[j]);
    }
  }
  t.sc.resize(static_cast<size_t>(t.rank) * t.rank);
  for (int i1 = 0; i1 < a.rank; ++i1) {
    for (int j1 = 0; j1 < b.rank; ++j1) {
      for (int i2 = 0; i2 < a.rank; ++i2) {
        for (int j2 = 0; j2 < b.rank; ++j2) {
          const auto& ca = a.sc[static_cast<size_t>(i1) * a.rank + i2];
          const auto& cb = b.sc[static_cast<size_t>(j1) * b.rank + j2];
          std::vector<int64_t> coords(static_cast<size_t>(t.rank), 0);
          for (int u = 0; u < a.rank; ++u) {
            for (int v = 0; v < b.rank; ++v) {
              coords[static_cast<size_t>(u) * b.rank + v] = (ca[u] * cb[v]) % t.modulus;
            }
          }
          int row = i1 * b.rank + j1;
          int col = i2 * b.rank + j2;
          t.sc[static_cast<size_t>(row) * t.rank + col] = std::move(coords);
        }
      }
    }
  }
  t.name = "TEN(" + a.name + ", " + b.name + ")";
  return t;
}

void validate_algebra(const AlgebraPresentation& a) {
  if (a.modulus < 2 || a.rank < 1) throw RingError("degenerate algebra presentation");
  if (static_cast<int>(a.unit.size()) != a.rank ||
      a.sc.size() != static_cast<size_t>(a.rank) * a.rank) {
    throw RingError("algebra presentation has inconsistent dimensions");
  }
  auto basis = [&](int i) {
    std::vector<int64_t> e(static_cast<size_t>(a.rank), 0);
    e[i] = 1;
    return e;
  };
  for (int i = 0; i < a.rank; ++i) {
    if (a.mul_coords(a.unit, basis(i)) != basis(i) ||
        a.mul_coords(basis(i), a.unit) != basis(i)) {
      throw RingError("algebra unit fails on basis element " + std::to_string(i));
    }
    for (int j = 0; j < a.rank; ++j) {
      for (int k = 0; k < a.rank; ++k) {
        auto lhs = a.mul_coords(a.mul_coords(basis(i), basis(j)), basis(k));
        auto rhs = a.mul_coords(basis(i), a.mul_coords(basis(j), basis(k)));
        if (lhs != rhs) {
          throw RingError("algebra structure constants are not associative at (" +
                          std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")");
        }
      }
    }
  }
}

AlgebraRing::AlgebraRing(AlgebraPresentation pres)
    : FiniteRing(carrier_power(pres.modulus, pres.rank), 0,
                 [&] {
                   int64_t idx = 0;
                   for (int i = 0; i < pres.rank; ++i) idx = idx * pres.modulus + pres.unit[i];
                   return static_cast<Index>(idx);
                 }(),
                 pres.name),
      pres_(std::move(pres)) {
  radix_ = MixedRadix(std::vector<int64_t>(static_cast<size_t>(pres_.rank), pres_.modulus));
}

Index AlgebraRing::encode(const std::vector<int64_t>& coords) const {
  return static_cast<Index>(radix_.encode(coords));
}

std::vector<int64_t> AlgebraRing::decode_coords(Index x) const { return radix_.decode(x); }

Index AlgebraRing::add_impl(Index a, Index b) const {
  auto ca = radix_.decode(a), cb = radix_.decode(b);
  std::vector<int64_t> out(ca.size());
  for (size_t i = 0; i < ca.size(); ++i) out[i] = (ca[i] + cb[i]) % pres_.modulus;
  return encode(out);
}

Index AlgebraRing::neg_impl(Index a) const {
  auto ca = radix_.decode(a);
  std::vector<int64_t> out(ca.size());
  for (size_t i = 0; i < ca.size(); ++i) out[i] = (pres_.modulus - ca[i]) % pres_.modulus;
  return encode(out);
}

Index AlgebraRing::mul_impl(Index a, Index b) const {
  return encode(pres_.mul_coords(radix_.decode(a), radix_.decode(b)));
}

std::string AlgebraRing::label(Index x) const {
  auto c = radix_.decode(x);
  std::vector<std::string> parts;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    std::string coef = c[i] == 1 ? "" : std::to_string(c[i]);
    std::string term = pres_.basis_labels[i];
    if (term == "1") {
      parts.push_back(std::to_string(c[i]));
    } else {
      parts.push_back(coef.empty() ? term : coef + term);
    }
  }
  return parts.empty() ? "0" : join(parts, "+");
}

std::shared_ptr<const AlgebraRing> algebra_ring(const AlgebraPresentation& pres,
                                                const Limits& lim) {
  validate_algebra(pres);
  check_cap(sat_pow(static_cast<uint64_t>(pres.modulus), static_cast<uint64_t>(pres.rank)),
            lim, pres.name);
  auto r = std::make_shared<AlgebraRing>(pres);
  r->init_tables();
  return r;
}

std::shared_ptr<const AlgebraRing> tensor_product_algebra(const AlgebraPresentation& a,
                                                          const AlgebraPresentation& b,
                                                          const Limits& lim) {
  return algebra_ring(tensor_presentation(a, b), lim);
}

// ---------------------------------------------------------------------------
// Morita context rings
// ---------------------------------------------------------------------------

std::optional<MoritaIssue> validate_morita(const MoritaData& d) {
  const auto& A = *d.A;
  const auto& B = *d.B;
  const auto& M = d.M;
  const auto& N = d.N;

  auto module_group_ok = [](const BimoduleTable& m, MoritaIssue& issue) {
    for (Index a = 0; a < m.order; ++a) {
      if (m.plus(a, m.zero) != a) {
        issue = {"module zero fails", {a}};
        return false;
      }
      if (m.plus(a, m.neg[a]) != m.zero) {
        issue = {"module negation fails", {a}};
        return false;
      }
      for (Index b = 0; b < m.order; ++b) {
        if (m.plus(a, b) != m.plus(b, a)) {
          issue = {"module addition does not commute", {a, b}};
          return false;
        }
        for (Index c = 0; c < m.order; ++c) {
          if (m.plus(m.plus(a, b), c) != m.plus(a, m.plus(b, c))) {
            issue = {"module addition does not associate", {a, b, c}};
            return false;
          }
        }
      }
    }
    return true;
  };
  MoritaIssue issue;
  if (!module_group_ok(M, issue)) return issue;
  if (!module_group_ok(N, issue)) {
    issue.what = "N: " + issue.what;
    return issue;
  }

  // bimodule axioms for M as an (A,B)-bimodule
  for (Index m = 0; m < M.order; ++m) {
    if (M.lact(A.one(), m) != m) return MoritaIssue{"1_A fails on M", {m}};
    if (M.ract(m, B.one()) != m) return MoritaIssue{"1_B fails on M", {m}};
  }
  for (Index a1 = 0; a1 < A.order(); ++a1) {
    for (Index a2 = 0; a2 < A.order(); ++a2) {
      for (Index m = 0; m < M.order; ++m) {
        if (M.lact(A.mul(a1, a2), m) != M.lact(a1, M.lact(a2, m))) {
          return MoritaIssue{"A-action on M is not associative", {a1, a2, m}};
        }
        if (M.lact(A.add(a1, a2), m) != M.plus(M.lact(a1, m), M.lact(a2, m))) {
          return MoritaIssue{"A-action on M is not additive in A", {a1, a2, m}};
        }
      }
    }
    for (Index m1 = 0; m1 < M.order; ++m1) {
      for (Index m2 = 0; m2 < M.order; ++m2) {
        if (M.lact(a1, M.plus(m1, m2)) != M.plus(M.lact(a1, m1), M.lact(a1, m2))) {
          return MoritaIssue{"A-action on M is not additive in M", {a1, m1, m2}};
        }
      }
    }
  }
  for (Index b1 = 0; b1 < B.order(); ++b1) {
    for (Index b2 = 0; b2 < B.order(); ++b2) {
      for (Index m = 0; m < M.order; ++m) {
        if (M.ract(m, B.mul(b1, b2)) != M.ract(M.ract(m, b1), b2)) {
          return MoritaIssue{"B-action on M is not associative", {m, b1, b2}};
        }
      }
    }
  }
  for (Index a = 0; a < A.order(); ++a) {
    for (Index m = 0; m < M.order; ++m) {
      for (Index b = 0; b < B.order(); ++b) {
        if (M.ract(M.lact(a, m), b) != M.lact(a, M.ract(m, b))) {
          return MoritaIssue{"(am)b != a(mb) on M", {a, m, b}};
        }
      }
    }
  }

  // bimodule axioms for N as a (B,A)-bimodule
  for (Index n = 0; n < N.order; ++n) {
    if (N.lact(B.one(), n) != n) return MoritaIssue{"1_B fails on N", {n}};
    if (N.ract(n, A.one()) != n) return MoritaIssue{"1_A fails on N", {n}};
  }
  for (Index b1 = 0; b1 < B.order(); ++b1) {
    for (Index b2 = 0; b2 < B.order(); ++b2) {
      for (Index n = 0; n < N.order; ++n) {
        if (N.lact(B.mul(b1, b2), n) != N.lact(b1, N.lact(b2, n))) {
          return MoritaIssue{"B-action on N is not associative", {b1, b2, n}};
        }
      }
    }
  }
  for (Index b = 0; b < B.order(); ++b) {
    for (Index n = 0; n < N.order; ++n) {
      for (Index a = 0; a < A.order(); ++a) {
        if (N.ract(N.lact(b, n), a) != N.lact(b, N.ract(n, a))) {
          return MoritaIssue{"(bn)a != b(na) on N", {b, n, a}};
        }
      }
    }
  }

  // pairings: biadditive, bilinear over the outer rings, balanced over the
  // inner ones
  for (Index m1 = 0; m1 < M.order; ++m1) {
    for (Index m2 = 0; m2 < M.order; ++m2) {
      for (Index n = 0; n < N.order; ++n) {
        if (d.pairing_phi(M.plus(m1, m2), n) !=
            A.add(d.pairing_phi(m1, n), d.pairing_phi(m2, n))) {
          return MoritaIssue{"phi is not additive in M", {m1, m2, n}};
        }
      }
    }
  }
  for (Index m = 0; m < M.order; ++m) {
    for (Index n1 = 0; n1 < N.order; ++n1) {
      for (Index n2 = 0; n2 < N.order; ++n2) {
        if (d.pairing_phi(m, N.plus(n1, n2)) !=
            A.add(d.pairing_phi(m, n1), d.pairing_phi(m, n2))) {
          return MoritaIssue{"phi is not additive in N", {m, n1, n2}};
        }
      }
    }
  }
  for (Index a = 0; a < A.order(); ++a) {
    for (Index m = 0; m < M.order; ++m) {
      for (Index n = 0; n < N.order; ++n) {
        if (d.pairing_phi(M.lact(a, m), n) != A.mul(a, d.pairing_phi(m, n))) {
          return MoritaIssue{"phi is not left A-linear", {a, m, n}};
        }
        if (d.pairing_phi(m, N.ract(n, a)) != A.mul(d.pairing_phi(m, n), a)) {
          return MoritaIssue{"phi is not right A-linear", {m, n, a}};
        }
      }
    }
  }
  for (Index m = 0; m < M.order; ++m) {
    for (Index b = 0; b < B.order(); ++b) {
      for (Index n = 0; n < N.order; ++n) {
        if (d.pairing_phi(M.ract(m, b), n) != d.pairing_phi(m, N.lact(b, n))) {
          return MoritaIssue{"phi is not B-balanced", {m, b, n}};
        }
      }
    }
  }
  for (Index n1 = 0; n1 < N.order; ++n1) {
    for (Index n2 = 0; n2 < N.order; ++n2) {
      for (Index m = 0; m < M.order; ++m) {
        if (d.pairing_psi(N.plus(n1, n2), m) !=
            B.add(d.pairing_psi(n1, m), d.pairing_psi(n2, m))) {
          return MoritaIssue{"psi is not additive in N", {n1, n2, m}};
        }
      }
    }
  }
  for (Index n = 0; n < N.order; ++n) {
    for (Index m1 = 0; m1 < M.order; ++m1) {
      for (Index m2 = 0; m2 < M.order; ++m2) {
        if (d.pairing_psi(n, M.plus(m1, m2)) !=
            B.add(d.pairing_psi(n, m1), d.pairing_psi(n, m2))) {
          return MoritaIssue{"psi is not additive in M", {n, m1, m2}};
        }
      }
    }
  }
  for (Index b = 0; b < B.order(); ++b) {
    for (Index n = 0; n < N.order; ++n) {
      for (Index m = 0; m < M.order; ++m) {
        if (d.pairing_psi(N.lact(b, n), m) != B.mul(b, d.pairing_psi(n, m))) {
          return MoritaIssue{"psi is not left B-linear", {b, n, m}};
        }
        if (d.pairing_psi(n, M.ract(m, b)) != B.mul(d.pairing_psi(n, m), b)) {
          return MoritaIssue{"psi is not right B-linear", {n, m, b}};
        }
      }
    }
  }
  for (Index n = 0; n < N.order; ++n) {
    for (Index a = 0; a < A.order(); ++a) {
      for (Index m = 0; m < M.order; ++m) {
        if (d.pairing_psi(N.ract(n, a), m) != d.pairing_psi(n, M.lact(a, m))) {
          return MoritaIssue{"psi is not A-balanced", {n, a, m}};
        }
      }
    }
  }

  // the balance identities (mn)m' = m(nm') and (nm)n' = n(mn')
  for (Index m = 0; m < M.order; ++m) {
    for (Index n = 0; n < N.order; ++n) {
      for (Index m2 = 0; m2 < M.order; ++m2) {
        if (M.lact(d.pairing_phi(m, n), m2) != M.ract(m, d.pairing_psi(n, m2))) {
          return MoritaIssue{"(mn)m' != m(nm')", {m, n, m2}};
        }
      }
      for (Index n2 = 0; n2 < N.order; ++n2) {
        if (N.lact(d.pairing_psi(n, m), n2) != N.ract(n, d.pairing_phi(m, n2))) {
          return MoritaIssue{"(nm)n' != n(mn')", {n, m, n2}};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {
int64_t morita_point(const MoritaData& d, bool identity) {
  std::vector<int64_t> digits = {
      identity ? d.A->one() : d.A->zero(), d.M.zero, d.N.zero,
      identity ? d.B->one() : d.B->zero()};
  MixedRadix radix({d.A->order(), d.M.order, d.N.order, d.B->order()});
  return radix.encode(digits);
}
}  // namespace

MoritaRing::MoritaRing(MoritaData data)
    : FiniteRing(data.A->order() * data.M.order * data.N.order * data.B->order(),
                 static_cast<Index>(morita_point(data, false)),
                 static_cast<Index>(morita_point(data, true)), data.name),
      data_(std::move(data)) {
  radix_ = MixedRadix({data_.A->order(), data_.M.order, data_.N.order, data_.B->order()});
}

Index MoritaRing::encode(const MoritaBlock& e) const {
  return static_cast<Index>(radix_.encode({e.a, e.m, e.n, e.b}));
}

MoritaBlock MoritaRing::decode(Index x) const {
  auto d = radix_.decode(x);
  return {static_cast<Index>(d[0]), static_cast<Index>(d[1]), static_cast<Index>(d[2]),
          static_cast<Index>(d[3])};
}

Index MoritaRing::add_impl(Index a, Index b) const {
  auto x = decode(a), y = decode(b);
  return encode({data_.A->add(x.a, y.a), data_.M.plus(x.m, y.m), data_.N.plus(x.n, y.n),
                 data_.B->add(x.b, y.b)});
}

Index MoritaRing::neg_impl(Index a) const {
  auto x = decode(a);
  return encode({data_.A->neg(x.a), data_.M.neg[x.m], data_.N.neg[x.n], data_.B->neg(x.b)});
}

Index MoritaRing::mul_impl(Index a, Index b) const {
  auto x = decode(a), y = decode(b);
  Index ra = data_.A->add(data_.A->mul(x.a, y.a), data_.pairing_phi(x.m, y.n));
  Index rm = data_.M.plus(data_.M.lact(x.a, y.m), data_.M.ract(x.m, y.b));
  Index rn = data_.N.plus(data_.N.ract(x.n, y.a), data_.N.lact(x.b, y.n));
  Index rb = data_.B->add(data_.pairing_psi(x.n, y.m), data_.B->mul(x.b, y.b));
  return encode({ra, rm, rn, rb});
}

std::string MoritaRing::label(Index x) const {
  auto e = decode(x);
  std::string lm = data_.M.labels.empty() ? std::to_string(e.m) : data_.M.labels[e.m];
  std::string ln = data_.N.labels.empty() ? std::to_string(e.n) : data_.N.labels[e.n];
  return "[[" + data_.A->label(e.a) + "," + lm + "],[" + ln + "," +
         data_.B->label(e.b) + "]]";
}

std::optional<std::vector<Index>> MoritaRing::structural_jacobson() const {
  // Block shape [[J(A), M],[N, J(B)]], valid when the trace ideals land inside
  // the radicals of A and B.
  RadicalData ja = jacobson_radical(*data_.A);
  RadicalData jb = jacobson_radical(*data_.B);
  for (Index m = 0; m < data_.M.order; ++m) {
    for (Index n = 0; n < data_.N.order; ++n) {
      if (!ja.ideal.contains(data_.pairing_phi(m, n))) return std::nullopt;
      if (!jb.ideal.contains(data_.pairing_psi(n, m))) return std::nullopt;
    }
  }
  std::vector<Index> out;
  for (Index a : ja.ideal.indices()) {
    for (Index m = 0; m < data_.M.order; ++m) {
      for (Index n = 0; n < data_.N.order; ++n) {
        for (Index b : jb.ideal.indices()) out.push_back(encode({a, m, n, b}));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MoritaResult morita_ring(const MoritaData& d, const Limits& lim) {
  if (auto issue = validate_morita(d)) {
    std::string at;
    for (int64_t v : issue->at) at += " " + std::to_string(v);
    throw RingError("morita data rejected: " + issue->what + " at witness" + at);
  }
  uint64_t est = sat_mul(sat_mul(static_cast<uint64_t>(d.A->order()),
                                 static_cast<uint64_t>(d.M.order)),
                         sat_mul(static_cast<uint64_t>(d.N.order),
                                 static_cast<uint64_t>(d.B->order())));
  check_cap(est, lim, d.name);
  MoritaResult out;
  auto ring = std::make_shared<MoritaRing>(d);
  ring->init_tables();
  out.ring = ring;

  std::vector<Index> phi_image, psi_image;
  for (Index m = 0; m < d.M.order; ++m) {
    for (Index n = 0; n < d.N.order; ++n) {
      phi_image.push_back(d.pairing_phi(m, n));
      psi_image.push_back(d.pairing_psi(n, m));
    }
  }
  Subset mn = additive_span(*d.A, phi_image);
  Subset nm = additive_span(*d.B, psi_image);
  out.trace_mn = mn.indices();
  out.trace_nm = nm.indices();
  out.mn_nilpotency = ideal_nilpotency_index(*d.A, mn);
  out.nm_nilpotency = ideal_nilpotency_index(*d.B, nm);
  return out;
}

namespace {
BimoduleTable ring_as_bimodule(const FiniteRing& r, int64_t left_order, int64_t right_order) {
  BimoduleTable m;
  m.order = r.order();
  m.zero = r.zero();
  m.right_cols = right_order;
  m.add.resize(static_cast<size_t>(m.order) * m.order);
  m.neg.resize(static_cast<size_t>(m.order));
  m.labels.resize(static_cast<size_t>(m.order));
  for (Index a = 0; a < m.order; ++a) {
    m.neg[a] = r.neg(a);
    m.labels[a] = r.label(a);
    for (Index b = 0; b < m.order; ++b) m.add[static_cast<size_t>(a) * m.order + b] = r.add(a, b);
  }
  m.left.resize(static_cast<size_t>(left_order) * m.order);
  m.right.resize(static_cast<size_t>(m.order) * right_order);
  return m;
}
}  // namespace

MoritaData morita_from_ideal(RingPtr r, const Subset& ideal) {
  if (!is_two_sided_ideal(*r, ideal)) {
    throw RingError("morita_from_ideal needs a two-sided ideal");
  }
  auto elems = ideal.indices();
  const int64_t k = static_cast<int64_t>(elems.size());
  std::vector<int> pos(static_cast<size_t>(r->order()), -1);
  for (size_t p = 0; p < elems.size(); ++p) pos[elems[p]] = static_cast<int>(p);

  BimoduleTable m;
  m.order = k;
  m.zero = pos[r->zero()];
  m.right_cols = r->order();
  m.add.resize(static_cast<size_t>(k) * k);
  m.neg.resize(static_cast<size_t>(k));
  m.labels.resize(static_cast<size_t>(k));
  for (int64_t i = 0; i < k; ++i) {
    m.neg[i] = pos[r->neg(elems[i])];
    m.labels[i] = r->label(elems[i]);
    for (int64_t j = 0; j < k; ++j) {
      m.add[i * k + j] = pos[r->add(elems[i], elems[j])];
    }
  }
  m.left.resize(static_cast<size_t>(r->order()) * k);
  m.right.resize(static_cast<size_t>(k) * r->order());
  for (Index a = 0; a < r->order(); ++a) {
    for (int64_t i = 0; i < k; ++i) {
      m.left[static_cast<size_t>(a) * k + i] = pos[r->mul(a, elems[i])];
      m.right[static_cast<size_t>(i) * r->order() + a] = pos[r->mul(elems[i], a)];
    }
  }

  MoritaData d;
  d.A = r;
  d.B = r;
  d.M = m;
  d.N = m;
  d.phi.resize(static_cast<size_t>(k) * k);
  d.psi.resize(static_cast<size_t>(k) * k);
  for (int64_t i = 0; i < k; ++i) {
    for (int64_t j = 0; j < k; ++j) {
      d.phi[i * k + j] = r->mul(elems[i], elems[j]);
      d.psi[i * k + j] = r->mul(elems[i], elems[j]);
    }
  }
  d.name = "MOR(" + r->provenance() + ", I=" + std::to_string(k) + ")";
  return d;
}

MoritaData morita_k_s(RingPtr r, Index s) {
  const int64_t n = r->order();
  BimoduleTable m = ring_as_bimodule(*r, n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index x = 0; x < n; ++x) {
      m.left[static_cast<size_t>(a) * n + x] = r->mul(a, x);
      m.right[static_cast<size_t>(x) * n + a] = r->mul(x, a);
    }
  }
  MoritaData d;
  d.A = r;
  d.B = r;
  d.M = m;
  d.N = m;
  d.phi.resize(static_cast<size_t>(n) * n);
  d.psi.resize(static_cast<size_t>(n) * n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      d.phi[static_cast<size_t>(x) * n + y] = r->mul(s, r->mul(x, y));
      d.psi[static_cast<size_t>(x) * n + y] = r->mul(s, r->mul(x, y));
    }
  }
  d.name = "MOR-K(" + r->provenance() + ", s=" + r->label(s) + ")";
  return d;
}

MoritaData morita_upper_triangular(RingPtr r) {
  const int64_t n = r->order();
  BimoduleTable m = ring_as_bimodule(*r, n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index x = 0; x < n; ++x) {
      m.left[static_cast<size_t>(a) * n + x] = r->mul(a, x);
      m.right[static_cast<size_t>(x) * n + a] = r->mul(x, a);
    }
  }
  BimoduleTable zero;
  zero.order = 1;
  zero.zero = 0;
  zero.right_cols = n;
  zero.add = {0};
  zero.neg = {0};
  zero.labels = {"0"};
  zero.left.assign(static_cast<size_t>(n), 0);
  zero.right.assign(static_cast<size_t>(n), 0);

  MoritaData d;
  d.A = r;
  d.B = r;
  d.M = m;
  d.N = zero;
  d.phi.assign(static_cast<size_t>(n) * 1, r->zero());
  d.psi.assign(static_cast<size_t>(1) * n, r->zero());
  d.name = "MOR-T(" + r->provenance() + ")";
  return d;
}

// ---------------------------------------------------------------------------
// Table rings
// ---------------------------------------------------------------------------

TableRing::TableRing(int64_t order, Index zero, Index one, std::vector<Index> add,
                     std::vector<Index> mul, std::vector<Index> neg, std::string provenance)
    : FiniteRing(order, zero, one, std::move(provenance)),
      add_(std::move(add)), mul_(std::move(mul)), neg_(std::move(neg)) {
  if (add_.size() != static_cast<size_t>(order) * order ||
      mul_.size() != static_cast<size_t>(order) * order ||
      neg_.size() != static_cast<size_t>(order)) {
    throw RingError("table ring dimensions are inconsistent");
  }
}

std::shared_ptr<const TableRing> table_ring(int64_t order, Index zero, Index one,
                                            std::vector<Index> add, std::vector<Index> mul,
                                            std::vector<Index> neg, std::string provenance) {
  auto r = std::make_shared<TableRing>(order, zero, one, std::move(add), std::move(mul),
                                       std::move(neg), std::move(provenance));
  r->init_tables();
  return r;
}

}  // namespace ringlab
