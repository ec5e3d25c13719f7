#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ringlab {

// Saturating arithmetic for size estimates computed before any carrier exists.
constexpr uint64_t kOrderSaturated = UINT64_MAX;

inline uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kOrderSaturated / b) return kOrderSaturated;
  return a * b;
}

inline uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  while (exp-- > 0) {
    r = sat_mul(r, base);
    if (r == kOrderSaturated) return r;
  }
  return r;
}

bool is_prime(int64_t n);
std::vector<int64_t> distinct_prime_factors(int64_t n);
std::vector<std::pair<int64_t, int>> factorize(int64_t n);
int p_valuation(int64_t n, int64_t p);
int64_t ipow(int64_t base, int exp);

// Index codec for tuples with per-position bases. Digit 0 is the most
// significant position, so enumeration order is lexicographic in the tuple.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<int64_t> bases);

  int64_t size() const { return size_; }
  int positions() const { return static_cast<int>(bases_.size()); }
  int64_t base(int pos) const { return bases_[pos]; }

  int64_t encode(const std::vector<int64_t>& digits) const;
  std::vector<int64_t> decode(int64_t index) const;
  void decode_into(int64_t index, std::vector<int64_t>& digits) const;

  // allocation-free codecs for hot operation paths
  template <typename T>
  void decode_to(int64_t index, T* out) const {
    for (size_t i = 0; i < bases_.size(); ++i) {
      out[i] = static_cast<T>(index / strides_[i]);
      index -= static_cast<int64_t>(out[i]) * strides_[i];
    }
  }
  template <typename T>
  int64_t encode_from(const T* digits) const {
    int64_t idx = 0;
    for (size_t i = 0; i < bases_.size(); ++i) {
      idx += static_cast<int64_t>(digits[i]) * strides_[i];
    }
    return idx;
  }

 private:
  std::vector<int64_t> bases_;
  std::vector<int64_t> strides_;
  int64_t size_ = 1;
};

// Partitions of n into positive parts, each partition in descending order,
// listed deterministically (largest first part first).
std::vector<std::vector<int>> partitions_of(int n);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace ringlab
