#include "ringlab/util.hpp"

#include <stdexcept>

namespace ringlab {

bool is_prime(int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  std::vector<std::pair<int64_t, int>> out;
  if (n < 0) n = -n;
  for (int64_t p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<int64_t> distinct_prime_factors(int64_t n) {
  std::vector<int64_t> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

int p_valuation(int64_t n, int64_t p) {
  if (n == 0) throw std::invalid_argument("p_valuation(0)");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

MixedRadix::MixedRadix(std::vector<int64_t> bases) : bases_(std::move(bases)) {
  strides_.assign(bases_.size(), 1);
  for (int i = static_cast<int>(bases_.size()) - 1; i >= 0; --i) {
    strides_[i] = size_;
    size_ *= bases_[i];
  }
}

int64_t MixedRadix::encode(const std::vector<int64_t>& digits) const {
  int64_t idx = 0;
  for (size_t i = 0; i < bases_.size(); ++i) idx += digits[i] * strides_[i];
  return idx;
}

std::vector<int64_t> MixedRadix::decode(int64_t index) const {
  std::vector<int64_t> digits(bases_.size());
  decode_into(index, digits);
  return digits;
}

void MixedRadix::decode_into(int64_t index, std::vector<int64_t>& digits) const {
  digits.resize(bases_.size());
  for (size_t i = 0; i < bases_.size(); ++i) {
    digits[i] = index / strides_[i];
    index -= digits[i] * strides_[i];
  }
}

namespace {
void partitions_rec(int n, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(n - part, part, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace ringlab
