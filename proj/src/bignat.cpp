#include "recpair/bignat.hpp"

#include <algorithm>
#include <cassert>

namespace recpair {

BigNat::BigNat(std::uint64_t value) {
  if (value != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(value));
    if (value >> 32) limbs_.push_back(static_cast<std::uint32_t>(value >> 32));
  }
}

void BigNat::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat& BigNat::operator+=(const BigNat& rhs) {
  const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
  limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t sum = carry + limbs_[i];
    if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(sum);
    carry = sum >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigNat operator*(const BigNat& lhs, const BigNat& rhs) {
  BigNat out;
  if (lhs.is_zero() || rhs.is_zero()) return out;
  out.limbs_.assign(lhs.limbs_.size() + rhs.limbs_.size(), 0);
  for (std::size_t i = 0; i < lhs.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
      std::uint64_t cur = out.limbs_[i + j] + carry +
                          static_cast<std::uint64_t>(lhs.limbs_[i]) * rhs.limbs_[j];
      out.limbs_[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    out.limbs_[i + rhs.limbs_.size()] += static_cast<std::uint32_t>(carry);
  }
  out.trim();
  return out;
}

BigNat BigNat::pow(const BigNat& base, std::size_t exponent) {
  BigNat out{1};
  BigNat acc = base;
  while (exponent > 0) {
    if (exponent & 1) out = out * acc;
    exponent >>= 1;
    if (exponent) acc = acc * acc;
  }
  return out;
}

std::uint64_t BigNat::to_u64() const {
  assert(fits_u64());
  std::uint64_t out = 0;
  if (limbs_.size() > 1) out = static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) out |= limbs_[0];
  return out;
}

std::string BigNat::to_decimal() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> work(limbs_.rbegin(), limbs_.rend());  // big-endian
  std::string out;
  while (!work.empty()) {
    std::uint64_t rem = 0;
    std::vector<std::uint32_t> quot;
    quot.reserve(work.size());
    for (std::uint32_t limb : work) {
      std::uint64_t cur = (rem << 32) | limb;
      std::uint32_t q = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
      if (!quot.empty() || q != 0) quot.push_back(q);
    }
    std::string chunk = std::to_string(rem);
    if (!quot.empty()) chunk.insert(0, 9 - chunk.size(), '0');
    out.insert(0, chunk);
    work = std::move(quot);
  }
  return out;
}

std::strong_ordering operator<=>(const BigNat& lhs, const BigNat& rhs) {
  if (lhs.limbs_.size() != rhs.limbs_.size())
    return lhs.limbs_.size() <=> rhs.limbs_.size();
  for (std::size_t i = lhs.limbs_.size(); i-- > 0;) {
    if (lhs.limbs_[i] != rhs.limbs_[i]) return lhs.limbs_[i] <=> rhs.limbs_[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace recpair
