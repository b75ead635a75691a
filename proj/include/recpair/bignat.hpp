#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace recpair {

// Arbitrary-precision unsigned integer. Little-endian base-2^32 limbs with
// no trailing zero limbs, so defaulted equality is structural equality.
// Only the operations the chain polynomials need are provided.
class BigNat {
public:
  BigNat() = default;  // zero
  BigNat(std::uint64_t value);

  static BigNat pow(const BigNat& base, std::size_t exponent);

  BigNat& operator+=(const BigNat& rhs);
  friend BigNat operator+(BigNat lhs, const BigNat& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend BigNat operator*(const BigNat& lhs, const BigNat& rhs);

  bool is_zero() const { return limbs_.empty(); }
  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const;  // precondition: fits_u64()

  std::string to_decimal() const;

  friend bool operator==(const BigNat&, const BigNat&) = default;
  friend std::strong_ordering operator<=>(const BigNat& lhs, const BigNat& rhs);

private:
  std::vector<std::uint32_t> limbs_;

  void trim();
};

}  // namespace recpair
