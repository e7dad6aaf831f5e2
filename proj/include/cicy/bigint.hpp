#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicy {

// Error type for all domain failures in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Arbitrary-precision signed integer, sign + little-endian 32-bit limbs.
// Small scope, so no fancy algorithms: schoolbook multiply, Knuth
// division. Everything self-contained so the library has no external
// arithmetic dependency.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design, literals are common
  static BigInt from_string(const std::string& s);

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncated quotient/remainder (C semantics: remainder has the
  // dividend's sign). Divides by zero throw.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;

  // Quotient when the division is known exact; throws otherwise.
  static BigInt divexact(const BigInt& a, const BigInt& b);
  static BigInt gcd(BigInt a, BigInt b);  // non-negative
  BigInt abs() const;

  int compare(const BigInt& o) const;  // -1, 0, +1
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  std::string to_string() const;
  // Throws if the value does not fit.
  long long to_int64() const;
  bool fits_int64() const;

 private:
  int sign_ = 0;
  std::vector<std::uint32_t> mag_;  // no trailing zero limbs; empty iff sign_ == 0

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static void divmod_mag(const std::vector<std::uint32_t>& u,
                         const std::vector<std::uint32_t>& v,
                         std::vector<std::uint32_t>& q,
                         std::vector<std::uint32_t>& r);
};

// Exact rational with normalized representation (den > 0, gcd(num, den) = 1).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT
  Rational(BigInt num, BigInt den);
  explicit Rational(BigInt v) : num_(std::move(v)), den_(1) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on zero divisor
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }

  std::string to_string() const;  // "n" or "n/d"

 private:
  BigInt num_, den_;
  void normalize();
};

}  // namespace cicy
