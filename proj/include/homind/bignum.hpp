#pragma once

// Exact arbitrary-precision naturals, integers and rationals. Homomorphism
// counts and interpolation coefficients must never round or overflow, so
// everything downstream is built on these.

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace homind {

class BigUint {
  public:
    BigUint() = default;
    BigUint(std::uint64_t v);

    static BigUint from_string(const std::string& decimal);

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const { return limbs_.size() <= 2; }
    std::uint64_t as_u64() const; // requires fits_u64()

    BigUint& operator+=(const BigUint& o);
    BigUint& operator-=(const BigUint& o); // requires *this >= o
    BigUint operator+(const BigUint& o) const { BigUint r = *this; r += o; return r; }
    BigUint operator-(const BigUint& o) const { BigUint r = *this; r -= o; return r; }
    BigUint operator*(const BigUint& o) const;

    // division with remainder, schoolbook; used by gcd and printing
    static void divmod(const BigUint& a, const BigUint& b, BigUint& q, BigUint& r);
    BigUint operator/(const BigUint& o) const;
    BigUint operator%(const BigUint& o) const;

    std::strong_ordering operator<=>(const BigUint& o) const;
    bool operator==(const BigUint& o) const = default;

    static BigUint gcd(BigUint a, BigUint b);

    std::string to_string() const;
    std::size_t hash() const;

  private:
    void trim();
    std::vector<std::uint32_t> limbs_; // little endian base 2^32, no trailing zeros
};

class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v);
    BigInt(BigUint mag, bool negative = false);

    bool is_zero() const { return mag_.is_zero(); }
    bool negative() const { return neg_; }
    const BigUint& magnitude() const { return mag_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const { return *this + (-o); }
    BigInt operator*(const BigInt& o) const;

    bool operator==(const BigInt& o) const = default;
    std::strong_ordering operator<=>(const BigInt& o) const;

    std::string to_string() const;
    std::size_t hash() const;

  private:
    void normalize();
    BigUint mag_;
    bool neg_ = false;
};

// always normalized: den > 0, gcd(|num|, den) = 1, zero is 0/1
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(BigInt num, BigUint den);
    static Rational of(std::int64_t num, std::int64_t den);

    bool is_zero() const { return num_.is_zero(); }
    const BigInt& num() const { return num_; }
    const BigUint& den() const { return den_; }
    bool is_integer() const { return den_ == BigUint(1); }

    Rational operator+(const Rational& o) const;
    Rational operator-() const;
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const; // o nonzero

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    std::string to_string() const; // "3", "-1/2"
    static Rational parse(const std::string& s);
    std::size_t hash() const;

  private:
    void normalize();
    BigInt num_;
    BigUint den_;
};

} // namespace homind
