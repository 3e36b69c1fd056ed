#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace hypercrit {

/// Arbitrary-precision signed integer. Sphere counts of rank-k free groups
/// overflow 64 bits around radius 40 (k = 2) or radius 25 (k = 4), so every
/// counting path uses this type. Only the operations the counting and
/// rational arithmetic actually need are provided.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);
    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const = default;

    /// Quotient and remainder under division by a small positive integer.
    BigInt divmod_small(std::uint32_t d, std::uint32_t& rem) const;

    /// Truncated quotient and remainder; remainder carries the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt pow(const BigInt& base, unsigned e);

    std::string to_string() const;
    double to_double() const;

    /// Exact conversion when the value fits; throws otherwise.
    long long to_int64() const;
    bool fits_int64() const;

private:
    // Little-endian base 2^32 magnitude, no leading zero limbs.
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static void add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    // Requires a >= b.
    static void sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    void trim();
};

/// Exact rational number over BigInt, always in lowest terms with a positive
/// denominator. Carries the exact cylinder masses of conformal densities.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const = default;

    /// "p/q", or just "p" when the denominator is 1.
    std::string to_string() const;
    double to_double() const;

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

}  // namespace hypercrit
