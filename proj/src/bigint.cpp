#include "hypercrit/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypercrit {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // Avoid overflow on LLONG_MIN by working in unsigned space.
    unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                 : static_cast<unsigned long long>(v);
    while (m) {
        mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffULL));
        m >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

void BigInt::add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::uint64_t carry = 0;
    std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = carry + a[i] + (i < b.size() ? b[i] : 0);
        a[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

void BigInt::sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        a[i] = static_cast<std::uint32_t>(d);
    }
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = r[i + j] + carry +
                                static_cast<std::uint64_t>(a[i]) * b[j];
            r[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t j = i + b.size();
        while (carry) {
            std::uint64_t cur = r[j] + carry;
            r[j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++j;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) return *this = o;
    if (sign_ == o.sign_) {
        add_mag(mag_, o.mag_);
        return *this;
    }
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) {
        sign_ = 0;
        mag_.clear();
    } else if (c > 0) {
        sub_mag(mag_, o.mag_);
        trim();
    } else {
        std::vector<std::uint32_t> m = o.mag_;
        sub_mag(m, mag_);
        mag_ = std::move(m);
        sign_ = o.sign_;
        trim();
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt& BigInt::operator*=(const BigInt& o) {
    if (sign_ == 0 || o.sign_ == 0) {
        sign_ = 0;
        mag_.clear();
        return *this;
    }
    mag_ = mul_mag(mag_, o.mag_);
    sign_ = sign_ * o.sign_;
    return *this;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int c = cmp_mag(mag_, o.mag_) * sign_;
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt BigInt::divmod_small(std::uint32_t d, std::uint32_t& rem) const {
    if (d == 0) throw std::domain_error("BigInt: division by zero");
    BigInt q;
    q.mag_.resize(mag_.size(), 0);
    std::uint64_t r = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        std::uint64_t cur = (r << 32) | mag_[i];
        q.mag_[i] = static_cast<std::uint32_t>(cur / d);
        r = cur % d;
    }
    rem = static_cast<std::uint32_t>(r);
    q.sign_ = sign_;
    q.trim();
    return q;
}

namespace {

bool mag_is_even(const std::vector<std::uint32_t>& m) { return m.empty() || (m[0] & 1u) == 0; }

void mag_halve(std::vector<std::uint32_t>& m) {
    std::uint32_t carry = 0;
    for (std::size_t i = m.size(); i-- > 0;) {
        std::uint32_t cur = m[i];
        m[i] = (cur >> 1) | (carry << 31);
        carry = cur & 1u;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    q = BigInt();
    r = BigInt();
    if (a.is_zero()) return;
    if (cmp_mag(a.mag_, b.mag_) < 0) {
        r = a;
        return;
    }
    // Binary long division over magnitudes, high bit first.
    std::size_t nbits = a.mag_.size() * 32;
    q.mag_.assign(a.mag_.size(), 0);
    std::vector<std::uint32_t> rem;
    for (std::size_t i = nbits; i-- > 0;) {
        // rem = rem*2 + bit_i(a)
        std::uint32_t carry = (a.mag_[i / 32] >> (i % 32)) & 1u;
        for (std::size_t j = 0; j < rem.size(); ++j) {
            std::uint32_t hi = rem[j] >> 31;
            rem[j] = (rem[j] << 1) | carry;
            carry = hi;
        }
        if (carry) rem.push_back(carry);
        if (cmp_mag(rem, b.mag_) >= 0) {
            sub_mag(rem, b.mag_);
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
            q.mag_[i / 32] |= (1u << (i % 32));
        }
    }
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    r.mag_ = std::move(rem);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Binary GCD over magnitudes.
    unsigned shift = 0;
    while (mag_is_even(a.mag_) && mag_is_even(b.mag_)) {
        mag_halve(a.mag_);
        mag_halve(b.mag_);
        ++shift;
    }
    while (mag_is_even(a.mag_)) mag_halve(a.mag_);
    while (!b.mag_.empty()) {
        while (mag_is_even(b.mag_)) mag_halve(b.mag_);
        if (cmp_mag(a.mag_, b.mag_) > 0) std::swap(a.mag_, b.mag_);
        sub_mag(b.mag_, a.mag_);
        while (!b.mag_.empty() && b.mag_.back() == 0) b.mag_.pop_back();
    }
    BigInt r;
    r.mag_ = std::move(a.mag_);
    for (unsigned i = 0; i < shift; ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < r.mag_.size(); ++j) {
            std::uint64_t cur = (static_cast<std::uint64_t>(r.mag_[j]) << 1) | carry;
            r.mag_[j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) r.mag_.push_back(static_cast<std::uint32_t>(carry));
    }
    r.sign_ = r.mag_.empty() ? 0 : 1;
    return r;
}

BigInt BigInt::pow(const BigInt& base, unsigned e) {
    BigInt r(1), b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::string digits;
    BigInt cur = *this;
    cur.sign_ = 1;
    while (!cur.is_zero()) {
        std::uint32_t rem = 0;
        cur = cur.divmod_small(1000000000u, rem);
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double BigInt::to_double() const {
    double r = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -r : r;
}

bool BigInt::fits_int64() const {
    static const BigInt kMin(std::numeric_limits<long long>::min());
    static const BigInt kMax(std::numeric_limits<long long>::max());
    return *this >= kMin && *this <= kMax;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
    unsigned long long m = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g > BigInt(1)) {
        BigInt q, r;
        BigInt::divmod(num_, g, q, r);
        num_ = q;
        BigInt::divmod(den_, g, q, r);
        den_ = q;
    }
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return (num_ * o.den_) <=> (o.num_ * den_);
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

}  // namespace hypercrit
