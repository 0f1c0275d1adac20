#include "homind/bignum.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace homind {

BigUint::BigUint(std::uint64_t v) {
    if (v) limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

std::uint64_t BigUint::as_u64() const {
    assert(fits_u64());
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& o) {
    std::uint64_t carry = 0;
    std::size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0u);
        limbs_[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    assert(*this >= o);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < o.limbs_.size() ? static_cast<std::int64_t>(o.limbs_[i]) : 0);
        borrow = 0;
        if (s < 0) { s += (1ll << 32); borrow = 1; }
        limbs_[i] = static_cast<std::uint32_t>(s);
    }
    assert(borrow == 0);
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& o) const {
    if (is_zero() || o.is_zero()) return BigUint();
    BigUint r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = r.limbs_[i + j] +
                                static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t j = o.limbs_.size();
        while (carry) {
            std::uint64_t cur = r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++j;
        }
    }
    r.trim();
    return r;
}

std::strong_ordering BigUint::operator<=>(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size())
        return limbs_.size() <=> o.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] <=> o.limbs_[i];
    return std::strong_ordering::equal;
}

void BigUint::divmod(const BigUint& a, const BigUint& b, BigUint& q, BigUint& r) {
    if (b.is_zero()) throw std::domain_error("BigUint division by zero");
    q = BigUint();
    r = BigUint();
    if (a < b) { r = a; return; }
    // bitwise long division
    int bits = static_cast<int>(a.limbs_.size()) * 32;
    q.limbs_.assign(a.limbs_.size(), 0);
    for (int i = bits - 1; i >= 0; --i) {
        // r <<= 1
        std::uint32_t carry = 0;
        for (auto& limb : r.limbs_) {
            std::uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) r.limbs_.push_back(carry);
        if ((a.limbs_[i / 32] >> (i % 32)) & 1u) {
            if (r.limbs_.empty()) r.limbs_.push_back(1);
            else {
                std::size_t j = 0;
                while (true) {
                    if (j == r.limbs_.size()) { r.limbs_.push_back(1); break; }
                    if (++r.limbs_[j] != 0) break;
                    ++j;
                }
            }
        }
        if (r >= b) {
            r -= b;
            q.limbs_[i / 32] |= (1u << (i % 32));
        }
    }
    q.trim();
    r.trim();
}

BigUint BigUint::operator/(const BigUint& o) const {
    BigUint q, r;
    divmod(*this, o, q, r);
    return q;
}

BigUint BigUint::operator%(const BigUint& o) const {
    BigUint q, r;
    divmod(*this, o, q, r);
    return r;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    while (!b.is_zero()) {
        BigUint r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> tmp = limbs_;
    std::string out;
    while (!tmp.empty()) {
        // divide by 1e9 in place
        std::uint64_t rem = 0;
        for (std::size_t i = tmp.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | tmp[i];
            tmp[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
        std::string chunk = std::to_string(rem);
        if (tmp.empty()) {
            std::reverse(chunk.begin(), chunk.end());
            out += chunk;
        } else {
            std::reverse(chunk.begin(), chunk.end());
            chunk.resize(9, '0');
            out += chunk;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

BigUint BigUint::from_string(const std::string& s) {
    BigUint r;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("BigUint::from_string");
        r = r * BigUint(10) + BigUint(static_cast<std::uint64_t>(c - '0'));
    }
    return r;
}

std::size_t BigUint::hash() const {
    std::size_t h = limbs_.size();
    for (auto limb : limbs_) h = h * 1000003u ^ limb;
    return h;
}

BigInt::BigInt(std::int64_t v)
    : mag_(static_cast<std::uint64_t>(v < 0 ? -(v + 1) + 1ull : v)), neg_(v < 0) {}

BigInt::BigInt(BigUint mag, bool negative) : mag_(std::move(mag)), neg_(negative) { normalize(); }

void BigInt::normalize() {
    if (mag_.is_zero()) neg_ = false;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.mag_.is_zero()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (neg_ == o.neg_) return BigInt(mag_ + o.mag_, neg_);
    if (mag_ >= o.mag_) return BigInt(mag_ - o.mag_, neg_);
    return BigInt(o.mag_ - mag_, o.neg_);
}

BigInt BigInt::operator*(const BigInt& o) const {
    return BigInt(mag_ * o.mag_, neg_ != o.neg_);
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (neg_ != o.neg_) return neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
    auto c = mag_ <=> o.mag_;
    if (c == std::strong_ordering::equal) return c;
    if (neg_) return c == std::strong_ordering::less ? std::strong_ordering::greater
                                                     : std::strong_ordering::less;
    return c;
}

std::string BigInt::to_string() const {
    return (neg_ ? "-" : "") + mag_.to_string();
}

std::size_t BigInt::hash() const { return mag_.hash() * 2 + (neg_ ? 1 : 0); }

Rational::Rational(BigInt num, BigUint den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
    normalize();
}

Rational Rational::of(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational with zero denominator");
    bool neg = (num < 0) != (den < 0);
    std::uint64_t n = num < 0 ? static_cast<std::uint64_t>(-(num + 1)) + 1 : static_cast<std::uint64_t>(num);
    std::uint64_t d = den < 0 ? static_cast<std::uint64_t>(-(den + 1)) + 1 : static_cast<std::uint64_t>(den);
    return Rational(BigInt(BigUint(n), neg), BigUint(d));
}

void Rational::normalize() {
    if (num_.is_zero()) { den_ = BigUint(1); return; }
    BigUint g = BigUint::gcd(num_.magnitude(), den_);
    if (g != BigUint(1)) {
        num_ = BigInt(num_.magnitude() / g, num_.negative());
        den_ = den_ / g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    BigInt n = num_ * BigInt(o.den_) + o.num_ * BigInt(den_);
    return Rational(n, den_ * o.den_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    BigInt n = num_ * BigInt(o.den_);
    BigInt d = o.num_ * BigInt(den_);
    return Rational(d.negative() ? -n : n, d.magnitude());
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return num_ * BigInt(o.den_) <=> o.num_ * BigInt(den_);
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    bool neg = !ns.empty() && ns[0] == '-';
    if (neg) ns = ns.substr(1);
    BigUint n = BigUint::from_string(ns);
    BigUint d = slash == std::string::npos ? BigUint(1) : BigUint::from_string(s.substr(slash + 1));
    return Rational(BigInt(n, neg), d);
}

std::size_t Rational::hash() const { return num_.hash() * 1000003u ^ den_.hash(); }

} // namespace homind
