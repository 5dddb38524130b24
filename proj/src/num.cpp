#include "sievekit/num.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace sievekit {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
    if (m >> 32) mag_.push_back(static_cast<std::uint32_t>(m >> 32));
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        out.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(d));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int m = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? m : -m;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt out;
    if (a.sign_ == b.sign_) {
        out.sign_ = a.sign_;
        out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    } else {
        int m = BigInt::cmp_mag(a.mag_, b.mag_);
        if (m == 0) return BigInt();
        if (m > 0) {
            out.sign_ = a.sign_;
            out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        } else {
            out.sign_ = b.sign_;
            out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        }
    }
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt out;
    out.sign_ = a.sign_ * b.sign_;
    out.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.mag_.size(); ++j) {
            std::uint64_t cur = out.mag_[i + j] +
                                static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] + carry;
            out.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + b.mag_.size();
        while (carry) {
            std::uint64_t cur = out.mag_[k] + carry;
            out.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

BigInt BigInt::shifted_left(unsigned bits) const {
    if (sign_ == 0 || bits == 0) return *this;
    BigInt out = *this;
    unsigned limbs = bits / 32, rem = bits % 32;
    if (rem) {
        std::uint32_t carry = 0;
        for (auto& limb : out.mag_) {
            std::uint64_t cur = (static_cast<std::uint64_t>(limb) << rem) | carry;
            limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = static_cast<std::uint32_t>(cur >> 32);
        }
        if (carry) out.mag_.push_back(carry);
    }
    if (limbs) out.mag_.insert(out.mag_.begin(), limbs, 0);
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a.mag_, b.mag_) < 0) {
        q = BigInt();
        r = a;
        return;
    }
    // Shift-subtract long division on magnitudes.
    std::size_t abits = a.mag_.size() * 32;
    BigInt rem, quot;
    rem.sign_ = 0;
    quot.mag_.assign(a.mag_.size(), 0);
    BigInt babs = b;
    babs.sign_ = 1;
    for (std::size_t i = abits; i-- > 0;) {
        rem = rem.shifted_left(1);
        std::uint32_t bit = (a.mag_[i / 32] >> (i % 32)) & 1u;
        if (bit) {
            if (rem.sign_ == 0) {
                rem.sign_ = 1;
                rem.mag_.assign(1, 1);
            } else {
                rem.mag_[0] |= 1u;
            }
        }
        if (rem.sign_ != 0 && cmp_mag(rem.mag_, babs.mag_) >= 0) {
            rem.mag_ = sub_mag(rem.mag_, babs.mag_);
            rem.trim();
            quot.mag_[i / 32] |= (1u << (i % 32));
        }
    }
    quot.sign_ = 1;
    quot.trim();
    if (!quot.mag_.empty()) quot.sign_ = a.sign_ * b.sign_;
    if (!rem.mag_.empty()) rem.sign_ = a.sign_;
    q = quot;
    r = rem;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

BigInt BigInt::pow(const BigInt& base, unsigned e) {
    BigInt out(1), acc = base;
    while (e) {
        if (e & 1u) out = out * acc;
        e >>= 1;
        if (e) acc = acc * acc;
    }
    return out;
}

BigInt BigInt::from_decimal(std::string_view s) {
    if (s.empty()) throw parse_error("empty integer literal");
    int sign = 1;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1 : 1;
        i = 1;
    }
    if (i == s.size()) throw parse_error("integer literal has no digits");
    BigInt out;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw parse_error("bad digit in integer literal: " + std::string(s));
        out = out * BigInt(10) + BigInt(s[i] - '0');
    }
    if (sign < 0) out = -out;
    return out;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    BigInt n = *this;
    n.sign_ = 1;
    std::string out;
    const BigInt chunk(1000000000);
    while (!n.is_zero()) {
        BigInt q, r;
        divmod(n, chunk, q, r);
        std::uint64_t part = 0;
        for (std::size_t i = r.mag_.size(); i-- > 0;) part = (part << 32) | r.mag_[i];
        char buf[16];
        std::snprintf(buf, sizeof buf, q.is_zero() ? "%llu" : "%09llu",
                      static_cast<unsigned long long>(part));
        out.insert(0, buf);
        n = q;
    }
    if (sign_ < 0) out.insert(0, "-");
    return out;
}

double BigInt::to_double() const {
    double out = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) out = out * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -out : out;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    std::uint64_t m = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    if (sign_ >= 0) return m <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    return m <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1;
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt does not fit int64");
    std::uint64_t m = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    return sign_ < 0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

bool Rational::is_integer() const { return den_ == BigInt(1); }

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}
Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

int Rational::cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.sign() < 0 && !r.is_zero()) q = q - BigInt(1);
    return q;
}

Rational Rational::abs() const { return num_.sign() < 0 ? -*this : *this; }

Rational Rational::pow(const Rational& base, unsigned e) {
    return Rational(BigInt::pow(base.num_, e), BigInt::pow(base.den_, e));
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("cannot lift non-finite double");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, 0.5 <= |m| < 1
    // 53 doublings make the mantissa integral.
    std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    BigInt num(mant), den(1);
    if (exp >= 0)
        num = num.shifted_left(static_cast<unsigned>(exp));
    else
        den = den.shifted_left(static_cast<unsigned>(-exp));
    return Rational(num, den);
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::parse(std::string_view s) {
    // Trim surrounding whitespace.
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw parse_error("empty numeric literal");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = BigInt::from_decimal(s.substr(0, slash));
        BigInt den = BigInt::from_decimal(s.substr(slash + 1));
        if (den.is_zero()) throw parse_error("zero denominator in: " + std::string(s));
        return Rational(num, den);
    }

    std::size_t epos = s.find_first_of("eE");
    std::string_view mant = s.substr(0, epos);
    long expo = 0;
    if (epos != std::string_view::npos) {
        auto es = s.substr(epos + 1);
        if (es.empty()) throw parse_error("empty exponent in: " + std::string(s));
        BigInt e = BigInt::from_decimal(es);
        if (!e.fits_int64() || e.to_int64() > 4096 || e.to_int64() < -4096)
            throw parse_error("exponent out of range in: " + std::string(s));
        expo = static_cast<long>(e.to_int64());
    }

    std::string digits;
    int sign = 1;
    long frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    for (std::size_t i = 0; i < mant.size(); ++i) {
        char c = mant[i];
        if (i == 0 && (c == '+' || c == '-')) {
            sign = c == '-' ? -1 : 1;
        } else if (c == '.') {
            if (seen_dot) throw parse_error("bad numeric literal: " + std::string(s));
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else {
            throw parse_error("bad numeric literal: " + std::string(s));
        }
    }
    if (!seen_digit) throw parse_error("numeric literal has no digits: " + std::string(s));
    BigInt num = BigInt::from_decimal(digits.empty() ? "0" : digits);
    if (sign < 0) num = -num;
    long p10 = expo - frac_digits;
    BigInt den(1);
    if (p10 >= 0)
        num = num * BigInt::pow(BigInt(10), static_cast<unsigned>(p10));
    else
        den = BigInt::pow(BigInt(10), static_cast<unsigned>(-p10));
    return Rational(num, den);
}

const Rational& Num::rat() const {
    if (!exact_) throw std::logic_error("Num: rational value requested from inexact scalar");
    return rat_;
}

Num operator+(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return Num(a.rat_ + b.rat_);
    return Num(a.to_double() + b.to_double());
}
Num operator-(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return Num(a.rat_ - b.rat_);
    return Num(a.to_double() - b.to_double());
}
Num operator*(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return Num(a.rat_ * b.rat_);
    return Num(a.to_double() * b.to_double());
}
Num operator/(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return Num(a.rat_ / b.rat_);
    return Num(a.to_double() / b.to_double());
}
Num Num::operator-() const { return exact_ ? Num(-rat_) : Num(-dbl_); }

int Num::cmp(const Num& a, const Num& b) {
    if (a.exact_ && b.exact_) return Rational::cmp(a.rat_, b.rat_);
    double da = a.to_double(), db = b.to_double();
    if (da < db) return -1;
    if (da > db) return 1;
    return 0;
}

bool Num::leq_tol(const Num& a, const Num& b, double tol) {
    if (a.exact_ && b.exact_) return Rational::cmp(a.rat_, b.rat_) <= 0;
    return a.to_double() <= b.to_double() + tol;
}

bool Num::eq_tol(const Num& a, const Num& b, double tol) {
    if (a.exact_ && b.exact_) return Rational::cmp(a.rat_, b.rat_) == 0;
    return std::fabs(a.to_double() - b.to_double()) <= tol;
}

Num Num::abs() const { return exact_ ? Num(rat_.abs()) : Num(std::fabs(dbl_)); }

Num Num::pow_int(const Num& base, unsigned e) {
    if (base.exact_) return Num(Rational::pow(base.rat_, e));
    return Num(std::pow(base.dbl_, static_cast<double>(e)));
}

std::string Num::to_string() const {
    if (exact_) return rat_.to_string();
    std::ostringstream os;
    os.precision(17);
    os << dbl_;
    return os.str();
}

}  // namespace sievekit
