#ifndef SIEVEKIT_NUM_HPP
#define SIEVEKIT_NUM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sievekit {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arbitrary-precision signed integer, sign + base-2^32 magnitude.
// Magnitude is little-endian with no trailing zero limbs; zero has sign 0.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    static BigInt from_decimal(std::string_view s);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const;

    // Truncated toward zero; remainder carries the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    static BigInt gcd(BigInt a, BigInt b);  // nonnegative
    static BigInt pow(const BigInt& base, unsigned e);

    static int cmp(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    std::string to_string() const;
    double to_double() const;
    bool fits_int64() const;
    std::int64_t to_int64() const;  // throws if out of range

    BigInt shifted_left(unsigned bits) const;

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires a >= b.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    void trim();
};

// Normalized fraction: den > 0, gcd(num, den) = 1, zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);

    // Accepts "7", "-3", "1.25", "2e-3", "4/3".
    static Rational parse(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const;
    int sign() const { return num_.sign(); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    static int cmp(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    BigInt floor() const;
    Rational abs() const;
    static Rational pow(const Rational& base, unsigned e);
    static Rational from_double(double v);  // exact dyadic lift

    double to_double() const;
    // "p/q" for non-integers, plain integer string otherwise.
    std::string to_string() const;

private:
    BigInt num_, den_;
    void normalize();
};

// Scalar that is either an exact rational or a double. Arithmetic between
// two exact values stays exact; anything touching a double becomes double.
class Num {
public:
    Num() : exact_(true), rat_(0), dbl_(0.0) {}
    Num(std::int64_t v) : exact_(true), rat_(v), dbl_(0.0) {}
    Num(int v) : Num(static_cast<std::int64_t>(v)) {}
    Num(Rational r) : exact_(true), rat_(std::move(r)), dbl_(0.0) {}
    Num(double d) : exact_(false), rat_(0), dbl_(d) {}

    static Num parse(std::string_view s) { return Num(Rational::parse(s)); }

    bool is_exact() const { return exact_; }
    const Rational& rat() const;
    double to_double() const { return exact_ ? rat_.to_double() : dbl_; }

    friend Num operator+(const Num& a, const Num& b);
    friend Num operator-(const Num& a, const Num& b);
    friend Num operator*(const Num& a, const Num& b);
    friend Num operator/(const Num& a, const Num& b);
    Num operator-() const;

    // Exact comparison when both sides are exact, raw double comparison otherwise.
    static int cmp(const Num& a, const Num& b);
    friend bool operator==(const Num& a, const Num& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Num& a, const Num& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Num& a, const Num& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Num& a, const Num& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Num& a, const Num& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Num& a, const Num& b) { return cmp(a, b) >= 0; }

    // Tolerance applies only when either side is inexact.
    static bool leq_tol(const Num& a, const Num& b, double tol);
    static bool eq_tol(const Num& a, const Num& b, double tol);

    Num abs() const;
    static Num min(const Num& a, const Num& b) { return a <= b ? a : b; }
    static Num max(const Num& a, const Num& b) { return a >= b ? a : b; }
    static Num pow_int(const Num& base, unsigned e);

    std::string to_string() const;

private:
    bool exact_;
    Rational rat_;
    double dbl_;
};

inline constexpr double kDefaultTol = 1e-9;

}  // namespace sievekit

#endif
