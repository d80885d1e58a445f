#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cellsheaf {

/// Exact rational number. Values that fit in 64-bit numerator and denominator
/// use machine arithmetic; anything larger is carried as a GMP rational and
/// demoted again once it fits.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
    Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    std::string str() const;
    mpq_class to_mpq() const;
    double to_double() const;

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;
    bool is_big() const { return static_cast<bool>(big_); }

    /// Numerator and denominator as decimal strings.
    std::string numerator_str() const;
    std::string denominator_str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Integer gcd of numerators and lcm of denominators, used by
    /// fraction-free elimination.
    static Rational gcd(const Rational& a, const Rational& b);

private:
    void set_from_wide(__int128 n, __int128 d);
    void set_from_mpq(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace cellsheaf
