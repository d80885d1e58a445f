#include "cellsheaf/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cellsheaf {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    auto hi = static_cast<std::uint64_t>(u >> 64);
    auto lo = static_cast<std::uint64_t>(u);
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &hi);
    z <<= 64;
    mpz_class l;
    mpz_import(l.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &lo);
    z += l;
    return neg ? mpz_class(-z) : z;
}

bool mpz_fits_i64(const mpz_class& z) {
    // mpz_fits_slong_p is enough on LP64 but keep the symmetric range.
    return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z != mpz_class(std::numeric_limits<long>::min());
}

}  // namespace

Rational::Rational(std::int64_t n) {
    if (n == std::numeric_limits<std::int64_t>::min()) {
        set_from_mpq(mpq_class(to_mpz(n)));
    } else {
        num_ = n;
    }
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    set_from_wide(n, d);
}

Rational::Rational(const mpq_class& q) { set_from_mpq(q); }

void Rational::set_from_wide(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
        return;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
}

void Rational::set_from_mpq(mpq_class q) {
    q.canonicalize();
    if (mpz_fits_i64(q.get_num()) && mpz_fits_i64(q.get_den())) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
        return;
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("not a rational number: \"" + std::string(text) + "\"");
    std::string n(num);
    if (!n.empty() && n[0] == '+') n.erase(0, 1);
    mpz_class zn(n), zd{std::string(den)};
    if (zd == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    return Rational(mpq_class(zn, zd));
}

std::string Rational::str() const {
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::numerator_str() const { return big_ ? big_->get_num().get_str() : std::to_string(num_); }

std::string Rational::denominator_str() const { return big_ ? big_->get_den().get_str() : std::to_string(den_); }

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.set_from_mpq(-*big_);
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (o.num_ == 0) return *this;
        if (den_ == 1 && o.den_ == 1) {
            set_from_wide(static_cast<i128>(num_) + o.num_, 1);
            return *this;
        }
        set_from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
        return *this;
    }
    set_from_mpq(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        i128 g1 = gcd128(num_, o.den_);
        i128 g2 = gcd128(o.num_, den_);
        i128 n = (static_cast<i128>(num_) / g1) * (static_cast<i128>(o.num_) / g2);
        i128 d = (static_cast<i128>(den_) / g2) * (static_cast<i128>(o.den_) / g1);
        set_from_wide(n, d);
        return *this;
    }
    set_from_mpq(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (!big_ && !o.big_) {
        i128 g1 = gcd128(num_, o.num_);
        if (g1 == 0) g1 = 1;
        i128 g2 = gcd128(den_, o.den_);
        i128 n = (static_cast<i128>(num_) / g1) * (static_cast<i128>(o.den_) / g2);
        i128 d = (static_cast<i128>(den_) / g2) * (static_cast<i128>(o.num_) / g1);
        set_from_wide(n, d);
        return *this;
    }
    set_from_mpq(to_mpq() / o.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;  // canonical forms differ
    return *a.big_ == *b.big_;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_)
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
}

Rational Rational::gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.sign() < 0 ? -b : b;
    if (b.is_zero()) return a.sign() < 0 ? -a : a;
    if (!a.big_ && !b.big_) {
        i128 n = gcd128(a.num_, b.num_);
        i128 g = gcd128(a.den_, b.den_);
        i128 d = static_cast<i128>(a.den_) / g * b.den_;
        Rational r;
        r.set_from_wide(n, d);
        return r;
    }
    mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    mpz_class n, d;
    mpz_gcd(n.get_mpz_t(), qa.get_num_mpz_t(), qb.get_num_mpz_t());
    mpz_lcm(d.get_mpz_t(), qa.get_den_mpz_t(), qb.get_den_mpz_t());
    return Rational(mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cellsheaf
