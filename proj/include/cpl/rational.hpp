#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cpl {

/// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& value);

    /// Accepts "m" or "m/n" (optional leading '-'); throws ParseError.
    static Rational parse(std::string_view text);

    const mpq_class& get() const noexcept { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool in_unit_interval() const;

    /// "num/den", or "num" when the denominator is 1.
    std::string str() const;
    /// Always "num/den", used by structured output.
    std::string fraction_str() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// m / 2^n in lowest dyadic terms (m odd, or n = 0).
class DyadicRational {
public:
    DyadicRational() = default;
    /// Normalizes m / 2^n; requires m >= 0.
    DyadicRational(mpz_class numerator, std::uint64_t exponent);

    /// Fails (nullopt) when the denominator is not a power of two or the value is negative.
    static std::optional<DyadicRational> from_rational(const Rational& r);

    const mpz_class& numerator() const noexcept { return numerator_; }
    std::uint64_t exponent() const noexcept { return exponent_; }

    Rational to_rational() const;
    /// "m/2^n".
    std::string str() const;

    DyadicRational operator+(const DyadicRational& o) const;

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) = default;

private:
    mpz_class numerator_{0};
    std::uint64_t exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& d);

} // namespace cpl
