#include "cpl/rational.hpp"

#include <cctype>

#include "cpl/errors.hpp"

namespace cpl {

ParseError::ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected)
    : Error(message + " at offset " + std::to_string(offset)), offset_(offset), expected_(std::move(expected))
{
}

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw RangeError("zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value)
{
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    std::size_t pos = 0;
    auto digits = [&](bool allow_sign) {
        std::size_t start = pos;
        if (allow_sign && pos < text.size() && text[pos] == '-') {
            ++pos;
        }
        std::size_t first_digit = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == first_digit) {
            throw ParseError("expected integer in rational '" + std::string(text) + "'", pos, {"integer"});
        }
        return mpz_class(std::string(text.substr(start, pos - start)));
    };
    mpz_class num = digits(true);
    mpz_class den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = digits(false);
        if (den == 0) {
            throw ParseError("zero denominator in rational '" + std::string(text) + "'", pos, {"positive integer"});
        }
    }
    if (pos != text.size()) {
        throw ParseError("trailing characters in rational '" + std::string(text) + "'", pos, {"'/'", "end"});
    }
    return Rational(mpq_class(num, den));
}

bool Rational::in_unit_interval() const
{
    return sgn(value_) >= 0 && value_ <= 1;
}

std::string Rational::str() const
{
    if (value_.get_den() == 1) {
        return value_.get_num().get_str();
    }
    return value_.get_str();
}

std::string Rational::fraction_str() const
{
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw RangeError("division by zero");
    }
    value_ /= o.value_;
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    int c = cmp(a.value_, b.value_);
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

DyadicRational::DyadicRational(mpz_class numerator, std::uint64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent)
{
    if (sgn(numerator_) < 0) {
        throw RangeError("negative dyadic numerator");
    }
    if (numerator_ == 0) {
        exponent_ = 0;
        return;
    }
    while (exponent_ > 0 && mpz_even_p(numerator_.get_mpz_t())) {
        numerator_ /= 2;
        --exponent_;
    }
}

std::optional<DyadicRational> DyadicRational::from_rational(const Rational& r)
{
    if (sgn(r.get()) < 0) {
        return std::nullopt;
    }
    const mpz_class den = r.denominator();
    // Power of two iff exactly one bit is set.
    if (mpz_popcount(den.get_mpz_t()) != 1) {
        return std::nullopt;
    }
    std::uint64_t exponent = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
    return DyadicRational(r.numerator(), exponent);
}

Rational DyadicRational::to_rational() const
{
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent_);
    return Rational(mpq_class(numerator_, den));
}

std::string DyadicRational::str() const
{
    return numerator_.get_str() + "/2^" + std::to_string(exponent_);
}

DyadicRational DyadicRational::operator+(const DyadicRational& o) const
{
    std::uint64_t e = std::max(exponent_, o.exponent_);
    mpz_class a = numerator_;
    mpz_class b = o.numerator_;
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), e - exponent_);
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), e - o.exponent_);
    return DyadicRational(a + b, e);
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& d)
{
    return os << d.str();
}

} // namespace cpl
