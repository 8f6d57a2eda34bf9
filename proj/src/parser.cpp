#include "cpl/parser.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "cpl/errors.hpp"

namespace cpl {

namespace {

class Parser {
public:
    Parser(std::string_view text, bool boolean) : text_(text), boolean_(boolean) {}

    Formula parse()
    {
        Formula f = disjunction();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'", {"'&'", "'|'", "end of input"});
        }
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected)
    {
        throw ParseError(message, pos_, std::move(expected));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'", {std::string("'") + c + "'"});
        }
    }

    bool at_digit() const
    {
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (at_digit()) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::vector<std::string> unary_starts() const
    {
        if (boolean_) {
            return {"'!'", "variable x<i>", "'T'", "'F'", "'('"};
        }
        return {"'!'", "atom", "'T'", "'F'", "'C'", "'D'", "'WC'", "'WD'", "'('"};
    }

    AtomIndex atom_index()
    {
        std::size_t start = pos_;
        std::string d = digits();
        if (d.empty()) {
            fail("expected atom index", {"integer >= 1"});
        }
        mpz_class v(d);
        if (v < 1 || v > std::numeric_limits<AtomIndex>::max()) {
            pos_ = start;
            fail("atom index " + d + " out of range", {"integer >= 1"});
        }
        return static_cast<AtomIndex>(v.get_ui());
    }

    Formula disjunction()
    {
        Formula f = conjunction();
        while (accept('|')) {
            f = Formula::disj(f, conjunction());
        }
        return f;
    }

    Formula conjunction()
    {
        Formula f = unary();
        while (accept('&')) {
            f = Formula::conj(f, unary());
        }
        return f;
    }

    Formula unary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input", unary_starts());
        }
        char c = text_[pos_];
        if (c == '!') {
            ++pos_;
            return Formula::negation(unary());
        }
        if (c == '(') {
            ++pos_;
            Formula f = disjunction();
            expect(')');
            return f;
        }
        if (c == 'T') {
            ++pos_;
            return Formula::top();
        }
        if (c == 'F') {
            ++pos_;
            return Formula::bottom();
        }
        if (boolean_) {
            if (c == 'x') {
                ++pos_;
                return Formula::atom(atom_index());
            }
            if (c == 'C' || c == 'D' || c == 'W') {
                fail("quantifier in Boolean label", unary_starts());
            }
            fail(std::string("unexpected character '") + c + "'", unary_starts());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Formula::atom(atom_index());
        }
        FormulaKind kind;
        if (text_.substr(pos_, 2) == "WC") {
            kind = FormulaKind::CountGt;
            pos_ += 2;
        } else if (text_.substr(pos_, 2) == "WD") {
            kind = FormulaKind::CountLeq;
            pos_ += 2;
        } else if (c == 'C') {
            kind = FormulaKind::CountGeq;
            ++pos_;
        } else if (c == 'D') {
            kind = FormulaKind::CountLt;
            ++pos_;
        } else {
            fail(std::string("unexpected character '") + c + "'", unary_starts());
        }
        expect('{');
        skip_space();
        std::size_t threshold_at = pos_;
        Rational q = threshold();
        expect('}');
        expect('(');
        Formula body = disjunction();
        expect(')');
        if (!q.in_unit_interval()) {
            pos_ = threshold_at;
            fail("threshold " + q.str() + " outside [0,1]", {"rational in [0,1]"});
        }
        return Formula::quantified(kind, q, body);
    }

    Rational threshold()
    {
        skip_space();
        std::string num = digits();
        if (num.empty()) {
            fail("expected rational threshold", {"integer"});
        }
        std::string den = "1";
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            skip_space();
            den = digits();
            if (den.empty() || mpz_class(den) == 0) {
                fail("expected positive denominator", {"positive integer"});
            }
        }
        return Rational(mpq_class(mpz_class(num), mpz_class(den)));
    }

    std::string_view text_;
    bool boolean_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text)
{
    return Parser(text, false).parse();
}

BooleanFormula parse_boolean(std::string_view text)
{
    return BooleanFormula::from_formula(Parser(text, true).parse());
}

} // namespace cpl
