#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cpl/rational.hpp"

namespace cpl {

using AtomIndex = std::uint32_t;

enum class FormulaKind {
    Atom,
    Top,
    Bottom,
    Not,
    And,
    Or,
    CountGeq, // C{q}: measure >= q
    CountLt,  // D{q}: measure < q
    CountGt,  // WC{q}: measure > q
    CountLeq, // WD{q}: measure <= q
};

constexpr bool is_quantifier(FormulaKind k)
{
    return k == FormulaKind::CountGeq || k == FormulaKind::CountLt || k == FormulaKind::CountGt
        || k == FormulaKind::CountLeq;
}

/// Immutable counting formula. Copies share structure.
class Formula {
public:
    static Formula atom(AtomIndex index);
    static Formula top();
    static Formula bottom();
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    /// Throws RangeError unless 0 <= q <= 1.
    static Formula quantified(FormulaKind kind, Rational q, Formula body);

    static Formula count_geq(Rational q, Formula f) { return quantified(FormulaKind::CountGeq, std::move(q), std::move(f)); }
    static Formula count_lt(Rational q, Formula f) { return quantified(FormulaKind::CountLt, std::move(q), std::move(f)); }
    static Formula count_gt(Rational q, Formula f) { return quantified(FormulaKind::CountGt, std::move(q), std::move(f)); }
    static Formula count_leq(Rational q, Formula f) { return quantified(FormulaKind::CountLeq, std::move(q), std::move(f)); }

    FormulaKind kind() const noexcept;
    /// Atom index; only meaningful for atoms.
    AtomIndex index() const noexcept;
    /// Quantifier threshold; only meaningful for quantifiers.
    const Rational& threshold() const noexcept;
    /// Operand of Not and of the quantifiers.
    const Formula& child() const;
    const Formula& left() const;
    const Formula& right() const;

    bool is_quantifier_free() const;
    std::size_t depth() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);

/// Quantifier-free formula over Boolean variables x1, x2, ...; used as sequent labels.
class BooleanFormula {
public:
    static BooleanFormula var(AtomIndex index) { return BooleanFormula(Formula::atom(index)); }
    static BooleanFormula top() { return BooleanFormula(Formula::top()); }
    static BooleanFormula bottom() { return BooleanFormula(Formula::bottom()); }
    static BooleanFormula negation(const BooleanFormula& b) { return BooleanFormula(Formula::negation(b.f_)); }
    static BooleanFormula conj(const BooleanFormula& a, const BooleanFormula& b) { return BooleanFormula(Formula::conj(a.f_, b.f_)); }
    static BooleanFormula disj(const BooleanFormula& a, const BooleanFormula& b) { return BooleanFormula(Formula::disj(a.f_, b.f_)); }
    /// Throws Error when `f` contains a quantifier.
    static BooleanFormula from_formula(const Formula& f);

    /// The same event as a counting formula (x_i read as atom i).
    const Formula& as_formula() const noexcept { return f_; }

    friend bool operator==(const BooleanFormula& a, const BooleanFormula& b) = default;

private:
    explicit BooleanFormula(Formula f) : f_(std::move(f)) {}
    Formula f_;
};

struct Literal {
    AtomIndex atom = 1;
    bool positive = true;

    Literal complement() const { return {atom, !positive}; }
    Formula to_formula() const;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Canonical order: ascending atom, negative before positive.
bool operator<(const Literal& a, const Literal& b);

/// Atom indices occurring in `f`, ascending and without repetition.
std::vector<AtomIndex> support(const Formula& f);
inline std::vector<AtomIndex> support(const BooleanFormula& b) { return support(b.as_formula()); }

/// Binary nodes are always parenthesized; quantifier arguments drop one level of parentheses.
std::string print_formula(const Formula& f);
/// Like print_formula with variables written x<i>.
std::string print_boolean(const BooleanFormula& b);

std::string quantifier_keyword(FormulaKind k);

} // namespace cpl
