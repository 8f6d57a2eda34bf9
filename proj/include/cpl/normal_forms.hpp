#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpl/formula.hpp"
#include "cpl/rational.hpp"

namespace cpl {

/// A conjunction of literals, or one of the constants.
///
/// The constructor does not enforce the polite-form invariants so that
/// malformed clauses can be represented and rejected by measure_cpf;
/// use is_well_formed() to check them.
class CpfClause {
public:
    enum class Kind { Top, Bottom, Literals };

    static CpfClause top() { return CpfClause(Kind::Top, {}); }
    static CpfClause bottom() { return CpfClause(Kind::Bottom, {}); }
    /// Literals are stored in canonical order; repetitions are kept.
    static CpfClause of(std::vector<Literal> literals);

    Kind kind() const noexcept { return kind_; }
    const std::vector<Literal>& literals() const noexcept { return literals_; }
    std::size_t size() const noexcept { return literals_.size(); }

    /// Literals form: nonempty, every atom at most once.
    bool is_well_formed() const;
    /// Polarity of `atom` in the clause, if it occurs.
    std::optional<bool> polarity_of(AtomIndex atom) const;
    bool contains(const Literal& l) const;
    CpfClause with(const Literal& l) const;

    Formula to_formula() const;

    friend bool operator==(const CpfClause&, const CpfClause&) = default;

private:
    CpfClause(Kind kind, std::vector<Literal> literals) : kind_(kind), literals_(std::move(literals)) {}
    Kind kind_;
    std::vector<Literal> literals_;
};

/// Canonical clause order: lexicographic on the literal sequences.
bool operator<(const CpfClause& a, const CpfClause& b);

enum class DisjunctionKind { Top, Bottom, Clauses };

/// Disjunction of CPF clauses or a constant; shared shape of DPF and MNF.
struct ClauseDisjunction {
    DisjunctionKind kind = DisjunctionKind::Bottom;
    std::vector<CpfClause> clauses;

    Formula to_formula() const;
    std::vector<AtomIndex> support() const;

    friend bool operator==(const ClauseDisjunction&, const ClauseDisjunction&) = default;
};

/// Disjunctive polite form.
struct DpfFormula : ClauseDisjunction {
    DpfFormula() = default;
    explicit DpfFormula(ClauseDisjunction d) : ClauseDisjunction(std::move(d)) {}
    static DpfFormula top() { return DpfFormula({DisjunctionKind::Top, {}}); }
    static DpfFormula bottom() { return DpfFormula({DisjunctionKind::Bottom, {}}); }
    static DpfFormula of(std::vector<CpfClause> clauses) { return DpfFormula({DisjunctionKind::Clauses, std::move(clauses)}); }
};

/// Measurable normal form: a DPF whose clauses are pairwise contradictory.
struct MnfFormula : ClauseDisjunction {
    MnfFormula() = default;
    explicit MnfFormula(ClauseDisjunction d) : ClauseDisjunction(std::move(d)) {}
    static MnfFormula top() { return MnfFormula({DisjunctionKind::Top, {}}); }
    static MnfFormula bottom() { return MnfFormula({DisjunctionKind::Bottom, {}}); }
    static MnfFormula of(std::vector<CpfClause> clauses) { return MnfFormula({DisjunctionKind::Clauses, std::move(clauses)}); }
};

/// One conjunct of a raw DNF clause.
struct DnfItem {
    enum class Kind { Lit, Top, Bottom };
    Kind kind = Kind::Lit;
    Literal literal;

    static DnfItem lit(Literal l) { return {Kind::Lit, l}; }
    static DnfItem top() { return {Kind::Top, {}}; }
    static DnfItem bottom() { return {Kind::Bottom, {}}; }

    friend bool operator==(const DnfItem&, const DnfItem&) = default;
};

/// Syntactic DNF before politeness: clauses may repeat literals, contain constants or contradictions.
struct Dnf {
    std::vector<std::vector<DnfItem>> clauses;

    Formula to_formula() const;
    friend bool operator==(const Dnf&, const Dnf&) = default;
};

/// Negation pushed onto atoms and constants, then ∧ distributed over ∨.
/// Throws Error on quantified input.
Dnf to_dnf(const Formula& f);

DpfFormula to_dpf(const Dnf& d);

/// 1 for ⊤, 0 for ⊥, 1/2^n for n literals. Throws MalformedClause.
DyadicRational measure_cpf(const CpfClause& c);

/// Some atom occurs with opposite polarity in the two clauses.
bool is_contradictory_pair(const CpfClause& a, const CpfClause& b);

/// Every literal of `coarse` occurs in `fine`, so ⟦fine⟧ ⊆ ⟦coarse⟧.
bool is_refinement(const CpfClause& fine, const CpfClause& coarse);

MnfFormula to_mnf(const DpfFormula& d);

/// Sum of clause measures. Throws MalformedMnf when two clauses can overlap.
DyadicRational measure_mnf(const MnfFormula& f);

bool is_well_formed(const DpfFormula& d);
bool is_well_formed(const MnfFormula& m);

/// to_mnf(to_dpf(to_dnf(f))) measured; `f` must be quantifier-free.
DyadicRational measure_by_mnf(const Formula& f);

/// Flat rendering: clauses joined by " | ", multi-literal clauses parenthesized when
/// there is more than one clause. The output parses back with parse_formula.
std::string print_dnf(const Dnf& d);
std::string print_normal_form(const ClauseDisjunction& d);

} // namespace cpl
