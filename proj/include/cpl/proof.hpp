#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpl/formula.hpp"
#include "cpl/measure.hpp"
#include "cpl/rational.hpp"

namespace cpl {

/// ⤳ (label event included in the formula's) or ⤘ (label event includes it).
enum class Direction { Into, From };

struct LabelledFormula {
    BooleanFormula label;
    Direction direction = Direction::Into;
    Formula body;

    friend bool operator==(const LabelledFormula&, const LabelledFormula&) = default;
};

/// ⊢ L: a sequent with exactly one labelled formula.
struct LabelledSequent {
    LabelledFormula conclusion;

    friend bool operator==(const LabelledSequent&, const LabelledSequent&) = default;
};

enum class Relation { Geq, Gt, Leq, Lt, Eq };

std::string relation_symbol(Relation r);

/// External hypothesis: b ⊨ c, or μ(⟦b⟧) ▷ q.
class Hypothesis {
public:
    enum class Kind { Entails, MeasureCmp };

    static Hypothesis entails(BooleanFormula b, BooleanFormula c);
    /// Throws RangeError unless 0 <= q <= 1.
    static Hypothesis measure_cmp(BooleanFormula b, Relation rel, Rational q);

    Kind kind() const noexcept { return kind_; }
    const BooleanFormula& lhs() const noexcept { return lhs_; }
    /// Right-hand side of an entailment.
    const BooleanFormula& rhs() const noexcept { return rhs_; }
    Relation relation() const noexcept { return rel_; }
    const Rational& threshold() const noexcept { return q_; }

    friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

private:
    Hypothesis(Kind kind, BooleanFormula lhs, BooleanFormula rhs, Relation rel, Rational q)
        : kind_(kind), lhs_(std::move(lhs)), rhs_(std::move(rhs)), rel_(rel), q_(std::move(q))
    {
    }
    Kind kind_;
    BooleanFormula lhs_;
    BooleanFormula rhs_;
    Relation rel_;
    Rational q_;
};

enum class Rule {
    Ax1,
    Ax2,
    IntoUnion,        // R⤳∪
    FromIntersection, // R⤘∩
    IntoNot,
    FromNot,
    IntoOr1,
    IntoOr2,
    FromOr,
    IntoAnd,
    FromAnd1,
    FromAnd2,
    IntoMu,
    FromMu,
    IntoC,
    FromC,
    IntoD,
    FromD,
    IntoWC,
    FromWC,
    IntoWD,
    FromWD,
};

/// A rule name as written in proof files. `generalized` marks the μ* reading of a
/// measure-dependent rule (same schema, checked against the supplied measure).
struct RuleTag {
    Rule rule = Rule::Ax1;
    bool generalized = false;

    friend bool operator==(const RuleTag&, const RuleTag&) = default;
};

std::string rule_name(const RuleTag& tag);
/// Inverse of rule_name; nullopt for unknown names and for `*` on measure-free rules.
std::optional<RuleTag> parse_rule_name(const std::string& name);
bool is_measure_dependent(Rule r);

struct DerivationTree {
    RuleTag rule;
    LabelledSequent conclusion;
    std::vector<DerivationTree> premises;
    std::vector<Hypothesis> hypotheses;
    /// The schema's auxiliary labels (c, d) bound by name.
    std::map<std::string, BooleanFormula> witnesses;
};

struct CheckFailure {
    /// Premise indices from the root; empty for the root.
    std::vector<std::size_t> path;
    std::string rule;
    std::string reason;

    /// "/" for the root, "/0/1" for the second premise of the first premise.
    std::string path_str() const;
};

struct CheckReport {
    std::vector<CheckFailure> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// ⟦b⟧ ⊆ ⟦c⟧, decided by enumeration. Throws ResourceError above `atom_cap` atoms.
bool boolean_entails(const BooleanFormula& b, const BooleanFormula& c, std::size_t atom_cap = kDefaultAtomCap);

Rational boolean_measure(const BooleanFormula& b, const ProductMeasure& m, std::size_t atom_cap = kDefaultAtomCap);

bool check_hypothesis(const Hypothesis& h, const ProductMeasure& m, std::size_t atom_cap = kDefaultAtomCap);

/// Verifies every node against its rule schema; never throws for a bad proof, all
/// problems (including resource limits hit while discharging hypotheses) are reported.
CheckReport check_derivation(const DerivationTree& t, const ProductMeasure& m,
                             std::size_t atom_cap = kDefaultAtomCap);

} // namespace cpl
