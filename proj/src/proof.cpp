#include "cpl/proof.hpp"

#include <algorithm>
#include <array>

#include "cpl/errors.hpp"

namespace cpl {

std::string relation_symbol(Relation r)
{
    switch (r) {
    case Relation::Geq:
        return ">=";
    case Relation::Gt:
        return ">";
    case Relation::Leq:
        return "<=";
    case Relation::Lt:
        return "<";
    default:
        return "=";
    }
}

Hypothesis Hypothesis::entails(BooleanFormula b, BooleanFormula c)
{
    return Hypothesis(Kind::Entails, std::move(b), std::move(c), Relation::Eq, Rational(0));
}

Hypothesis Hypothesis::measure_cmp(BooleanFormula b, Relation rel, Rational q)
{
    if (!q.in_unit_interval()) {
        throw RangeError("hypothesis threshold " + q.str() + " outside [0,1]");
    }
    return Hypothesis(Kind::MeasureCmp, std::move(b), BooleanFormula::top(), rel, std::move(q));
}

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
    bool measure_dependent;
};

constexpr std::array<RuleInfo, 22> kRules = {{
    {Rule::Ax1, "Ax1", false},
    {Rule::Ax2, "Ax2", false},
    {Rule::IntoUnion, "R~>union", false},
    {Rule::FromIntersection, "R<~inter", false},
    {Rule::IntoNot, "R~>not", false},
    {Rule::FromNot, "R<~not", false},
    {Rule::IntoOr1, "R1~>or", false},
    {Rule::IntoOr2, "R2~>or", false},
    {Rule::FromOr, "R<~or", false},
    {Rule::IntoAnd, "R~>and", false},
    {Rule::FromAnd1, "R1<~and", false},
    {Rule::FromAnd2, "R2<~and", false},
    {Rule::IntoMu, "R~>mu", true},
    {Rule::FromMu, "R<~mu", true},
    {Rule::IntoC, "R~>C", true},
    {Rule::FromC, "R<~C", true},
    {Rule::IntoD, "R~>D", true},
    {Rule::FromD, "R<~D", true},
    {Rule::IntoWC, "R~>WC", true},
    {Rule::FromWC, "R<~WC", true},
    {Rule::IntoWD, "R~>WD", true},
    {Rule::FromWD, "R<~WD", true},
}};

const RuleInfo& info(Rule r)
{
    return *std::find_if(kRules.begin(), kRules.end(), [&](const RuleInfo& i) { return i.rule == r; });
}

} // namespace

std::string rule_name(const RuleTag& tag)
{
    std::string name = info(tag.rule).name;
    if (tag.generalized) {
        name += '*';
    }
    return name;
}

std::optional<RuleTag> parse_rule_name(const std::string& name)
{
    std::string base = name;
    bool generalized = false;
    if (!base.empty() && base.back() == '*') {
        base.pop_back();
        generalized = true;
    }
    for (const auto& i : kRules) {
        if (base == i.name) {
            if (generalized && !i.measure_dependent) {
                return std::nullopt;
            }
            return RuleTag{i.rule, generalized};
        }
    }
    return std::nullopt;
}

bool is_measure_dependent(Rule r)
{
    return info(r).measure_dependent;
}

std::string CheckFailure::path_str() const
{
    if (path.empty()) {
        return "/";
    }
    std::string out;
    for (std::size_t i : path) {
        out += "/" + std::to_string(i);
    }
    return out;
}

bool boolean_entails(const BooleanFormula& b, const BooleanFormula& c, std::size_t atom_cap)
{
    // Every assignment has positive uniform weight, so b ⊨ c iff b ∧ ¬c has no model.
    const Formula counterexamples = Formula::conj(b.as_formula(), Formula::negation(c.as_formula()));
    return measure_oracle(counterexamples, ProductMeasure::uniform(), atom_cap).is_zero();
}

Rational boolean_measure(const BooleanFormula& b, const ProductMeasure& m, std::size_t atom_cap)
{
    return measure_oracle(b.as_formula(), m, atom_cap);
}

bool check_hypothesis(const Hypothesis& h, const ProductMeasure& m, std::size_t atom_cap)
{
    if (h.kind() == Hypothesis::Kind::Entails) {
        return boolean_entails(h.lhs(), h.rhs(), atom_cap);
    }
    const Rational mu = boolean_measure(h.lhs(), m, atom_cap);
    switch (h.relation()) {
    case Relation::Geq:
        return mu >= h.threshold();
    case Relation::Gt:
        return mu > h.threshold();
    case Relation::Leq:
        return mu <= h.threshold();
    case Relation::Lt:
        return mu < h.threshold();
    default:
        return mu == h.threshold();
    }
}

namespace {

std::string describe(const Hypothesis& h)
{
    if (h.kind() == Hypothesis::Kind::Entails) {
        return print_boolean(h.lhs()) + " |= " + print_boolean(h.rhs());
    }
    return "mu(" + print_boolean(h.lhs()) + ") " + relation_symbol(h.relation()) + " " + h.threshold().str();
}

std::string describe(const LabelledFormula& l)
{
    return "|- " + print_boolean(l.label) + (l.direction == Direction::Into ? " ~> " : " <~ ") + print_formula(l.body);
}

// Checks one node against its schema; premises are checked separately.
class NodeCheck {
public:
    NodeCheck(const DerivationTree& node, const ProductMeasure& m, std::size_t cap)
        : node_(node), m_(m), cap_(cap), label_(node.conclusion.conclusion.label),
          body_(node.conclusion.conclusion.body)
    {
    }

    std::optional<std::string> run()
    {
        try {
            check();
        } catch (const Error& e) {
            problem_ = std::string("hypothesis could not be discharged: ") + e.what();
        }
        return problem_;
    }

private:
    bool fail(std::string reason)
    {
        if (!problem_) {
            problem_ = std::move(reason);
        }
        return false;
    }

    bool expect_direction(Direction d)
    {
        if (node_.conclusion.conclusion.direction != d) {
            return fail(std::string("conclusion must be a ") + (d == Direction::Into ? "~>" : "<~") + " sequent");
        }
        return true;
    }

    bool expect_body(FormulaKind k)
    {
        if (body_.kind() != k) {
            return fail("conclusion formula has the wrong main connective for this rule");
        }
        return true;
    }

    // Binds the named witnesses; the node must supply exactly these names.
    bool bind(std::initializer_list<const char*> names, std::vector<BooleanFormula>& out)
    {
        for (const char* n : names) {
            auto it = node_.witnesses.find(n);
            if (it == node_.witnesses.end()) {
                return fail(std::string("missing witness '") + n + "'");
            }
            out.push_back(it->second);
        }
        if (node_.witnesses.size() != names.size()) {
            return fail("unexpected witness for this rule");
        }
        return true;
    }

    bool expect_premises(const std::vector<LabelledFormula>& expected)
    {
        if (node_.premises.size() != expected.size()) {
            return fail("rule takes " + std::to_string(expected.size()) + " premise(s), found "
                        + std::to_string(node_.premises.size()));
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (!(node_.premises[i].conclusion.conclusion == expected[i])) {
                return fail("premise " + std::to_string(i) + " must conclude " + describe(expected[i]) + ", found "
                            + describe(node_.premises[i].conclusion.conclusion));
            }
        }
        return true;
    }

    bool expect_hypotheses(const std::vector<Hypothesis>& required)
    {
        if (node_.hypotheses.size() != required.size()) {
            return fail("rule takes " + std::to_string(required.size()) + " external hypothesis(es), found "
                        + std::to_string(node_.hypotheses.size()));
        }
        for (const auto& h : required) {
            if (std::find(node_.hypotheses.begin(), node_.hypotheses.end(), h) == node_.hypotheses.end()) {
                return fail("missing hypothesis " + describe(h));
            }
        }
        for (const auto& h : required) {
            if (!check_hypothesis(h, m_, cap_)) {
                return fail("hypothesis " + describe(h) + " is false");
            }
        }
        return true;
    }

    static LabelledFormula into(const BooleanFormula& b, const Formula& f) { return {b, Direction::Into, f}; }
    static LabelledFormula from(const BooleanFormula& b, const Formula& f) { return {b, Direction::From, f}; }

    void counting(Direction d, FormulaKind k, Direction premise, Relation rel)
    {
        std::vector<BooleanFormula> w;
        if (!expect_direction(d) || !expect_body(k) || !bind({"c"}, w)) {
            return;
        }
        const Formula& g = body_.child();
        LabelledFormula p = premise == Direction::Into ? into(w[0], g) : from(w[0], g);
        if (expect_premises({p})) {
            expect_hypotheses({Hypothesis::measure_cmp(w[0], rel, body_.threshold())});
        }
    }

    void check()
    {
        const BooleanFormula& b = label_;
        std::vector<BooleanFormula> w;
        switch (node_.rule.rule) {
        case Rule::Ax1:
            if (expect_direction(Direction::Into) && expect_body(FormulaKind::Atom) && bind({}, w)
                && expect_premises({})) {
                expect_hypotheses({Hypothesis::entails(b, BooleanFormula::var(body_.index()))});
            }
            return;
        case Rule::Ax2:
            if (expect_direction(Direction::From) && expect_body(FormulaKind::Atom) && bind({}, w)
                && expect_premises({})) {
                expect_hypotheses({Hypothesis::entails(BooleanFormula::var(body_.index()), b)});
            }
            return;
        case Rule::IntoUnion:
            if (expect_direction(Direction::Into) && bind({"c", "d"}, w)
                && expect_premises({into(w[0], body_), into(w[1], body_)})) {
                expect_hypotheses({Hypothesis::entails(b, BooleanFormula::disj(w[0], w[1]))});
            }
            return;
        case Rule::FromIntersection:
            if (expect_direction(Direction::From) && bind({"c", "d"}, w)
                && expect_premises({from(w[0], body_), from(w[1], body_)})) {
                expect_hypotheses({Hypothesis::entails(BooleanFormula::conj(w[0], w[1]), b)});
            }
            return;
        case Rule::IntoNot:
            if (expect_direction(Direction::Into) && expect_body(FormulaKind::Not) && bind({"c"}, w)
                && expect_premises({from(w[0], body_.child())})) {
                expect_hypotheses({Hypothesis::entails(b, BooleanFormula::negation(w[0]))});
            }
            return;
        case Rule::FromNot:
            if (expect_direction(Direction::From) && expect_body(FormulaKind::Not) && bind({"c"}, w)
                && expect_premises({into(w[0], body_.child())})) {
                expect_hypotheses({Hypothesis::entails(BooleanFormula::negation(w[0]), b)});
            }
            return;
        case Rule::IntoOr1:
        case Rule::IntoOr2:
            if (expect_direction(Direction::Into) && expect_body(FormulaKind::Or) && bind({}, w)
                && expect_premises({into(b, node_.rule.rule == Rule::IntoOr1 ? body_.left() : body_.right())})) {
                expect_hypotheses({});
            }
            return;
        case Rule::FromOr:
            if (expect_direction(Direction::From) && expect_body(FormulaKind::Or) && bind({}, w)
                && expect_premises({from(b, body_.left()), from(b, body_.right())})) {
                expect_hypotheses({});
            }
            return;
        case Rule::IntoAnd:
            if (expect_direction(Direction::Into) && expect_body(FormulaKind::And) && bind({}, w)
                && expect_premises({into(b, body_.left()), into(b, body_.right())})) {
                expect_hypotheses({});
            }
            return;
        case Rule::FromAnd1:
        case Rule::FromAnd2:
            if (expect_direction(Direction::From) && expect_body(FormulaKind::And) && bind({}, w)
                && expect_premises({from(b, node_.rule.rule == Rule::FromAnd1 ? body_.left() : body_.right())})) {
                expect_hypotheses({});
            }
            return;
        case Rule::IntoMu:
            if (expect_direction(Direction::Into) && bind({}, w) && expect_premises({})) {
                expect_hypotheses({Hypothesis::measure_cmp(b, Relation::Eq, Rational(0))});
            }
            return;
        case Rule::FromMu:
            if (expect_direction(Direction::From) && bind({}, w) && expect_premises({})) {
                expect_hypotheses({Hypothesis::measure_cmp(b, Relation::Eq, Rational(1))});
            }
            return;
        case Rule::IntoC:
            return counting(Direction::Into, FormulaKind::CountGeq, Direction::Into, Relation::Geq);
        case Rule::FromC:
            return counting(Direction::From, FormulaKind::CountGeq, Direction::From, Relation::Lt);
        case Rule::IntoD:
            return counting(Direction::Into, FormulaKind::CountLt, Direction::From, Relation::Lt);
        case Rule::FromD:
            return counting(Direction::From, FormulaKind::CountLt, Direction::Into, Relation::Geq);
        case Rule::IntoWC:
            return counting(Direction::Into, FormulaKind::CountGt, Direction::Into, Relation::Gt);
        case Rule::FromWC:
            return counting(Direction::From, FormulaKind::CountGt, Direction::From, Relation::Leq);
        case Rule::IntoWD:
            return counting(Direction::Into, FormulaKind::CountLeq, Direction::From, Relation::Leq);
        case Rule::FromWD:
            return counting(Direction::From, FormulaKind::CountLeq, Direction::Into, Relation::Gt);
        }
    }

    const DerivationTree& node_;
    const ProductMeasure& m_;
    std::size_t cap_;
    const BooleanFormula& label_;
    const Formula& body_;
    std::optional<std::string> problem_;
};

void check_into(const DerivationTree& t, const ProductMeasure& m, std::size_t cap, std::vector<std::size_t>& path,
                CheckReport& report)
{
    if (auto problem = NodeCheck(t, m, cap).run()) {
        report.failures.push_back({path, rule_name(t.rule), *problem});
    }
    for (std::size_t i = 0; i < t.premises.size(); ++i) {
        path.push_back(i);
        check_into(t.premises[i], m, cap, path, report);
        path.pop_back();
    }
}

} // namespace

CheckReport check_derivation(const DerivationTree& t, const ProductMeasure& m, std::size_t atom_cap)
{
    CheckReport report;
    std::vector<std::size_t> path;
    check_into(t, m, atom_cap, path, report);
    return report;
}

} // namespace cpl
