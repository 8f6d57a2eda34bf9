#include "cpl/formula.hpp"

#include <algorithm>

#include "cpl/errors.hpp"

namespace cpl {

struct Formula::Node {
    FormulaKind kind;
    AtomIndex index = 0;
    Rational threshold;
    std::vector<Formula> children;
};

namespace {

const Rational kZero{0};

} // namespace

Formula Formula::atom(AtomIndex index)
{
    if (index == 0) {
        throw RangeError("atom indices start at 1");
    }
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, index, {}, {}}));
}

Formula Formula::top()
{
    static const Formula t(std::make_shared<const Node>(Node{FormulaKind::Top, 0, {}, {}}));
    return t;
}

Formula Formula::bottom()
{
    static const Formula b(std::make_shared<const Node>(Node{FormulaKind::Bottom, 0, {}, {}}));
    return b;
}

Formula Formula::negation(Formula f)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, 0, {}, {std::move(f)}}));
}

Formula Formula::conj(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::And, 0, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::disj(Formula a, Formula b)
{
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, 0, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::quantified(FormulaKind kind, Rational q, Formula body)
{
    if (!is_quantifier(kind)) {
        throw Error("not a quantifier kind");
    }
    if (!q.in_unit_interval()) {
        throw RangeError("threshold " + q.str() + " outside [0,1]");
    }
    return Formula(std::make_shared<const Node>(Node{kind, 0, std::move(q), {std::move(body)}}));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
AtomIndex Formula::index() const noexcept { return node_->index; }
const Rational& Formula::threshold() const noexcept
{
    return is_quantifier(node_->kind) ? node_->threshold : kZero;
}
const Formula& Formula::child() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }

bool Formula::is_quantifier_free() const
{
    if (is_quantifier(kind())) {
        return false;
    }
    return std::all_of(node_->children.begin(), node_->children.end(),
                       [](const Formula& c) { return c.is_quantifier_free(); });
}

std::size_t Formula::depth() const
{
    std::size_t d = 0;
    for (const auto& c : node_->children) {
        d = std::max(d, c.depth());
    }
    return d + 1;
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.index == y.index && x.threshold == y.threshold && x.children == y.children;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::disj(a, b); }

BooleanFormula BooleanFormula::from_formula(const Formula& f)
{
    if (!f.is_quantifier_free()) {
        throw Error("quantifier in Boolean formula");
    }
    return BooleanFormula(f);
}

Formula Literal::to_formula() const
{
    return positive ? Formula::atom(atom) : Formula::negation(Formula::atom(atom));
}

bool operator<(const Literal& a, const Literal& b)
{
    if (a.atom != b.atom) {
        return a.atom < b.atom;
    }
    return !a.positive && b.positive;
}

namespace {

void collect_support(const Formula& f, std::vector<AtomIndex>& out)
{
    switch (f.kind()) {
    case FormulaKind::Atom:
        out.push_back(f.index());
        break;
    case FormulaKind::Top:
    case FormulaKind::Bottom:
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
        collect_support(f.left(), out);
        collect_support(f.right(), out);
        break;
    default:
        collect_support(f.child(), out);
        break;
    }
}

void print_into(const Formula& f, std::string& out, bool boolean, bool bare)
{
    switch (f.kind()) {
    case FormulaKind::Atom:
        if (boolean) {
            out += 'x';
        }
        out += std::to_string(f.index());
        return;
    case FormulaKind::Top:
        out += 'T';
        return;
    case FormulaKind::Bottom:
        out += 'F';
        return;
    case FormulaKind::Not:
        out += '!';
        print_into(f.child(), out, boolean, false);
        return;
    case FormulaKind::And:
    case FormulaKind::Or:
        if (!bare) {
            out += '(';
        }
        print_into(f.left(), out, boolean, false);
        out += f.kind() == FormulaKind::And ? " & " : " | ";
        print_into(f.right(), out, boolean, false);
        if (!bare) {
            out += ')';
        }
        return;
    default:
        out += quantifier_keyword(f.kind());
        out += '{';
        out += f.threshold().str();
        out += "}(";
        print_into(f.child(), out, boolean, true);
        out += ')';
        return;
    }
}

} // namespace

std::vector<AtomIndex> support(const Formula& f)
{
    std::vector<AtomIndex> out;
    collect_support(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string print_formula(const Formula& f)
{
    std::string out;
    print_into(f, out, false, false);
    return out;
}

std::string print_boolean(const BooleanFormula& b)
{
    std::string out;
    print_into(b.as_formula(), out, true, false);
    return out;
}

std::string quantifier_keyword(FormulaKind k)
{
    switch (k) {
    case FormulaKind::CountGeq:
        return "C";
    case FormulaKind::CountLt:
        return "D";
    case FormulaKind::CountGt:
        return "WC";
    case FormulaKind::CountLeq:
        return "WD";
    default:
        return "";
    }
}

} // namespace cpl
