#pragma once
// Shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpl/formula.hpp"
#include "cpl/measure.hpp"
#include "cpl/parser.hpp"
#include "cpl/proof.hpp"
#include "cpl/proof_format.hpp"

namespace cpl::testing {

// Reference semantics written straight from the definitions: recursive truth
// evaluation, and a measure that sums the weights of every satisfying valuation
// of the support. Deliberately slow and shares no code with measure.cpp.
class NaiveOracle {
public:
    explicit NaiveOracle(ProductMeasure m = ProductMeasure::uniform()) : m_(std::move(m)) {}

    bool holds(const Formula& f, const std::map<AtomIndex, bool>& v) const
    {
        switch (f.kind()) {
        case FormulaKind::Atom:
            return v.at(f.index());
        case FormulaKind::Top:
            return true;
        case FormulaKind::Bottom:
            return false;
        case FormulaKind::Not:
            return !holds(f.child(), v);
        case FormulaKind::And:
            return holds(f.left(), v) && holds(f.right(), v);
        case FormulaKind::Or:
            return holds(f.left(), v) || holds(f.right(), v);
        case FormulaKind::CountGeq:
            return measure(f.child()) >= f.threshold();
        case FormulaKind::CountLt:
            return measure(f.child()) < f.threshold();
        case FormulaKind::CountGt:
            return measure(f.child()) > f.threshold();
        case FormulaKind::CountLeq:
            return measure(f.child()) <= f.threshold();
        }
        return false;
    }

    Rational measure(const Formula& f) const
    {
        std::vector<AtomIndex> atoms = support(f);
        Rational total(0);
        std::map<AtomIndex, bool> v;
        std::function<void(std::size_t, Rational)> go = [&](std::size_t i, Rational w) {
            if (w.is_zero()) {
                return;
            }
            if (i == atoms.size()) {
                if (holds(f, v)) {
                    total += w;
                }
                return;
            }
            const Rational& p = m_.bias(atoms[i]);
            v[atoms[i]] = true;
            go(i + 1, w * p);
            v[atoms[i]] = false;
            go(i + 1, w * (Rational(1) - p));
        };
        go(0, Rational(1));
        return total;
    }

private:
    ProductMeasure m_;
};

// Every quantifier-free formula over atoms 1..atoms plus T/F, with ¬ ∧ ∨, whose
// node depth (a leaf has depth 1) is at most max_depth.
inline std::vector<Formula> exhaustive_formulas(AtomIndex atoms, std::size_t max_depth)
{
    std::vector<Formula> leaves{Formula::top(), Formula::bottom()};
    for (AtomIndex a = 1; a <= atoms; ++a) {
        leaves.push_back(Formula::atom(a));
    }
    std::vector<Formula> all = leaves;
    for (std::size_t d = 2; d <= max_depth; ++d) {
        std::vector<Formula> next = leaves;
        for (const auto& a : all) {
            next.push_back(Formula::negation(a));
        }
        for (const auto& a : all) {
            for (const auto& b : all) {
                next.push_back(Formula::conj(a, b));
                next.push_back(Formula::disj(a, b));
            }
        }
        all = std::move(next);
    }
    return all;
}

inline Formula random_formula(std::mt19937_64& rng, AtomIndex atoms, std::size_t depth)
{
    std::uniform_int_distribution<int> pick(0, 9);
    int r = pick(rng);
    if (depth <= 1 || r == 0) {
        std::uniform_int_distribution<int> leaf(0, static_cast<int>(atoms) + 1);
        int l = leaf(rng);
        if (l == 0) {
            return r % 2 ? Formula::top() : Formula::bottom();
        }
        if (l > static_cast<int>(atoms)) {
            l = 1 + static_cast<int>(rng() % atoms);
        }
        return Formula::atom(static_cast<AtomIndex>(l));
    }
    if (r <= 2) {
        return Formula::negation(random_formula(rng, atoms, depth - 1));
    }
    Formula a = random_formula(rng, atoms, depth - 1);
    Formula b = random_formula(rng, atoms, depth - 1);
    return r <= 6 ? Formula::conj(a, b) : Formula::disj(a, b);
}

inline Rational random_threshold(std::mt19937_64& rng)
{
    long den = 1 + static_cast<long>(rng() % 16);
    long num = static_cast<long>(rng() % (den + 1));
    return Rational(num, den);
}

// Random formula that may contain counting quantifiers.
inline Formula random_counting_formula(std::mt19937_64& rng, AtomIndex atoms, std::size_t depth)
{
    if (depth > 1 && rng() % 4 == 0) {
        static const FormulaKind kinds[] = {FormulaKind::CountGeq, FormulaKind::CountLt, FormulaKind::CountGt,
                                            FormulaKind::CountLeq};
        return Formula::quantified(kinds[rng() % 4], random_threshold(rng),
                                   random_counting_formula(rng, atoms, depth - 1));
    }
    if (depth <= 1) {
        return random_formula(rng, atoms, 1);
    }
    switch (rng() % 3) {
    case 0:
        return Formula::negation(random_counting_formula(rng, atoms, depth - 1));
    case 1:
        return Formula::conj(random_counting_formula(rng, atoms, depth - 1),
                             random_counting_formula(rng, atoms, depth - 1));
    default:
        return Formula::disj(random_counting_formula(rng, atoms, depth - 1),
                             random_counting_formula(rng, atoms, depth - 1));
    }
}

// Criterion-2 corpus: exhaustive depth ≤ 3 over 4 atoms, then seeded random deeper samples over ≤ 5 atoms.
inline std::vector<Formula> oracle_corpus(std::size_t random_samples = 30000, std::uint64_t seed = 20240611)
{
    std::vector<Formula> corpus = exhaustive_formulas(4, 3);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_samples; ++i) {
        AtomIndex atoms = 1 + static_cast<AtomIndex>(rng() % 5);
        std::size_t depth = 4 + rng() % 3;
        corpus.push_back(random_formula(rng, atoms, depth));
    }
    return corpus;
}

// Proof-tree builder over the proof-file syntax.
inline DerivationTree node(const std::string& rule, const std::string& conclusion,
                           const std::map<std::string, std::string>& witnesses, const std::vector<std::string>& hyps,
                           std::vector<DerivationTree> premises = {})
{
    DerivationTree t{*parse_rule_name(rule), LabelledSequent{parse_labelled(conclusion)}, std::move(premises), {}, {}};
    for (const auto& h : hyps) {
        t.hypotheses.push_back(parse_hypothesis(h));
    }
    for (const auto& [k, v] : witnesses) {
        t.witnesses.emplace(k, parse_boolean(v));
    }
    return t;
}

// ⊢ x_i ∧ x_j ⤳ i ∧ j, each conjunct through R⤳∪ with an empty second witness.
inline DerivationTree conj_into(int i, int j)
{
    auto s = [](int k) { return std::to_string(k); };
    auto x = [&](int k) { return "x" + s(k); };
    std::string label = x(i) + " & " + x(j);
    auto leg = [&](int k) {
        return node("R~>union", "|- " + label + " ~> " + s(k), {{"c", x(k)}, {"d", "F"}},
                    {label + " |= " + x(k) + " | F"},
                    {node("Ax1", "|- " + x(k) + " ~> " + s(k), {}, {x(k) + " |= " + x(k)}),
                     node("R~>mu", "|- F ~> " + s(k), {}, {"mu(F) = 0"})});
    };
    return node("R~>and", "|- " + label + " ~> " + s(i) + " & " + s(j), {}, {}, {leg(i), leg(j)});
}

inline DerivationTree fex_derivation()
{
    DerivationTree c_branch = node("R~>C", "|- T ~> C{1/4}(1 & 2)", {{"c", "x1 & x2"}}, {"mu(x1 & x2) >= 1/4"},
                                   {conj_into(1, 2)});
    DerivationTree from_conj = node(
        "R<~inter", "|- x1 & x2 <~ 1 & 2", {{"c", "x1"}, {"d", "x2"}}, {"x1 & x2 |= x1 & x2"},
        {node("R1<~and", "|- x1 <~ 1 & 2", {}, {}, {node("Ax2", "|- x1 <~ 1", {}, {"x1 |= x1"})}),
         node("R2<~and", "|- x2 <~ 1 & 2", {}, {}, {node("Ax2", "|- x2 <~ 2", {}, {"x2 |= x2"})})});
    DerivationTree wd_branch = node("R~>WD", "|- T ~> WD{1/4}(1 & 2)", {{"c", "x1 & x2"}}, {"mu(x1 & x2) <= 1/4"},
                                    {from_conj});
    return node("R~>and", "|- T ~> C{1/4}(1 & 2) & WD{1/4}(1 & 2)", {}, {}, {c_branch, wd_branch});
}

inline DerivationTree fbias_derivation()
{
    const std::string f = "(1 & 2) | (3 & 4)";
    const std::string c = "(x1 & x2) | (x3 & x4)";
    DerivationTree left = node("R1~>or", "|- x1 & x2 ~> " + f, {}, {}, {conj_into(1, 2)});
    DerivationTree right = node("R2~>or", "|- x3 & x4 ~> " + f, {}, {}, {conj_into(3, 4)});
    DerivationTree un = node("R~>union", "|- " + c + " ~> " + f, {{"c", "x1 & x2"}, {"d", "x3 & x4"}},
                             {c + " |= " + c}, {left, right});
    return node("R~>C", "|- T ~> C{1/3}(" + f + ")", {{"c", c}}, {"mu(" + c + ") >= 1/3"}, {un});
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#ifdef CPL_FIXTURE_DIR
inline std::string fixture_path(const std::string& name)
{
    return std::string(CPL_FIXTURE_DIR) + "/" + name;
}
#endif

// Applies every single-node corruption the suite knows to `t` and reports, for each,
// the mutated path and the corrupted tree.
struct Mutation {
    std::vector<std::size_t> path;
    std::string what;
    DerivationTree tree;
};

inline DerivationTree& at(DerivationTree& t, const std::vector<std::size_t>& path)
{
    DerivationTree* n = &t;
    for (auto i : path) {
        n = &n->premises[i];
    }
    return *n;
}

inline void collect_paths(const DerivationTree& t, std::vector<std::size_t>& cur,
                          std::vector<std::vector<std::size_t>>& out)
{
    out.push_back(cur);
    for (std::size_t i = 0; i < t.premises.size(); ++i) {
        cur.push_back(i);
        collect_paths(t.premises[i], cur, out);
        cur.pop_back();
    }
}

inline std::vector<Mutation> mutations(const DerivationTree& original)
{
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> cur;
    collect_paths(original, cur, paths);
    std::vector<Mutation> out;
    auto add = [&](const std::vector<std::size_t>& p, std::string what, auto&& edit) {
        DerivationTree copy = original;
        DerivationTree& n = at(copy, p);
        if (edit(n)) {
            out.push_back({p, std::move(what), std::move(copy)});
        }
    };
    for (const auto& p : paths) {
        // A different rule of the same direction.
        add(p, "rule swapped", [](DerivationTree& n) {
            n.rule.rule = n.rule.rule == Rule::IntoAnd ? Rule::IntoOr1 : n.rule.rule == Rule::Ax1 ? Rule::IntoMu
                                                                                                  : Rule::IntoAnd;
            if (n.conclusion.conclusion.direction == Direction::From) {
                n.rule.rule = n.rule.rule == Rule::IntoAnd ? Rule::FromOr : Rule::FromNot;
            }
            return true;
        });
        add(p, "hypothesis dropped", [](DerivationTree& n) {
            if (n.hypotheses.empty()) {
                return false;
            }
            n.hypotheses.pop_back();
            return true;
        });
        add(p, "hypothesis corrupted", [](DerivationTree& n) {
            if (n.hypotheses.empty()) {
                return false;
            }
            Hypothesis& h = n.hypotheses.front();
            if (h.kind() == Hypothesis::Kind::Entails) {
                h = Hypothesis::entails(h.lhs(), BooleanFormula::var(99));
            } else {
                h = Hypothesis::measure_cmp(h.lhs(), h.relation(), h.threshold() == Rational(1) ? Rational(0) : Rational(1));
            }
            return true;
        });
        add(p, "premise dropped", [](DerivationTree& n) {
            if (n.premises.empty()) {
                return false;
            }
            n.premises.pop_back();
            return true;
        });
        add(p, "direction flipped", [](DerivationTree& n) {
            auto& d = n.conclusion.conclusion.direction;
            d = d == Direction::Into ? Direction::From : Direction::Into;
            return true;
        });
        add(p, "witness corrupted", [](DerivationTree& n) {
            if (n.witnesses.empty()) {
                return false;
            }
            n.witnesses.begin()->second = BooleanFormula::var(98);
            return true;
        });
        add(p, "extra witness", [](DerivationTree& n) {
            n.witnesses.emplace("e", BooleanFormula::top());
            return true;
        });
    }
    return out;
}

} // namespace cpl::testing
