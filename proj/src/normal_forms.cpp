#include "cpl/normal_forms.hpp"

#include <algorithm>
#include <set>

#include "cpl/errors.hpp"

namespace cpl {

CpfClause CpfClause::of(std::vector<Literal> literals)
{
    if (literals.empty()) {
        return top();
    }
    std::sort(literals.begin(), literals.end());
    return CpfClause(Kind::Literals, std::move(literals));
}

bool CpfClause::is_well_formed() const
{
    if (kind_ != Kind::Literals) {
        return literals_.empty();
    }
    if (literals_.empty()) {
        return false;
    }
    for (std::size_t i = 1; i < literals_.size(); ++i) {
        if (literals_[i].atom == literals_[i - 1].atom) {
            return false;
        }
    }
    return true;
}

std::optional<bool> CpfClause::polarity_of(AtomIndex atom) const
{
    auto it = std::lower_bound(literals_.begin(), literals_.end(), Literal{atom, false});
    if (it != literals_.end() && it->atom == atom) {
        return it->positive;
    }
    return std::nullopt;
}

bool CpfClause::contains(const Literal& l) const
{
    return std::binary_search(literals_.begin(), literals_.end(), l);
}

CpfClause CpfClause::with(const Literal& l) const
{
    std::vector<Literal> lits = literals_;
    lits.insert(std::upper_bound(lits.begin(), lits.end(), l), l);
    return CpfClause(Kind::Literals, std::move(lits));
}

Formula CpfClause::to_formula() const
{
    switch (kind_) {
    case Kind::Top:
        return Formula::top();
    case Kind::Bottom:
        return Formula::bottom();
    default:
        break;
    }
    Formula f = literals_.front().to_formula();
    for (std::size_t i = 1; i < literals_.size(); ++i) {
        f = Formula::conj(f, literals_[i].to_formula());
    }
    return f;
}

bool operator<(const CpfClause& a, const CpfClause& b)
{
    if (a.kind() != b.kind()) {
        return a.kind() < b.kind();
    }
    return std::lexicographical_compare(a.literals().begin(), a.literals().end(), b.literals().begin(),
                                        b.literals().end());
}

Formula ClauseDisjunction::to_formula() const
{
    switch (kind) {
    case DisjunctionKind::Top:
        return Formula::top();
    case DisjunctionKind::Bottom:
        return Formula::bottom();
    default:
        break;
    }
    if (clauses.empty()) {
        return Formula::bottom();
    }
    Formula f = clauses.front().to_formula();
    for (std::size_t i = 1; i < clauses.size(); ++i) {
        f = Formula::disj(f, clauses[i].to_formula());
    }
    return f;
}

std::vector<AtomIndex> ClauseDisjunction::support() const
{
    std::vector<AtomIndex> atoms;
    for (const auto& c : clauses) {
        for (const auto& l : c.literals()) {
            atoms.push_back(l.atom);
        }
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

namespace {

Formula item_formula(const DnfItem& item)
{
    switch (item.kind) {
    case DnfItem::Kind::Top:
        return Formula::top();
    case DnfItem::Kind::Bottom:
        return Formula::bottom();
    default:
        return item.literal.to_formula();
    }
}

using DnfClauses = std::vector<std::vector<DnfItem>>;

DnfClauses dnf_of(const Formula& f, bool positive)
{
    switch (f.kind()) {
    case FormulaKind::Atom:
        return {{DnfItem::lit({f.index(), positive})}};
    case FormulaKind::Top:
        return {{positive ? DnfItem::top() : DnfItem::bottom()}};
    case FormulaKind::Bottom:
        return {{positive ? DnfItem::bottom() : DnfItem::top()}};
    case FormulaKind::Not:
        return dnf_of(f.child(), !positive);
    case FormulaKind::And:
    case FormulaKind::Or: {
        DnfClauses l = dnf_of(f.left(), positive);
        DnfClauses r = dnf_of(f.right(), positive);
        bool is_union = (f.kind() == FormulaKind::Or) == positive;
        if (is_union) {
            l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
            return l;
        }
        DnfClauses out;
        out.reserve(l.size() * r.size());
        for (const auto& a : l) {
            for (const auto& b : r) {
                auto& c = out.emplace_back(a);
                c.insert(c.end(), b.begin(), b.end());
            }
        }
        return out;
    }
    default:
        throw Error("normal forms require a quantifier-free formula; eliminate quantifiers first");
    }
}

// Polite form of one DNF clause, following the per-literal scan: ⊥ collapses the
// clause, ⊤ is dropped, repeats are dropped, a complementary pair collapses it.
CpfClause polite_clause(const std::vector<DnfItem>& items)
{
    std::vector<Literal> kept;
    for (const auto& item : items) {
        if (item.kind == DnfItem::Kind::Bottom) {
            return CpfClause::bottom();
        }
        if (item.kind == DnfItem::Kind::Top) {
            continue;
        }
        bool repeated = false;
        for (const auto& k : kept) {
            if (k.atom == item.literal.atom) {
                if (k.positive != item.literal.positive) {
                    return CpfClause::bottom();
                }
                repeated = true;
                break;
            }
        }
        if (!repeated) {
            kept.push_back(item.literal);
        }
    }
    return CpfClause::of(std::move(kept));
}

void sort_unique(std::vector<CpfClause>& clauses)
{
    std::sort(clauses.begin(), clauses.end());
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
}

bool pairwise_contradictory(const std::vector<CpfClause>& clauses)
{
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        for (std::size_t j = i + 1; j < clauses.size(); ++j) {
            if (!is_contradictory_pair(clauses[i], clauses[j])) {
                return false;
            }
        }
    }
    return true;
}

// Drops every clause that refines another one, until no refinement is left.
void remove_refinements(std::vector<CpfClause>& clauses)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < clauses.size() && !changed; ++i) {
            for (std::size_t j = 0; j < clauses.size(); ++j) {
                if (i != j && !is_contradictory_pair(clauses[i], clauses[j])
                    && is_refinement(clauses[i], clauses[j])) {
                    clauses.erase(clauses.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }
    }
}

// Splits `c` on its smallest absent atom of `atoms` (C∧L, C∧L̄) until every atom occurs.
void expand_over(const CpfClause& c, const std::vector<AtomIndex>& atoms, std::vector<CpfClause>& out)
{
    for (AtomIndex a : atoms) {
        if (!c.polarity_of(a)) {
            expand_over(c.with({a, false}), atoms, out);
            expand_over(c.with({a, true}), atoms, out);
            return;
        }
    }
    out.push_back(c);
}

} // namespace

Formula Dnf::to_formula() const
{
    if (clauses.empty()) {
        return Formula::bottom();
    }
    auto clause_formula = [](const std::vector<DnfItem>& c) {
        if (c.empty()) {
            return Formula::top();
        }
        Formula f = item_formula(c.front());
        for (std::size_t i = 1; i < c.size(); ++i) {
            f = Formula::conj(f, item_formula(c[i]));
        }
        return f;
    };
    Formula f = clause_formula(clauses.front());
    for (std::size_t i = 1; i < clauses.size(); ++i) {
        f = Formula::disj(f, clause_formula(clauses[i]));
    }
    return f;
}

Dnf to_dnf(const Formula& f)
{
    return Dnf{dnf_of(f, true)};
}

DpfFormula to_dpf(const Dnf& d)
{
    std::vector<CpfClause> clauses;
    bool any_top = false;
    for (const auto& items : d.clauses) {
        CpfClause c = polite_clause(items);
        if (c.kind() == CpfClause::Kind::Top) {
            any_top = true;
        } else if (c.kind() == CpfClause::Kind::Literals) {
            clauses.push_back(std::move(c));
        }
    }
    if (any_top) {
        return DpfFormula::top();
    }
    if (clauses.empty()) {
        return DpfFormula::bottom();
    }
    sort_unique(clauses);
    return DpfFormula::of(std::move(clauses));
}

DyadicRational measure_cpf(const CpfClause& c)
{
    if (!c.is_well_formed()) {
        throw MalformedClause("clause repeats an atom or contains a complementary pair");
    }
    switch (c.kind()) {
    case CpfClause::Kind::Top:
        return DyadicRational(1, 0);
    case CpfClause::Kind::Bottom:
        return DyadicRational(0, 0);
    default:
        return DyadicRational(1, c.size());
    }
}

bool is_contradictory_pair(const CpfClause& a, const CpfClause& b)
{
    for (const auto& l : a.literals()) {
        if (b.contains(l.complement())) {
            return true;
        }
    }
    return false;
}

bool is_refinement(const CpfClause& fine, const CpfClause& coarse)
{
    return std::includes(fine.literals().begin(), fine.literals().end(), coarse.literals().begin(),
                         coarse.literals().end());
}

MnfFormula to_mnf(const DpfFormula& d)
{
    if (d.kind != DisjunctionKind::Clauses) {
        return MnfFormula(d);
    }
    std::vector<CpfClause> clauses = d.clauses;
    sort_unique(clauses);
    remove_refinements(clauses);
    if (pairwise_contradictory(clauses)) {
        return MnfFormula::of(std::move(clauses));
    }
    // Some pair overlaps without either refining the other: split every clause on
    // each atom of the support it lacks. The pieces are minterms, hence disjoint.
    const std::vector<AtomIndex> atoms = d.support();
    std::vector<CpfClause> split;
    for (const auto& c : clauses) {
        expand_over(c, atoms, split);
    }
    sort_unique(split);
    return MnfFormula::of(std::move(split));
}

DyadicRational measure_mnf(const MnfFormula& f)
{
    switch (f.kind) {
    case DisjunctionKind::Top:
        return DyadicRational(1, 0);
    case DisjunctionKind::Bottom:
        return DyadicRational(0, 0);
    default:
        break;
    }
    DyadicRational total;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        if (f.clauses[i].kind() != CpfClause::Kind::Literals) {
            throw MalformedMnf("constant clause inside a disjunction");
        }
        for (std::size_t j = i + 1; j < f.clauses.size(); ++j) {
            if (!is_contradictory_pair(f.clauses[i], f.clauses[j])) {
                throw MalformedMnf("clauses " + std::to_string(i) + " and " + std::to_string(j)
                                   + " are not mutually contradictory");
            }
        }
        total = total + measure_cpf(f.clauses[i]);
    }
    return total;
}

bool is_well_formed(const DpfFormula& d)
{
    if (d.kind != DisjunctionKind::Clauses) {
        return d.clauses.empty();
    }
    if (d.clauses.empty()) {
        return false;
    }
    std::set<std::vector<Literal>> seen;
    for (const auto& c : d.clauses) {
        if (c.kind() != CpfClause::Kind::Literals || !c.is_well_formed()) {
            return false;
        }
        if (!seen.insert(c.literals()).second) {
            return false;
        }
    }
    return true;
}

bool is_well_formed(const MnfFormula& m)
{
    return is_well_formed(DpfFormula(m)) && pairwise_contradictory(m.clauses);
}

DyadicRational measure_by_mnf(const Formula& f)
{
    return measure_mnf(to_mnf(to_dpf(to_dnf(f))));
}

namespace {

std::string join_clauses(const std::vector<std::string>& parts, const std::vector<bool>& compound)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += " | ";
        }
        if (parts.size() > 1 && compound[i]) {
            out += "(" + parts[i] + ")";
        } else {
            out += parts[i];
        }
    }
    return out;
}

std::string literal_text(const Literal& l)
{
    return (l.positive ? "" : "!") + std::to_string(l.atom);
}

} // namespace

std::string print_dnf(const Dnf& d)
{
    if (d.clauses.empty()) {
        return "F";
    }
    std::vector<std::string> parts;
    std::vector<bool> compound;
    for (const auto& c : d.clauses) {
        std::string s;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i > 0) {
                s += " & ";
            }
            switch (c[i].kind) {
            case DnfItem::Kind::Top:
                s += "T";
                break;
            case DnfItem::Kind::Bottom:
                s += "F";
                break;
            default:
                s += literal_text(c[i].literal);
            }
        }
        parts.push_back(c.empty() ? "T" : s);
        compound.push_back(c.size() > 1);
    }
    return join_clauses(parts, compound);
}

std::string print_normal_form(const ClauseDisjunction& d)
{
    switch (d.kind) {
    case DisjunctionKind::Top:
        return "T";
    case DisjunctionKind::Bottom:
        return "F";
    default:
        break;
    }
    std::vector<std::string> parts;
    std::vector<bool> compound;
    for (const auto& c : d.clauses) {
        std::string s;
        for (std::size_t i = 0; i < c.literals().size(); ++i) {
            if (i > 0) {
                s += " & ";
            }
            s += literal_text(c.literals()[i]);
        }
        parts.push_back(s);
        compound.push_back(c.literals().size() > 1);
    }
    return join_clauses(parts, compound);
}

} // namespace cpl
