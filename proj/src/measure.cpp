#include "cpl/measure.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

#include "cpl/errors.hpp"
#include "cpl/normal_forms.hpp"

namespace cpl {

ProductMeasure::ProductMeasure(Rational default_bias, std::map<AtomIndex, Rational> overrides)
    : default_bias_(std::move(default_bias)), overrides_(std::move(overrides))
{
    if (!default_bias_.in_unit_interval()) {
        throw RangeError("bias " + default_bias_.str() + " outside [0,1]");
    }
    for (const auto& [atom, bias] : overrides_) {
        if (atom == 0) {
            throw RangeError("atom indices start at 1");
        }
        if (!bias.in_unit_interval()) {
            throw RangeError("bias " + bias.str() + " for atom " + std::to_string(atom) + " outside [0,1]");
        }
    }
}

const Rational& ProductMeasure::bias(AtomIndex atom) const
{
    auto it = overrides_.find(atom);
    return it == overrides_.end() ? default_bias_ : it->second;
}

bool ProductMeasure::is_uniform() const
{
    const Rational half(1, 2);
    return default_bias_ == half
        && std::all_of(overrides_.begin(), overrides_.end(), [&](const auto& kv) { return kv.second == half; });
}

Verdict Verdict::classify(const Rational& measure)
{
    if (measure == Rational(1)) {
        return {Kind::Valid, measure};
    }
    if (measure.is_zero()) {
        return {Kind::Invalid, measure};
    }
    return {Kind::Contingent, measure};
}

std::string Verdict::str() const
{
    switch (kind_) {
    case Kind::Valid:
        return "Valid";
    case Kind::Invalid:
        return "Invalid";
    default:
        return "Contingent(" + measure_.fraction_str() + ")";
    }
}

namespace {

// Postfix program evaluated 64 assignments at a time.
struct Op {
    enum class Code : std::uint8_t { Var, Const, Not, And, Or } code;
    std::uint32_t arg = 0; // variable position, or constant value
};

void compile(const Formula& f, const std::vector<AtomIndex>& atoms, std::vector<Op>& prog)
{
    switch (f.kind()) {
    case FormulaKind::Atom: {
        auto pos = std::lower_bound(atoms.begin(), atoms.end(), f.index()) - atoms.begin();
        prog.push_back({Op::Code::Var, static_cast<std::uint32_t>(pos)});
        return;
    }
    case FormulaKind::Top:
        prog.push_back({Op::Code::Const, 1});
        return;
    case FormulaKind::Bottom:
        prog.push_back({Op::Code::Const, 0});
        return;
    case FormulaKind::Not:
        compile(f.child(), atoms, prog);
        prog.push_back({Op::Code::Not});
        return;
    case FormulaKind::And:
    case FormulaKind::Or:
        compile(f.left(), atoms, prog);
        compile(f.right(), atoms, prog);
        prog.push_back({f.kind() == FormulaKind::And ? Op::Code::And : Op::Code::Or});
        return;
    default:
        throw Error("brute-force measurement requires a quantifier-free formula");
    }
}

// Lane j of a word is the assignment whose low six positions are the bits of j.
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t run(const std::vector<Op>& prog, std::uint64_t block, std::vector<std::uint64_t>& stack)
{
    stack.clear();
    for (const auto& op : prog) {
        switch (op.code) {
        case Op::Code::Var:
            if (op.arg < 6) {
                stack.push_back(kLanePattern[op.arg]);
            } else {
                stack.push_back(((block >> (op.arg - 6)) & 1u) ? ~0ull : 0ull);
            }
            break;
        case Op::Code::Const:
            stack.push_back(op.arg ? ~0ull : 0ull);
            break;
        case Op::Code::Not:
            stack.back() = ~stack.back();
            break;
        case Op::Code::And: {
            std::uint64_t r = stack.back();
            stack.pop_back();
            stack.back() &= r;
            break;
        }
        case Op::Code::Or: {
            std::uint64_t r = stack.back();
            stack.pop_back();
            stack.back() |= r;
            break;
        }
        }
    }
    return stack.back();
}

Rational weight(const Rational& bias, bool value)
{
    return value ? bias : Rational(1) - bias;
}

} // namespace

Rational measure_oracle(const Formula& f, const ProductMeasure& m, std::size_t atom_cap)
{
    const std::vector<AtomIndex> atoms = support(f);
    const std::size_t n = atoms.size();
    if (n > atom_cap) {
        throw ResourceError("support of " + std::to_string(n) + " atoms exceeds the enumeration cap of "
                            + std::to_string(atom_cap));
    }
    if (n > 63 + 6) {
        throw ResourceError("support too large to enumerate");
    }
    std::vector<Op> prog;
    compile(f, atoms, prog);

    const std::size_t low = std::min<std::size_t>(n, 6);
    const std::uint64_t lanes_valid = low == 6 ? ~0ull : ((1ull << (1u << low)) - 1);
    const std::uint64_t blocks = n > 6 ? (1ull << (n - 6)) : 1;
    std::vector<std::uint64_t> stack;
    stack.reserve(prog.size());

    if (m.is_uniform()) {
        mpz_class count = 0;
        std::uint64_t partial = 0;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            partial += static_cast<std::uint64_t>(std::popcount(run(prog, b, stack) & lanes_valid));
            if (partial > (1ull << 62)) {
                count += mpz_class(std::to_string(partial));
                partial = 0;
            }
        }
        count += mpz_class(std::to_string(partial));
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
        return Rational(mpq_class(count, den));
    }

    std::vector<Rational> lane_weight(std::size_t{1} << low);
    for (std::size_t j = 0; j < lane_weight.size(); ++j) {
        Rational w(1);
        for (std::size_t p = 0; p < low; ++p) {
            w *= weight(m.bias(atoms[p]), (j >> p) & 1u);
        }
        lane_weight[j] = w;
    }
    std::unordered_map<std::uint64_t, Rational> word_mass;
    Rational total(0);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t word = run(prog, b, stack) & lanes_valid;
        if (word == 0) {
            continue;
        }
        auto it = word_mass.find(word);
        if (it == word_mass.end()) {
            Rational s(0);
            for (std::uint64_t w = word; w != 0; w &= w - 1) {
                s += lane_weight[static_cast<std::size_t>(std::countr_zero(w))];
            }
            it = word_mass.emplace(word, s).first;
        }
        Rational high(1);
        for (std::size_t p = 6; p < n; ++p) {
            high *= weight(m.bias(atoms[p]), (b >> (p - 6)) & 1u);
        }
        total += high * it->second;
    }
    return total;
}

bool threshold_holds(FormulaKind quantifier, const Rational& measure, const Rational& q)
{
    switch (quantifier) {
    case FormulaKind::CountGeq:
        return measure >= q;
    case FormulaKind::CountLt:
        return measure < q;
    case FormulaKind::CountGt:
        return measure > q;
    case FormulaKind::CountLeq:
        return measure <= q;
    default:
        throw Error("not a quantifier");
    }
}

namespace {

Rational measure_quantifier_free(const Formula& f, const ProductMeasure& m, Strategy strategy, std::size_t cap)
{
    if (strategy == Strategy::Mnf) {
        return measure_by_mnf(f).to_rational();
    }
    return measure_oracle(f, m, cap);
}

} // namespace

Formula eliminate_quantifiers(const Formula& f, const ProductMeasure& m, Strategy measurer, std::size_t atom_cap)
{
    if (measurer == Strategy::Mnf && !m.is_uniform()) {
        throw UnsupportedStrategy("the MNF strategy measures fair atoms only; use the oracle strategy");
    }
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bottom:
        return f;
    case FormulaKind::Not:
        return Formula::negation(eliminate_quantifiers(f.child(), m, measurer, atom_cap));
    case FormulaKind::And:
        return Formula::conj(eliminate_quantifiers(f.left(), m, measurer, atom_cap),
                             eliminate_quantifiers(f.right(), m, measurer, atom_cap));
    case FormulaKind::Or:
        return Formula::disj(eliminate_quantifiers(f.left(), m, measurer, atom_cap),
                             eliminate_quantifiers(f.right(), m, measurer, atom_cap));
    default: {
        Formula body = eliminate_quantifiers(f.child(), m, measurer, atom_cap);
        Rational mu = measure_quantifier_free(body, m, measurer, atom_cap);
        return threshold_holds(f.kind(), mu, f.threshold()) ? Formula::top() : Formula::bottom();
    }
    }
}

Rational measure(const Formula& f, const ProductMeasure& m, Strategy strategy, std::size_t atom_cap)
{
    if (strategy == Strategy::Mnf && !m.is_uniform()) {
        throw UnsupportedStrategy("the MNF strategy measures fair atoms only; use the oracle strategy");
    }
    return measure_quantifier_free(eliminate_quantifiers(f, m, strategy, atom_cap), m, strategy, atom_cap);
}

Verdict verdict(const Formula& f, const ProductMeasure& m, Strategy strategy, std::size_t atom_cap)
{
    return Verdict::classify(measure(f, m, strategy, atom_cap));
}

DualityReport check_duality(const Formula& f, const Rational& q, const ProductMeasure& m, std::size_t atom_cap)
{
    const Rational co = Rational(1) - q;
    const Formula neg = Formula::negation(f);
    auto v = [&](const Formula& g) { return verdict(g, m, Strategy::Oracle, atom_cap); };

    const Verdict c_neg = v(Formula::count_geq(q, neg));
    const Verdict d_neg = v(Formula::count_lt(q, neg));
    const struct {
        const char* law;
        const Verdict& lhs;
        Verdict rhs;
    } laws[] = {
        {"C{q}(!f) == WD{1-q}(f)", c_neg, v(Formula::count_leq(co, f))},
        {"C{q}(!f) == !WC{1-q}(f)", c_neg, v(Formula::negation(Formula::count_gt(co, f)))},
        {"D{q}(!f) == WC{1-q}(f)", d_neg, v(Formula::count_gt(co, f))},
        {"D{q}(!f) == !WD{1-q}(f)", d_neg, v(Formula::negation(Formula::count_leq(co, f)))},
    };
    DualityReport report;
    for (const auto& law : laws) {
        if (!(law.lhs == law.rhs)) {
            report.violations.push_back({law.law, law.lhs, law.rhs});
        }
    }
    return report;
}

} // namespace cpl
