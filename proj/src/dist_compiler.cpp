#include "cpl/dist_compiler.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cpl/errors.hpp"

namespace cpl {

namespace {

constexpr std::uint64_t kMaxMinterms = std::uint64_t{1} << 20;
constexpr std::uint32_t kMaxWidth = 62;

mpz_class pow2(std::uint64_t n)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, n);
    return r;
}

// Minterm `index` over `width` atoms, first atom most significant, 0 = negative.
CpfClause minterm(std::uint64_t index, std::uint32_t width, AtomIndex fresh_from)
{
    std::vector<Literal> lits;
    lits.reserve(width);
    for (std::uint32_t k = 0; k < width; ++k) {
        bool positive = (index >> (width - 1 - k)) & 1u;
        lits.push_back({fresh_from + k, positive});
    }
    return CpfClause::of(std::move(lits));
}

CompiledEvent minterm_range(std::uint64_t first, std::uint64_t count, std::uint32_t width, AtomIndex fresh_from)
{
    if (count == 0) {
        return {Formula::bottom(), MnfFormula::bottom()};
    }
    if (width < 64 && count == (std::uint64_t{1} << width)) {
        return {Formula::top(), MnfFormula::top()};
    }
    if (count > kMaxMinterms) {
        throw ResourceError("encoding needs " + std::to_string(count) + " minterms");
    }
    std::vector<CpfClause> clauses;
    clauses.reserve(count);
    for (std::uint64_t i = first; i < first + count; ++i) {
        clauses.push_back(minterm(i, width, fresh_from));
    }
    MnfFormula mnf = MnfFormula::of(std::move(clauses));
    Formula f = mnf.to_formula();
    return {f, std::move(mnf)};
}

void check_fresh(AtomIndex fresh_from)
{
    if (fresh_from == 0) {
        throw RangeError("atom indices start at 1");
    }
}

} // namespace

bool DyadicSpec::valid() const
{
    return exponent <= kMaxWidth && numerator <= (std::uint64_t{1} << exponent);
}

OutcomeTable OutcomeTable::parse(std::string_view text)
{
    OutcomeTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        std::string_view s = line;
        if (auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        if (s.empty()) {
            continue;
        }
        std::size_t split = s.find_last_of(" \t");
        if (split == std::string_view::npos) {
            throw ParseError("outcome line needs a name and a probability", line_start, {"name", "rational"});
        }
        std::string_view name = s.substr(0, split);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
            name.remove_suffix(1);
        }
        Rational p = Rational::parse(s.substr(split + 1));
        if (!p.in_unit_interval()) {
            throw ParseError("probability " + p.str() + " outside [0,1]", line_start + split + 1, {"rational in [0,1]"});
        }
        t.entries.push_back({std::string(name), p});
    }
    std::uint32_t width = 0;
    for (const auto& e : t.entries) {
        auto d = DyadicRational::from_rational(e.probability);
        if (!d) {
            width = 0;
            break;
        }
        width = std::max<std::uint32_t>(width, static_cast<std::uint32_t>(d->exponent()));
    }
    t.width = width;
    return t;
}

void ChainSpec::validate() const
{
    if (width == 0 || width > kMaxWidth) {
        throw RangeError("block width must be in 1.." + std::to_string(kMaxWidth));
    }
    if (depth == 0) {
        throw RangeError("chain depth must be positive");
    }
    check_fresh(fresh_from);
    for (const CpfClause* c : {&success, &retry}) {
        if (c->kind() != CpfClause::Kind::Literals || !c->is_well_formed()) {
            throw RangeError("block clauses must be polite conjunctions of literals");
        }
        for (const auto& l : c->literals()) {
            if (l.atom < 1 || l.atom > width) {
                throw RangeError("block clause mentions position " + std::to_string(l.atom) + " outside 1.."
                                 + std::to_string(width));
            }
        }
    }
    if (!is_contradictory_pair(success, retry)) {
        throw RangeError("success and retry clauses must be mutually contradictory");
    }
}

Rational ChainSpec::success_measure() const
{
    return measure_cpf(success).to_rational();
}

Rational ChainSpec::retry_measure() const
{
    return measure_cpf(retry).to_rational();
}

Rational ChainSpec::closed_form() const
{
    const Rational s = success_measure();
    const Rational r = retry_measure();
    if (r == Rational(1)) {
        return s * Rational(static_cast<long>(depth));
    }
    Rational rm(1);
    for (std::uint32_t i = 0; i < depth; ++i) {
        rm *= r;
    }
    return s * (Rational(1) - rm) / (Rational(1) - r);
}

CompiledEvent compile_bernoulli(const DyadicSpec& spec, AtomIndex fresh_from)
{
    if (!spec.valid()) {
        throw RangeError("dyadic target " + std::to_string(spec.numerator) + "/2^" + std::to_string(spec.exponent)
                         + " is not a probability");
    }
    check_fresh(fresh_from);
    return minterm_range(0, spec.numerator, spec.exponent, fresh_from);
}

std::map<std::string, CompiledEvent> compile_discrete(const OutcomeTable& t, AtomIndex fresh_from)
{
    check_fresh(fresh_from);
    if (t.width > kMaxWidth) {
        throw RangeError("table width too large");
    }
    const mpz_class scale = pow2(t.width);
    std::vector<std::uint64_t> counts;
    Rational total(0);
    for (const auto& e : t.entries) {
        mpq_class scaled = e.probability.get() * scale;
        if (scaled.get_den() != 1) {
            throw CompilationError("probability " + e.probability.str() + " of '" + e.name
                                   + "' is not dyadic at width " + std::to_string(t.width)
                                   + "; use approximate_bernoulli (compile approx) instead");
        }
        counts.push_back(scaled.get_num().get_ui());
        total += e.probability;
    }
    if (total != Rational(1)) {
        throw CompilationError("outcome probabilities sum to " + total.str() + ", not 1");
    }
    std::map<std::string, CompiledEvent> out;
    std::uint64_t first = 0;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (out.count(t.entries[i].name)) {
            throw CompilationError("duplicate outcome '" + t.entries[i].name + "'");
        }
        out.emplace(t.entries[i].name, minterm_range(first, counts[i], t.width, fresh_from));
        first += counts[i];
    }
    return out;
}

CompiledEvent compile_chain(const ChainSpec& spec)
{
    spec.validate();
    auto shift = [&](const CpfClause& c, std::uint32_t block) {
        std::vector<Literal> lits;
        for (const auto& l : c.literals()) {
            lits.push_back({spec.fresh_from + block * spec.width + (l.atom - 1), l.positive});
        }
        return lits;
    };
    std::vector<CpfClause> clauses;
    std::vector<Literal> prefix;
    for (std::uint32_t k = 0; k < spec.depth; ++k) {
        std::vector<Literal> lits = prefix;
        auto s = shift(spec.success, k);
        lits.insert(lits.end(), s.begin(), s.end());
        clauses.push_back(CpfClause::of(std::move(lits)));
        auto r = shift(spec.retry, k);
        prefix.insert(prefix.end(), r.begin(), r.end());
    }
    MnfFormula mnf = MnfFormula::of(clauses);
    // Keep the disjuncts in chain order; the formula mirrors S₁ ∨ (R₁∧S₂) ∨ …
    Formula f = mnf.to_formula();
    std::sort(mnf.clauses.begin(), mnf.clauses.end());
    return {f, std::move(mnf)};
}

Approximation approximate_bernoulli(const Rational& p, std::uint32_t bits, AtomIndex fresh_from)
{
    if (!p.in_unit_interval()) {
        throw RangeError("probability " + p.str() + " outside [0,1]");
    }
    if (bits == 0 || bits > kMaxWidth) {
        throw RangeError("bits must be in 1.." + std::to_string(kMaxWidth));
    }
    const mpz_class scale = pow2(bits);
    mpz_class truncated;
    mpq_class scaled = p.get() * scale;
    mpz_fdiv_q(truncated.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    DyadicSpec spec{truncated.get_ui(), bits};
    Approximation a{compile_bernoulli(spec, fresh_from), Rational(mpq_class(truncated, scale)), Rational(0),
                    Rational(mpq_class(1, scale))};
    a.error = p - a.measure;
    return a;
}

CpfClause parse_block_clause(std::string_view text, std::string_view letters_in)
{
    std::set<char> letters;
    for (char c : letters_in) {
        if (std::islower(static_cast<unsigned char>(c))) {
            letters.insert(c);
        }
    }
    std::vector<Literal> lits;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
    };
    while (true) {
        skip();
        bool positive = true;
        if (i < text.size() && text[i] == '!') {
            positive = false;
            ++i;
            skip();
        }
        if (i >= text.size()) {
            throw ParseError("expected block literal", i, {"letter", "position"});
        }
        AtomIndex pos = 0;
        if (std::islower(static_cast<unsigned char>(text[i]))) {
            letters.insert(text[i]);
            pos = static_cast<AtomIndex>(std::distance(letters.begin(), letters.find(text[i])) + 1);
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            pos = static_cast<AtomIndex>(std::stoul(std::string(text.substr(start, i - start))));
            if (pos == 0) {
                throw ParseError("block positions start at 1", start, {"position >= 1"});
            }
        } else {
            throw ParseError(std::string("unexpected character '") + text[i] + "' in block clause", i,
                             {"letter", "position", "'!'"});
        }
        lits.push_back({pos, positive});
        skip();
        if (i >= text.size()) {
            break;
        }
        if (text[i] != '&') {
            throw ParseError("block clauses are conjunctions", i, {"'&'", "end of input"});
        }
        ++i;
    }
    return CpfClause::of(std::move(lits));
}

} // namespace cpl
