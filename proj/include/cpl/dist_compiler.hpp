#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cpl/formula.hpp"
#include "cpl/normal_forms.hpp"
#include "cpl/rational.hpp"

namespace cpl {

/// Target probability numerator / 2^exponent.
struct DyadicSpec {
    std::uint64_t numerator = 0;
    std::uint32_t exponent = 0;

    bool valid() const;
};

struct OutcomeTable {
    struct Entry {
        std::string name;
        Rational probability;
    };
    std::vector<Entry> entries;
    /// Number of fresh atoms per draw.
    std::uint32_t width = 0;

    /// Lines "name probability"; blank lines and '#' comments are skipped. The width is
    /// the smallest n with every denominator dividing 2^n, or 0 when some probability is
    /// not dyadic (compile_discrete then reports it).
    static OutcomeTable parse(std::string_view text);
};

/// Block clauses are written over block positions 1..width.
struct ChainSpec {
    std::uint32_t width = 1;
    CpfClause success = CpfClause::top();
    CpfClause retry = CpfClause::bottom();
    std::uint32_t depth = 1;
    AtomIndex fresh_from = 1;

    /// Throws RangeError when the clauses are not contradictory well-formed clauses within the block.
    void validate() const;
    Rational success_measure() const;
    Rational retry_measure() const;
    /// s·(1 − r^m)/(1 − r), or s·m when r = 1.
    Rational closed_form() const;
};

struct CompiledEvent {
    Formula formula;
    MnfFormula mnf;
};

/// The first `numerator` minterms of atoms fresh_from..fresh_from+exponent-1 in
/// lexicographic order (negative before positive), as an MNF disjunction.
CompiledEvent compile_bernoulli(const DyadicSpec& spec, AtomIndex fresh_from);

/// Consecutive minterm ranges, one per outcome in table order. Throws CompilationError
/// for a probability that is not a multiple of 2^-width or for a table not summing to 1.
std::map<std::string, CompiledEvent> compile_discrete(const OutcomeTable& t, AtomIndex fresh_from);

/// S₁ ∨ (R₁∧S₂) ∨ (R₁∧R₂∧S₃) ∨ … to `depth` blocks of `width` fresh atoms each.
CompiledEvent compile_chain(const ChainSpec& spec);

struct Approximation {
    CompiledEvent event;
    Rational measure;
    /// p − measure, in [0, bound).
    Rational error;
    /// 2^-bits.
    Rational bound;
};

/// Down-approximation by binary truncation: ⌊p·2^bits⌋ / 2^bits.
Approximation approximate_bernoulli(const Rational& p, std::uint32_t bits, AtomIndex fresh_from);

/// Parses a block clause such as "i & j", "!i & j" or "1 & !2". Letters name block
/// positions in alphabetical order of the letters used across `letters_in`.
CpfClause parse_block_clause(std::string_view text, std::string_view letters_in);

} // namespace cpl
