#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpl/formula.hpp"
#include "cpl/rational.hpp"

namespace cpl {

/// Largest support the brute-force enumerator accepts unless overridden.
inline constexpr std::size_t kDefaultAtomCap = 30;

/// Independent atoms, each true with its own rational bias.
/// The uniform cylinder measure is default_bias = 1/2 with no overrides.
class ProductMeasure {
public:
    ProductMeasure() = default;
    /// Throws RangeError for biases outside [0,1].
    explicit ProductMeasure(Rational default_bias, std::map<AtomIndex, Rational> overrides = {});

    static ProductMeasure uniform() { return ProductMeasure(); }

    const Rational& default_bias() const noexcept { return default_bias_; }
    const std::map<AtomIndex, Rational>& overrides() const noexcept { return overrides_; }
    const Rational& bias(AtomIndex atom) const;
    bool is_uniform() const;

private:
    Rational default_bias_{1, 2};
    std::map<AtomIndex, Rational> overrides_;
};

enum class Strategy { Oracle, Mnf };

class Verdict {
public:
    enum class Kind { Valid, Invalid, Contingent };

    static Verdict classify(const Rational& measure);

    Kind kind() const noexcept { return kind_; }
    const Rational& measure() const noexcept { return measure_; }
    /// "Valid", "Invalid" or "Contingent(m/n)".
    std::string str() const;

    friend bool operator==(const Verdict&, const Verdict&) = default;

private:
    Verdict(Kind kind, Rational measure) : kind_(kind), measure_(std::move(measure)) {}
    Kind kind_;
    Rational measure_;
};

/// Exhaustive enumeration over the support of a quantifier-free formula.
/// Throws Error on quantifiers and ResourceError when the support exceeds `atom_cap`.
Rational measure_oracle(const Formula& f, const ProductMeasure& m, std::size_t atom_cap = kDefaultAtomCap);

/// Replaces quantified subformulas, innermost first, by ⊤ or ⊥.
Formula eliminate_quantifiers(const Formula& f, const ProductMeasure& m, Strategy measurer,
                              std::size_t atom_cap = kDefaultAtomCap);

/// Measure of eliminate_quantifiers(f). The MNF strategy requires the uniform measure
/// (UnsupportedStrategy otherwise).
Rational measure(const Formula& f, const ProductMeasure& m, Strategy strategy,
                 std::size_t atom_cap = kDefaultAtomCap);

Verdict verdict(const Formula& f, const ProductMeasure& m, Strategy strategy = Strategy::Oracle,
                std::size_t atom_cap = kDefaultAtomCap);

/// Whether the set of valuations of `f` is ⊤-like given an already-known measure
/// and a quantifier comparison.
bool threshold_holds(FormulaKind quantifier, const Rational& measure, const Rational& q);

struct DualityViolation {
    std::string law;
    Verdict lhs;
    Verdict rhs;
};

struct DualityReport {
    std::vector<DualityViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks, at the level of verdicts:
///   C{q}(!f) ≡ WD{1-q}(f)     C{q}(!f) ≡ !WC{1-q}(f)
///   D{q}(!f) ≡ WC{1-q}(f)     D{q}(!f) ≡ !WD{1-q}(f)
DualityReport check_duality(const Formula& f, const Rational& q, const ProductMeasure& m,
                            std::size_t atom_cap = kDefaultAtomCap);

} // namespace cpl
