#include <doctest.h>

#include <random>

#include "cpl/errors.hpp"
#include "cpl/measure.hpp"
#include "cpl/normal_forms.hpp"
#include "cpl/parser.hpp"
#include "support.hpp"

using namespace cpl;

namespace {

const ProductMeasure kUniform = ProductMeasure::uniform();
const ProductMeasure kThird(Rational(1, 3));

Rational mu(const std::string& s, const ProductMeasure& m = kUniform) { return measure_oracle(parse_formula(s), m); }

} // namespace

TEST_CASE("product measures")
{
    CHECK(kUniform.is_uniform());
    CHECK_FALSE(kThird.is_uniform());
    CHECK(ProductMeasure(Rational(1, 2), {{3, Rational(1, 2)}}).is_uniform());
    ProductMeasure m(Rational(1, 3), {{2, Rational(3, 4)}});
    CHECK(m.bias(1) == Rational(1, 3));
    CHECK(m.bias(2) == Rational(3, 4));
    CHECK_THROWS_AS(ProductMeasure(Rational(3, 2)), RangeError);
    CHECK_THROWS_AS(ProductMeasure(Rational(1, 2), {{1, Rational(-1)}}), RangeError);
}

TEST_CASE("oracle examples")
{
    CHECK(mu("1 & 2") == Rational(1, 4));
    CHECK(mu("T") == Rational(1));
    CHECK(mu("T", kThird) == Rational(1));
    CHECK(mu("F") == Rational(0));
    CHECK(mu("1 & 2", kThird) == Rational(1, 9));
    CHECK(mu("(1&2)|(3&4)") == Rational(7, 16));
    CHECK(mu("1 | !1") == Rational(1));
    CHECK(mu("1 & !1") == Rational(0));
    CHECK(mu("40 & 2") == Rational(1, 4));
    CHECK(mu("1 | 2", ProductMeasure(Rational(0), {{2, Rational(1)}})) == Rational(1));
    CHECK_THROWS_AS(mu("C{1/2}(1)"), Error);
}

TEST_CASE("atom cap")
{
    std::string wide = "1";
    for (int i = 2; i <= 31; ++i) {
        wide += " & " + std::to_string(i);
    }
    CHECK_THROWS_AS(mu(wide), ResourceError);
    CHECK(measure_oracle(parse_formula("1 & 2 & 3"), kUniform, 3) == Rational(1, 8));
    CHECK_THROWS_AS(measure_oracle(parse_formula("1 & 2 & 3"), kUniform, 2), ResourceError);
    // The MNF path has no cap.
    CHECK(measure(parse_formula(wide), kUniform, Strategy::Mnf) == Rational(1, 1L << 30) / Rational(2));
}

TEST_CASE("oracle matches the naive evaluator")
{
    std::mt19937_64 rng(3);
    testing::NaiveOracle uniform;
    testing::NaiveOracle biased(ProductMeasure(Rational(1, 3), {{2, Rational(5, 7)}, {4, Rational(0)}}));
    ProductMeasure bm(Rational(1, 3), {{2, Rational(5, 7)}, {4, Rational(0)}});
    for (int i = 0; i < 1000; ++i) {
        Formula f = testing::random_formula(rng, 1 + rng() % 8, 6);
        CHECK(measure_oracle(f, kUniform) == uniform.measure(f));
        CHECK(measure_oracle(f, bm) == biased.measure(f));
    }
}

TEST_CASE("wide supports exercise the multi-word path")
{
    std::mt19937_64 rng(5);
    testing::NaiveOracle uniform;
    ProductMeasure bm(Rational(2, 5));
    testing::NaiveOracle biased(bm);
    for (int i = 0; i < 30; ++i) {
        Formula f = testing::random_formula(rng, 12, 7);
        CHECK(measure_oracle(f, kUniform) == uniform.measure(f));
        CHECK(measure_oracle(f, bm) == biased.measure(f));
        CHECK(measure_oracle(f, kUniform) == measure_by_mnf(f).to_rational());
    }
}

TEST_CASE("quantifier elimination")
{
    auto elim = [](const std::string& s) { return eliminate_quantifiers(parse_formula(s), kUniform, Strategy::Oracle); };
    CHECK(elim("C{1/4}(1&2)") == Formula::top());
    CHECK(elim("WD{1/4}(1&2)") == Formula::top());
    CHECK(elim("C{1/2}(1&2)") == Formula::bottom());
    CHECK(elim("D{1/3}((1&2)|(3&4))") == Formula::bottom());
    CHECK(elim("1 & C{1/2}(2)") == (Formula::atom(1) & Formula::top()));
    CHECK(eliminate_quantifiers(parse_formula("C{1/9}(1&2)"), kThird, Strategy::Oracle) == Formula::top());
    CHECK(eliminate_quantifiers(parse_formula("WC{1/9}(1&2)"), kThird, Strategy::Oracle) == Formula::bottom());
    CHECK_THROWS_AS(eliminate_quantifiers(parse_formula("C{1/9}(1&2)"), kThird, Strategy::Mnf), UnsupportedStrategy);
}

TEST_CASE("measure and verdict")
{
    for (Strategy s : {Strategy::Oracle, Strategy::Mnf}) {
        CHECK(measure(parse_formula("C{1/4}(1&2) & WD{1/4}(1&2)"), kUniform, s) == Rational(1));
        CHECK(measure(parse_formula("C{3/4}(!(1&2)) & WD{3/4}(!(1&2))"), kUniform, s) == Rational(1));
        CHECK(measure(parse_formula("1 | (1 & 3)"), kUniform, s) == Rational(1, 2));
        CHECK(verdict(parse_formula("C{1/3}((1&2)|(3&4))"), kUniform, s).kind() == Verdict::Kind::Valid);
        CHECK(verdict(parse_formula("F"), kUniform, s).kind() == Verdict::Kind::Invalid);
        CHECK(verdict(parse_formula("1 | (!1 & 2)"), kUniform, s).str() == "Contingent(3/4)");
    }
    CHECK_THROWS_AS(measure(parse_formula("1"), kThird, Strategy::Mnf), UnsupportedStrategy);
    CHECK(verdict(parse_formula("C{1/9}(1&2)"), kThird).kind() == Verdict::Kind::Valid);
    CHECK(Verdict::classify(Rational(1, 2)).str() == "Contingent(1/2)");
}

TEST_CASE("nested quantifiers against the naive evaluator")
{
    std::mt19937_64 rng(9);
    testing::NaiveOracle uniform;
    testing::NaiveOracle third(kThird);
    for (int i = 0; i < 500; ++i) {
        Formula f = testing::random_counting_formula(rng, 4, 5);
        CHECK(measure(f, kUniform, Strategy::Oracle) == uniform.measure(f));
        CHECK(measure(f, kUniform, Strategy::Mnf) == uniform.measure(f));
        CHECK(measure(f, kThird, Strategy::Oracle) == third.measure(f));
    }
}

TEST_CASE("threshold_holds")
{
    CHECK(threshold_holds(FormulaKind::CountGeq, Rational(1, 4), Rational(1, 4)));
    CHECK_FALSE(threshold_holds(FormulaKind::CountLt, Rational(1, 4), Rational(1, 4)));
    CHECK_FALSE(threshold_holds(FormulaKind::CountGt, Rational(1, 4), Rational(1, 4)));
    CHECK(threshold_holds(FormulaKind::CountLeq, Rational(1, 4), Rational(1, 4)));
}

TEST_CASE("duality")
{
    CHECK(check_duality(parse_formula("1 & 2"), Rational(3, 4), kUniform).ok());
    CHECK(verdict(parse_formula("C{3/4}(!(1&2))"), kUniform) == verdict(parse_formula("WD{1/4}(1&2)"), kUniform));
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        Formula f = testing::random_counting_formula(rng, 3, 4);
        Rational q = testing::random_threshold(rng);
        CHECK(check_duality(f, q, kUniform).ok());
        CHECK(check_duality(f, q, kThird).ok());
    }
}
