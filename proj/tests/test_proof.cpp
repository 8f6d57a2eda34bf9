#include <doctest.h>

#include <algorithm>

#include "cpl/errors.hpp"
#include "cpl/measure.hpp"
#include "cpl/parser.hpp"
#include "cpl/proof.hpp"
#include "cpl/proof_format.hpp"
#include "support.hpp"

using namespace cpl;
using cpl::testing::node;

namespace {

const ProductMeasure kUniform = ProductMeasure::uniform();

bool is_prefix_or_parent(const std::vector<std::size_t>& failure, const std::vector<std::size_t>& mutated)
{
    if (failure == mutated) {
        return true;
    }
    return !mutated.empty() && failure == std::vector<std::size_t>(mutated.begin(), mutated.end() - 1);
}

} // namespace

TEST_CASE("rule names")
{
    for (int r = 0; r <= static_cast<int>(Rule::FromWD); ++r) {
        RuleTag tag{static_cast<Rule>(r), false};
        CHECK(parse_rule_name(rule_name(tag)) == tag);
        if (is_measure_dependent(tag.rule)) {
            RuleTag star{tag.rule, true};
            CHECK(rule_name(star).back() == '*');
            CHECK(parse_rule_name(rule_name(star)) == star);
        }
    }
    CHECK_FALSE(parse_rule_name("Ax1*"));
    CHECK_FALSE(parse_rule_name("R~>nope"));
    CHECK(parse_rule_name("R~>C*")->generalized);
}

TEST_CASE("hypotheses")
{
    CHECK(boolean_entails(parse_boolean("x1 & x2"), parse_boolean("x1")));
    CHECK_FALSE(boolean_entails(parse_boolean("x1"), parse_boolean("x2")));
    CHECK(boolean_measure(parse_boolean("x1 & x2"), kUniform) == Rational(1, 4));
    CHECK(check_hypothesis(parse_hypothesis("mu(x1 & x2) >= 1/4"), kUniform));
    CHECK_FALSE(check_hypothesis(parse_hypothesis("mu(x1 & x2) > 1/4"), kUniform));
    CHECK(check_hypothesis(parse_hypothesis("mu(x1 & x2) = 1/9"), ProductMeasure(Rational(1, 3))));
    CHECK(check_hypothesis(parse_hypothesis("mu(F) = 0"), kUniform));
    CHECK_THROWS_AS(parse_hypothesis("mu(x1) >= 3/2"), ParseError);
    CHECK_THROWS_AS(parse_hypothesis("x1 => x2"), ParseError);
    CHECK(print_hypothesis(parse_hypothesis("mu((x1 & x2) | x3) < 1/2")) == "mu((x1 & x2) | x3) < 1/2");
    CHECK(print_hypothesis(parse_hypothesis(" x1&x2 |=x1 ")) == "x1 & x2 |= x1");
}

TEST_CASE("labelled sequents")
{
    LabelledFormula l = parse_labelled("|- x1 & x2 <~ 1 & 2");
    CHECK(l.direction == Direction::From);
    CHECK(l.label == parse_boolean("x1 & x2"));
    CHECK(l.body == parse_formula("1 & 2"));
    CHECK(print_labelled(l) == "|- x1 & x2 <~ 1 & 2");
    CHECK_THROWS_AS(parse_labelled("x1 ~> 1"), ParseError);
    CHECK_THROWS_AS(parse_labelled("|- x1 => 1"), ParseError);
}

TEST_CASE("fixtures check and round-trip byte-exactly")
{
    for (auto [name, built] : {std::pair{"fex.proof", testing::fex_derivation()},
                               std::pair{"fbias.proof", testing::fbias_derivation()}}) {
        CAPTURE(name);
        std::string text = testing::read_text(testing::fixture_path(name));
        DerivationTree t = read_proof(text);
        CHECK(write_proof(t) == text);
        CHECK(write_proof(built) == text);
        CheckReport r = check_derivation(t, kUniform);
        for (const auto& f : r.failures) {
            MESSAGE(f.path_str() << " " << f.rule << " " << f.reason);
        }
        CHECK(r.ok());
        const LabelledFormula& root = t.conclusion.conclusion;
        CHECK(root.label == BooleanFormula::top());
        CHECK(root.direction == Direction::Into);
        CHECK(verdict(root.body, kUniform).kind() == Verdict::Kind::Valid);
    }
}

TEST_CASE("mutations are rejected at the mutated node")
{
    for (auto [name, t] : {std::pair{"fex", testing::fex_derivation()}, std::pair{"fbias", testing::fbias_derivation()}}) {
        auto muts = testing::mutations(t);
        CHECK(muts.size() >= 20);
        for (const auto& m : muts) {
            CAPTURE(name);
            CAPTURE(m.what);
            std::string where = CheckFailure{m.path, "", ""}.path_str();
            CAPTURE(where);
            CheckReport r = check_derivation(m.tree, kUniform);
            REQUIRE_FALSE(r.ok());
            bool at_node = false;
            for (const auto& f : r.failures) {
                CHECK(is_prefix_or_parent(f.path, m.path));
                at_node = at_node || f.path == m.path;
            }
            CHECK(at_node);
        }
    }
}

TEST_CASE("Ax1 leaf with a wrong entailment fails at that leaf")
{
    DerivationTree t = testing::fex_derivation();
    // root / C-branch / conjunction / first leg / Ax1
    DerivationTree& leaf = testing::at(t, {0, 0, 0, 0});
    REQUIRE(leaf.rule.rule == Rule::Ax1);
    leaf.hypotheses = {parse_hypothesis("x1 |= x2")};
    CheckReport r = check_derivation(t, kUniform);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].path_str() == "/0/0/0/0");
    CHECK(r.failures[0].rule == "Ax1");
}

TEST_CASE("a false measure hypothesis is reported")
{
    // Shape is right but μ(x1∧x2) = 1/4 < 1/3.
    DerivationTree t = node("R~>C", "|- T ~> C{1/3}(1 & 2)", {{"c", "x1 & x2"}}, {"mu(x1 & x2) >= 1/3"},
                            {testing::conj_into(1, 2)});
    CheckReport r = check_derivation(t, kUniform);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].path_str() == "/");
    CHECK(r.failures[0].reason.find("is false") != std::string::npos);
}

TEST_CASE("remaining rules")
{
    auto ok = [](const DerivationTree& t, const ProductMeasure& m = kUniform) {
        CheckReport r = check_derivation(t, m);
        for (const auto& f : r.failures) {
            MESSAGE(f.path_str() << " " << f.rule << " " << f.reason);
        }
        return r.ok();
    };
    DerivationTree ax2 = node("Ax2", "|- x1 <~ 1", {}, {"x1 |= x1"});
    DerivationTree ax1 = node("Ax1", "|- x1 ~> 1", {}, {"x1 |= x1"});

    CHECK(ok(node("R~>not", "|- !x1 ~> !1", {{"c", "x1"}}, {"!x1 |= !x1"}, {ax2})));
    CHECK(ok(node("R<~not", "|- !x1 <~ !1", {{"c", "x1"}}, {"!x1 |= !x1"}, {ax1})));
    CHECK(ok(node("R<~or", "|- x1 | x2 <~ 1 | 2", {}, {},
                  {node("Ax2", "|- x1 | x2 <~ 1", {}, {"x1 |= x1 | x2"}),
                   node("Ax2", "|- x1 | x2 <~ 2", {}, {"x2 |= x1 | x2"})})));
    CHECK(ok(node("R<~mu", "|- T <~ 1", {}, {"mu(T) = 1"})));
    CHECK_FALSE(ok(node("R<~mu", "|- x1 <~ 1", {}, {"mu(x1) = 1"})));

    // C{q}: ⤘ needs μ(c) < q with ⟦F⟧ ⊆ ⟦c⟧.
    CHECK(ok(node("R<~C", "|- F <~ C{3/4}(1 & 2)", {{"c", "x1"}}, {"mu(x1) < 3/4"},
                  {node("R1<~and", "|- x1 <~ 1 & 2", {}, {}, {ax2})})));
    CHECK(ok(node("R<~C", "|- F <~ C{3/4}(1)", {{"c", "x1"}}, {"mu(x1) < 3/4"}, {ax2})));
    CHECK(ok(node("R~>D", "|- T ~> D{3/4}(1)", {{"c", "x1"}}, {"mu(x1) < 3/4"}, {ax2})));
    CHECK(ok(node("R<~D", "|- T <~ D{1/2}(1)", {{"c", "x1"}}, {"mu(x1) >= 1/2"}, {ax1})));
    CHECK(ok(node("R~>WC", "|- T ~> WC{1/4}(1)", {{"c", "x1"}}, {"mu(x1) > 1/4"}, {ax1})));
    CHECK(ok(node("R<~WC", "|- T <~ WC{1/2}(1)", {{"c", "x1"}}, {"mu(x1) <= 1/2"}, {ax2})));
    CHECK(ok(node("R~>WD", "|- T ~> WD{1/2}(1)", {{"c", "x1"}}, {"mu(x1) <= 1/2"}, {ax2})));
    CHECK(ok(node("R<~WD", "|- T <~ WD{1/4}(1)", {{"c", "x1"}}, {"mu(x1) > 1/4"}, {ax1})));
    CHECK_FALSE(ok(node("R~>WC", "|- T ~> WC{1/2}(1)", {{"c", "x1"}}, {"mu(x1) > 1/2"}, {ax1})));

    // Biased reading: μ*(x1∧x2) = 1/9 with all biases 1/3.
    ProductMeasure third(Rational(1, 3));
    DerivationTree star = node("R~>C*", "|- T ~> C{1/9}(1 & 2)", {{"c", "x1 & x2"}}, {"mu(x1 & x2) >= 1/9"},
                               {testing::conj_into(1, 2)});
    CHECK(ok(star, third));
    CHECK(ok(star, kUniform));
    DerivationTree too_high = node("R~>C*", "|- T ~> C{1/8}(1 & 2)", {{"c", "x1 & x2"}}, {"mu(x1 & x2) >= 1/8"},
                                   {testing::conj_into(1, 2)});
    CHECK_FALSE(ok(too_high, third));
    CHECK(verdict(parse_formula("C{1/9}(1 & 2)"), third).kind() == Verdict::Kind::Valid);
}

TEST_CASE("malformed proof files")
{
    CHECK_THROWS_AS(read_proof("{"), ParseError);
    CHECK_THROWS_AS(read_proof("[]"), ParseError);
    CHECK_THROWS_AS(read_proof(R"({"rule":"Ax1","conclusion":"|- x1 ~> 1","witnesses":{},"hypotheses":[]})"),
                    ParseError);
    CHECK_THROWS_AS(read_proof(R"({"rule":"Ax9","conclusion":"|- x1 ~> 1","witnesses":{},"hypotheses":[],"premises":[]})"),
                    ParseError);
    CHECK_THROWS_AS(read_proof(R"({"rule":"Ax1","conclusion":"|- x1 ~> 1","witnesses":{},"hypotheses":[],"premises":[],"x":1})"),
                    ParseError);
    try {
        read_proof(R"({"rule":"Ax1","conclusion":"|- x1 ~> 1","witnesses":{},"hypotheses":[],"premises":[
            {"rule":"Ax1","conclusion":"|- x1 ~> (","witnesses":{},"hypotheses":[],"premises":[]}]})");
        FAIL("accepted bad conclusion");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("/premises/0/conclusion") != std::string::npos);
    }
}
