#include "cpl/proof_format.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

#include <json.hpp>

#include "cpl/errors.hpp"
#include "cpl/parser.hpp"

namespace cpl {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Boolean formula without the outer parentheses of a binary node.
std::string bare_boolean(const BooleanFormula& b)
{
    std::string s = print_boolean(b);
    auto k = b.as_formula().kind();
    if (k == FormulaKind::And || k == FormulaKind::Or) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::string bare_formula(const Formula& f)
{
    std::string s = print_formula(f);
    if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

} // namespace

LabelledFormula parse_labelled(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.substr(0, 2) != "|-") {
        throw ParseError("labelled sequent must start with '|-'", 0, {"'|-'"});
    }
    s.remove_prefix(2);
    std::size_t into = s.find("~>");
    std::size_t from = s.find("<~");
    std::size_t at = std::min(into, from);
    if (at == std::string_view::npos) {
        throw ParseError("labelled sequent needs '~>' or '<~'", 2, {"'~>'", "'<~'"});
    }
    Direction d = at == into ? Direction::Into : Direction::From;
    return LabelledFormula{parse_boolean(s.substr(0, at)), d, parse_formula(s.substr(at + 2))};
}

std::string print_labelled(const LabelledFormula& l)
{
    return "|- " + bare_boolean(l.label) + (l.direction == Direction::Into ? " ~> " : " <~ ") + bare_formula(l.body);
}

Hypothesis parse_hypothesis(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.substr(0, 3) == "mu(") {
        int depth = 1;
        std::size_t i = 3;
        for (; i < s.size() && depth > 0; ++i) {
            depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
        }
        if (depth != 0) {
            throw ParseError("unbalanced parentheses in measure hypothesis", s.size(), {"')'"});
        }
        BooleanFormula b = parse_boolean(s.substr(3, i - 4));
        std::string_view rest = trim(s.substr(i));
        Relation rel;
        std::size_t len = 2;
        if (rest.substr(0, 2) == ">=") {
            rel = Relation::Geq;
        } else if (rest.substr(0, 2) == "<=") {
            rel = Relation::Leq;
        } else {
            len = 1;
            if (rest.substr(0, 1) == ">") {
                rel = Relation::Gt;
            } else if (rest.substr(0, 1) == "<") {
                rel = Relation::Lt;
            } else if (rest.substr(0, 1) == "=") {
                rel = Relation::Eq;
            } else {
                throw ParseError("expected comparison in measure hypothesis", i, {">=", ">", "<=", "<", "="});
            }
        }
        Rational q = Rational::parse(trim(rest.substr(len)));
        if (!q.in_unit_interval()) {
            throw ParseError("hypothesis threshold " + q.str() + " outside [0,1]", i, {"rational in [0,1]"});
        }
        return Hypothesis::measure_cmp(b, rel, q);
    }
    std::size_t at = s.find("|=");
    if (at == std::string_view::npos) {
        throw ParseError("hypothesis must be '<bool> |= <bool>' or 'mu(<bool>) <rel> <q>'", 0, {"'mu('", "'|='"});
    }
    return Hypothesis::entails(parse_boolean(s.substr(0, at)), parse_boolean(s.substr(at + 2)));
}

std::string print_hypothesis(const Hypothesis& h)
{
    if (h.kind() == Hypothesis::Kind::Entails) {
        return bare_boolean(h.lhs()) + " |= " + bare_boolean(h.rhs());
    }
    return "mu(" + bare_boolean(h.lhs()) + ") " + relation_symbol(h.relation()) + " " + h.threshold().str();
}

namespace {

using nlohmann::json;

json to_json(const DerivationTree& t)
{
    json node = json::object();
    node["rule"] = rule_name(t.rule);
    node["conclusion"] = print_labelled(t.conclusion.conclusion);
    node["witnesses"] = json::object();
    for (const auto& [name, b] : t.witnesses) {
        node["witnesses"][name] = bare_boolean(b);
    }
    node["hypotheses"] = json::array();
    for (const auto& h : t.hypotheses) {
        node["hypotheses"].push_back(print_hypothesis(h));
    }
    node["premises"] = json::array();
    for (const auto& p : t.premises) {
        node["premises"].push_back(to_json(p));
    }
    return node;
}

const json& field(const json& node, const char* key, const std::string& where)
{
    if (!node.is_object()) {
        throw ParseError("proof node at " + where + " is not an object", 0, {"object"});
    }
    auto it = node.find(key);
    if (it == node.end()) {
        throw ParseError(std::string("proof node at ") + where + " lacks \"" + key + "\"", 0, {key});
    }
    return *it;
}

std::string string_field(const json& v, const std::string& where)
{
    if (!v.is_string()) {
        throw ParseError("expected a string at " + where, 0, {"string"});
    }
    return v.get<std::string>();
}

template <typename Fn>
auto located(const std::string& where, Fn&& fn)
{
    try {
        return fn();
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " (in " + where + ")", e.offset(), e.expected());
    } catch (const RangeError& e) {
        throw ParseError(std::string(e.what()) + " (in " + where + ")", 0);
    } catch (const Error& e) {
        throw ParseError(std::string(e.what()) + " (in " + where + ")", 0);
    }
}

DerivationTree node_from_json(const json& node, const std::string& where)
{
    static const char* const kKeys[] = {"conclusion", "hypotheses", "premises", "rule", "witnesses"};
    if (node.is_object()) {
        for (const auto& item : node.items()) {
            if (std::find(std::begin(kKeys), std::end(kKeys), item.key()) == std::end(kKeys)) {
                throw ParseError("unknown key \"" + item.key() + "\" at " + where, 0);
            }
        }
    }
    std::string rule = string_field(field(node, "rule", where), where + "/rule");
    auto tag = parse_rule_name(rule);
    if (!tag) {
        throw ParseError("unknown rule \"" + rule + "\" at " + where, 0);
    }
    std::string conclusion = string_field(field(node, "conclusion", where), where + "/conclusion");
    DerivationTree t{*tag, LabelledSequent{located(where + "/conclusion", [&] { return parse_labelled(conclusion); })},
                     {}, {}, {}};

    const json& witnesses = field(node, "witnesses", where);
    if (!witnesses.is_object()) {
        throw ParseError("\"witnesses\" must be an object at " + where, 0);
    }
    for (const auto& item : witnesses.items()) {
        std::string w = where + "/witnesses/" + item.key();
        std::string text = string_field(item.value(), w);
        t.witnesses.emplace(item.key(), located(w, [&] { return parse_boolean(text); }));
    }

    const json& hypotheses = field(node, "hypotheses", where);
    if (!hypotheses.is_array()) {
        throw ParseError("\"hypotheses\" must be an array at " + where, 0);
    }
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        std::string w = where + "/hypotheses/" + std::to_string(i);
        std::string text = string_field(hypotheses[i], w);
        t.hypotheses.push_back(located(w, [&] { return parse_hypothesis(text); }));
    }

    const json& premises = field(node, "premises", where);
    if (!premises.is_array()) {
        throw ParseError("\"premises\" must be an array at " + where, 0);
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
        t.premises.push_back(node_from_json(premises[i], where + "/premises/" + std::to_string(i)));
    }
    return t;
}

} // namespace

DerivationTree read_proof(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed proof file: ") + e.what(), e.byte);
    }
    return node_from_json(doc, "");
}

std::string write_proof(const DerivationTree& t)
{
    return to_json(t).dump(2) + "\n";
}

} // namespace cpl
