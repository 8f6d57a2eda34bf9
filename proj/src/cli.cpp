#include "cpl/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpl/dist_compiler.hpp"
#include "cpl/errors.hpp"
#include "cpl/measure.hpp"
#include "cpl/normal_forms.hpp"
#include "cpl/parser.hpp"
#include "cpl/proof_format.hpp"

namespace cpl {

namespace {

using nlohmann::json;

// Errors that are the caller's fault but are not parse errors.
struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t atom_cap_from_env()
{
    const char* v = std::getenv(kAtomCapEnv);
    if (!v || !*v) {
        return kDefaultAtomCap;
    }
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n == 0 || n > 62) {
        throw UsageError(std::string(kAtomCapEnv) + " must be an integer in 1..62, got '" + v + "'");
    }
    return n;
}

// "all=1/3", "default=1/3,2=1/4" inline, or a file of such lines.
ProductMeasure parse_bias(const std::string& spec)
{
    if (spec.empty()) {
        return ProductMeasure::uniform();
    }
    std::string text = spec;
    if (std::filesystem::is_regular_file(spec)) {
        text = read_file(spec);
    } else if (spec.find('=') == std::string::npos) {
        throw UsageError("bias '" + spec + "' is neither a file nor an inline assignment");
    }
    std::replace(text.begin(), text.end(), ',', '\n');
    Rational def(1, 2);
    std::map<AtomIndex, Rational> overrides;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("bias line '" + line + "' lacks '='", 0, {"'='"});
        }
        std::string key = line.substr(0, eq);
        Rational value = Rational::parse(line.substr(eq + 1));
        if (key == "default" || key == "all") {
            def = value;
        } else if (!key.empty() && std::all_of(key.begin(), key.end(), ::isdigit) && key != "0") {
            overrides[static_cast<AtomIndex>(std::stoul(key))] = value;
        } else {
            throw ParseError("bias key '" + key + "' is not 'default' or an atom index", 0, {"default", "atom"});
        }
    }
    return ProductMeasure(def, std::move(overrides));
}

struct Options {
    bool structured = false;
    std::string inline_input;
    std::string file;
    std::string bias;
    std::string strategy;
};

std::string input_text(const Options& o)
{
    if (!o.inline_input.empty() == !o.file.empty()) {
        throw UsageError("give exactly one of an inline formula or --file");
    }
    return o.file.empty() ? o.inline_input : read_file(o.file);
}

enum class Mode { Oracle, Mnf, Both };

Mode resolve_strategy(const Options& o, const Formula& f, const ProductMeasure& m)
{
    if (o.strategy == "oracle") {
        return Mode::Oracle;
    }
    if (o.strategy == "mnf" || o.strategy == "both") {
        if (!m.is_uniform()) {
            throw UnsupportedStrategy("strategy '" + o.strategy + "' needs the uniform measure; use --strategy oracle");
        }
        return o.strategy == "mnf" ? Mode::Mnf : Mode::Both;
    }
    if (!m.is_uniform()) {
        return Mode::Oracle;
    }
    return support(f).size() <= 20 ? Mode::Both : Mode::Mnf;
}

const char* mode_name(Mode m)
{
    switch (m) {
    case Mode::Oracle:
        return "oracle";
    case Mode::Mnf:
        return "mnf";
    case Mode::Both:
        return "both";
    }
    return "";
}

struct MeasureResult {
    Mode mode;
    Rational value;
    std::optional<Rational> oracle;
    std::optional<Rational> mnf;
    bool match = true;
};

MeasureResult compute(const Formula& f, const ProductMeasure& m, Mode mode, std::size_t cap)
{
    MeasureResult r{mode, Rational(0), std::nullopt, std::nullopt, true};
    if (mode != Mode::Mnf) {
        r.oracle = measure(f, m, Strategy::Oracle, cap);
    }
    if (mode != Mode::Oracle) {
        r.mnf = measure(f, m, Strategy::Mnf, cap);
    }
    r.value = r.oracle ? *r.oracle : *r.mnf;
    r.match = !(r.oracle && r.mnf) || *r.oracle == *r.mnf;
    return r;
}

void add_measure_json(json& j, const MeasureResult& r, bool uniform)
{
    j["strategy"] = mode_name(r.mode);
    j["measure"] = r.value.fraction_str();
    if (uniform) {
        if (auto d = DyadicRational::from_rational(r.value)) {
            j["dyadic"] = d->str();
        }
    }
    if (r.oracle) {
        j["oracle"] = r.oracle->fraction_str();
    }
    if (r.mnf) {
        j["mnf"] = r.mnf->fraction_str();
    }
    if (r.mode == Mode::Both) {
        j["match"] = r.match;
    }
}

int inconsistency(std::ostream& err, const MeasureResult& r)
{
    err << "internal inconsistency: oracle " << r.oracle->str() << " but mnf " << r.mnf->str() << "\n";
    return kExitNegative;
}

int cmd_measure(const Options& o, std::size_t cap, std::ostream& out, std::ostream& err)
{
    Formula f = parse_formula(input_text(o));
    ProductMeasure m = parse_bias(o.bias);
    MeasureResult r = compute(f, m, resolve_strategy(o, f, m), cap);
    if (o.structured) {
        json j{{"command", "measure"}, {"formula", print_formula(f)}};
        add_measure_json(j, r, m.is_uniform());
        out << j.dump() << "\n";
    } else {
        out << r.value.str() << "\n";
        if (m.is_uniform()) {
            if (auto d = DyadicRational::from_rational(r.value)) {
                out << "dyadic " << d->str() << "\n";
            }
        }
        if (r.mode == Mode::Both) {
            out << "oracle " << r.oracle->str() << "\nmnf " << r.mnf->str() << "\nmatch "
                << (r.match ? "yes" : "no") << "\n";
        }
    }
    return r.match ? kExitOk : inconsistency(err, r);
}

int cmd_verdict(const Options& o, bool expect_valid, std::size_t cap, std::ostream& out, std::ostream& err)
{
    Formula f = parse_formula(input_text(o));
    ProductMeasure m = parse_bias(o.bias);
    MeasureResult r = compute(f, m, resolve_strategy(o, f, m), cap);
    if (!r.match) {
        return inconsistency(err, r);
    }
    Verdict v = Verdict::classify(r.value);
    if (o.structured) {
        static const char* const kinds[] = {"Valid", "Invalid", "Contingent"};
        json j{{"command", "verdict"}, {"formula", print_formula(f)}, {"verdict", kinds[static_cast<int>(v.kind())]}};
        add_measure_json(j, r, m.is_uniform());
        out << j.dump() << "\n";
    } else {
        out << v.str() << "\n";
    }
    if (expect_valid && v.kind() != Verdict::Kind::Valid) {
        return kExitNegative;
    }
    return kExitOk;
}

int cmd_normalize(const Options& o, const std::string& form, bool eliminate, std::size_t cap, std::ostream& out)
{
    Formula f = parse_formula(input_text(o));
    if (!f.is_quantifier_free()) {
        if (!eliminate) {
            throw UsageError("formula has counting quantifiers; eliminate them first (pass --eliminate)");
        }
        ProductMeasure m = parse_bias(o.bias);
        Mode mode = resolve_strategy(o, f, m);
        f = eliminate_quantifiers(f, m, mode == Mode::Mnf ? Strategy::Mnf : Strategy::Oracle, cap);
    }
    std::string result;
    Dnf dnf = to_dnf(f);
    if (form == "dnf") {
        result = print_dnf(dnf);
    } else if (form == "dpf") {
        result = print_normal_form(to_dpf(dnf));
    } else {
        result = print_normal_form(to_mnf(to_dpf(dnf)));
    }
    if (o.structured) {
        out << json{{"command", "normalize"}, {"form", form}, {"result", result}}.dump() << "\n";
    } else {
        out << result << "\n";
    }
    return kExitOk;
}

int cmd_check_proof(const Options& o, const std::string& path, std::size_t cap, std::ostream& out)
{
    DerivationTree t = read_proof(read_file(path));
    ProductMeasure m = parse_bias(o.bias);
    CheckReport report = check_derivation(t, m, cap);
    if (o.structured) {
        json failures = json::array();
        for (const auto& f : report.failures) {
            failures.push_back({{"path", f.path_str()}, {"rule", f.rule}, {"reason", f.reason}});
        }
        out << json{{"command", "check-proof"}, {"ok", report.ok()}, {"failures", failures}}.dump() << "\n";
    } else if (report.ok()) {
        out << "ok\n";
    } else {
        for (const auto& f : report.failures) {
            out << "FAIL " << f.path_str() << " [" << f.rule << "] " << f.reason << "\n";
        }
        out << "rejected: " << report.failures.size() << " failure(s)\n";
    }
    return report.ok() ? kExitOk : kExitNegative;
}

struct CompileArgs {
    std::string mode;
    std::string p;
    unsigned bits = 0;
    unsigned w = 0;
    std::string s;
    std::string r;
    unsigned m = 0;
    std::string table;
    unsigned fresh = 1;
};

// Re-measures the emitted text so what is printed is what was checked.
Rational remeasure(const std::string& text, std::size_t cap)
{
    Formula f = parse_formula(text);
    if (support(f).size() <= cap) {
        return measure_oracle(f, ProductMeasure::uniform(), cap);
    }
    return measure_by_mnf(f).to_rational();
}

int cmd_compile(const Options& o, const CompileArgs& a, std::size_t cap, std::ostream& out, std::ostream& err)
{
    auto need = [&](bool present, const char* flag) {
        if (!present) {
            throw UsageError(std::string("compile ") + a.mode + " needs " + flag);
        }
    };
    json j{{"command", "compile"}, {"mode", a.mode}};
    std::vector<std::pair<std::string, std::string>> lines;
    bool consistent = true;

    if (a.mode == "table") {
        need(!a.table.empty(), "--table");
        OutcomeTable t = OutcomeTable::parse(read_file(a.table));
        auto events = compile_discrete(t, a.fresh);
        json outcomes = json::array();
        for (const auto& e : t.entries) {
            std::string text = print_normal_form(events.at(e.name).mnf);
            Rational got = remeasure(text, cap);
            consistent = consistent && got == e.probability;
            outcomes.push_back({{"name", e.name}, {"formula", text}, {"measure", got.fraction_str()}});
            lines.emplace_back(e.name, text + "  # " + got.str());
        }
        j["width"] = t.width;
        j["outcomes"] = outcomes;
    } else {
        CompiledEvent ev{Formula::bottom(), MnfFormula::bottom()};
        Rational declared(0);
        if (a.mode == "dyadic") {
            need(!a.p.empty(), "--p");
            Rational p = Rational::parse(a.p);
            auto d = DyadicRational::from_rational(p);
            if (!d || !p.in_unit_interval()) {
                throw CompilationError("p = " + p.str() + " is not a dyadic probability; use 'compile approx --p "
                                       + p.str() + " --bits N' for a down-approximation");
            }
            if (d->exponent() > 62) {
                throw ResourceError("exponent " + std::to_string(d->exponent()) + " too large");
            }
            ev = compile_bernoulli({d->numerator().get_ui(), static_cast<std::uint32_t>(d->exponent())}, a.fresh);
            declared = p;
        } else if (a.mode == "approx") {
            need(!a.p.empty(), "--p");
            need(a.bits > 0, "--bits");
            Approximation ap = approximate_bernoulli(Rational::parse(a.p), a.bits, a.fresh);
            ev = ap.event;
            declared = ap.measure;
            j["bound"] = ap.bound.fraction_str();
            j["error"] = ap.error.fraction_str();
            lines.emplace_back("bound", ap.bound.str());
            lines.emplace_back("error", ap.error.str());
        } else if (a.mode == "chain") {
            need(a.w > 0, "--w");
            need(!a.s.empty(), "--s");
            need(!a.r.empty(), "--r");
            need(a.m > 0, "--m");
            std::string letters = a.s + a.r;
            ChainSpec spec{a.w, parse_block_clause(a.s, letters), parse_block_clause(a.r, letters), a.m, a.fresh};
            ev = compile_chain(spec);
            declared = spec.closed_form();
            j["closed_form"] = declared.fraction_str();
            lines.emplace_back("closed-form", declared.str());
        } else {
            throw UsageError("unknown compile mode '" + a.mode + "' (dyadic, table, chain, approx)");
        }
        std::string text = print_normal_form(ev.mnf);
        Rational got = remeasure(text, cap);
        consistent = got == declared;
        j["formula"] = text;
        j["measure"] = got.fraction_str();
        lines.insert(lines.begin(), {{"", text}, {"measure", got.str()}});
    }

    if (o.structured) {
        out << j.dump() << "\n";
    } else {
        for (const auto& [k, v] : lines) {
            out << (k.empty() ? "" : k + (a.mode == "table" ? ": " : " ")) << v << "\n";
        }
    }
    if (!consistent) {
        err << "internal inconsistency: emitted formula does not re-measure to the declared value\n";
        return kExitNegative;
    }
    return kExitOk;
}

std::string describe(const ParseError& e)
{
    std::string s = std::string("parse error at offset ") + std::to_string(e.offset()) + ": " + e.what();
    if (!e.expected().empty()) {
        s += " (expected ";
        for (std::size_t i = 0; i < e.expected().size(); ++i) {
            s += (i ? ", " : "") + e.expected()[i];
        }
        s += ")";
    }
    return s;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Counting propositional logic: measures, verdicts, normal forms, proofs, compilation"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_flag("--json", o.structured, "One JSON record per result; rationals as \"num/den\" strings");
    app.add_option("--bias", o.bias, "all=<q> / default=<q>,<atom>=<q> inline, or a bias file");
    app.add_option("--strategy", o.strategy, "oracle, mnf or both (default: both up to 20 atoms, else mnf)")
        ->check(CLI::IsMember({"oracle", "mnf", "both"}));

    auto formula_input = [&](CLI::App* sub) {
        sub->add_option("formula", o.inline_input, "Inline formula");
        sub->add_option("--file", o.file, "Read the formula from a file");
    };

    CLI::App* measure_cmd = app.add_subcommand("measure", "Exact measure of a formula");
    formula_input(measure_cmd);

    bool expect_valid = false;
    CLI::App* verdict_cmd = app.add_subcommand("verdict", "Valid, Invalid or Contingent(measure)");
    formula_input(verdict_cmd);
    verdict_cmd->add_flag("--expect-valid", expect_valid, "Exit 1 unless the formula is valid");

    std::string form = "mnf";
    bool eliminate = false;
    CLI::App* normalize_cmd = app.add_subcommand("normalize", "Print a normal form");
    formula_input(normalize_cmd);
    normalize_cmd->add_option("--form", form, "dnf, dpf or mnf")->check(CLI::IsMember({"dnf", "dpf", "mnf"}));
    normalize_cmd->add_flag("--eliminate", eliminate, "Replace counting quantifiers by T/F first");

    std::string proof_path;
    CLI::App* proof_cmd = app.add_subcommand("check-proof", "Check a derivation file");
    proof_cmd->add_option("proof", proof_path, "Proof file")->required();

    CompileArgs ca;
    CLI::App* compile_cmd = app.add_subcommand("compile", "Compile a distribution into a formula");
    compile_cmd->add_option("mode", ca.mode, "dyadic, table, chain or approx")->required();
    compile_cmd->add_option("--p", ca.p, "Target probability");
    compile_cmd->add_option("--bits", ca.bits, "Truncation bits (approx)");
    compile_cmd->add_option("--w", ca.w, "Block width (chain)");
    compile_cmd->add_option("--s", ca.s, "Success clause over block positions (chain)");
    compile_cmd->add_option("--r", ca.r, "Retry clause over block positions (chain)");
    compile_cmd->add_option("--m", ca.m, "Number of blocks (chain)");
    compile_cmd->add_option("--table", ca.table, "Outcome table file: '<name> <probability>' per line");
    compile_cmd->add_option("--fresh", ca.fresh, "First fresh atom index")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        std::size_t cap = atom_cap_from_env();
        if (measure_cmd->parsed()) {
            return cmd_measure(o, cap, out, err);
        }
        if (verdict_cmd->parsed()) {
            return cmd_verdict(o, expect_valid, cap, out, err);
        }
        if (normalize_cmd->parsed()) {
            return cmd_normalize(o, form, eliminate, cap, out);
        }
        if (proof_cmd->parsed()) {
            return cmd_check_proof(o, proof_path, cap, out);
        }
        return cmd_compile(o, ca, cap, out, err);
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << " (raise " << kAtomCapEnv << " to allow more atoms)\n";
        return kExitResource;
    } catch (const ParseError& e) {
        err << describe(e) << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace cpl
