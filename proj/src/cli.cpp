#include "gpcart/cli.hpp"

#include "gpcart/formulas.hpp"
#include "gpcart/position.hpp"
#include "gpcart/probability.hpp"
#include "gpcart/report.hpp"
#include "gpcart/solver.hpp"
#include "gpcart/spec.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

namespace gpcart::cli {

using json = nlohmann::ordered_json;

SetSyntaxError::SetSyntaxError(const std::string& message, std::size_t offset)
    : std::invalid_argument(message + " (at offset " + std::to_string(offset) + ")"), offset_(offset)
{
}

std::vector<VertexCoord> parse_set_literal(std::string_view text)
{
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
            ++pos;
    };
    auto number = [&] {
        skip_ws();
        const auto start = pos;
        std::uint64_t value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (value > std::numeric_limits<std::uint32_t>::max())
                throw SetSyntaxError("coordinate too large", start);
            ++pos;
        }
        if (pos == start)
            throw SetSyntaxError("expected a coordinate", pos);
        return static_cast<std::uint32_t>(value);
    };

    std::vector<VertexCoord> out;
    skip_ws();
    if (pos == text.size())
        return out;
    for (;;) {
        skip_ws();
        std::vector<std::uint32_t> coords;
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            coords.push_back(number());
            skip_ws();
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                coords.push_back(number());
                skip_ws();
            }
            if (pos >= text.size() || text[pos] != ')')
                throw SetSyntaxError("expected ',' or ')'", pos);
            ++pos;
        } else {
            coords.push_back(number());
        }
        out.emplace_back(std::move(coords));
        skip_ws();
        if (pos == text.size())
            break;
        if (text[pos] != ';')
            throw SetSyntaxError("expected ';' between vertices", pos);
        ++pos;
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

json big_value(const BigInt& v)
{
    if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max()))
        return v.convert_to<std::uint64_t>();
    return v.str();
}

std::string plain(const json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

json coords_json(const std::vector<VertexCoord>& set)
{
    json arr = json::array();
    for (const auto& c : set)
        arr.push_back(c.values);
    return arr;
}

std::string coords_text(const json& arr)
{
    std::string out = "{";
    bool first = true;
    for (const auto& c : arr) {
        if (!first)
            out += ",";
        first = false;
        out += "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i)
                out += ",";
            out += c[i].dump();
        }
        out += ")";
    }
    return out + "}";
}

std::string decimal_text(double v)
{
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

json probability_json(const ExactProbability& p)
{
    return {{"num", big_value(p.numerator())}, {"den", big_value(p.denominator())}, {"decimal", p.to_double()}};
}

struct Globals {
    bool json_output = false;
    unsigned threads = 1;
    std::optional<std::uint64_t> cap;
    std::optional<double> time_limit;
    bool strict = false;
    std::string out_file;
};

struct Outcome {
    json spec = nullptr;
    json result = json::object();
    std::optional<std::uint64_t> seed;
    int exit_code = kSuccess;
};

SearchOptions search_options(const Globals& g, std::uint64_t default_cap)
{
    SearchOptions o;
    o.threads = g.threads;
    o.vertex_cap = g.cap.value_or(default_cap);
    if (g.time_limit)
        o.budget.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(*g.time_limit * 1000.0));
    return o;
}

Outcome cmd_gp(const Globals& globals, const std::string& text)
{
    const auto spec = parse_spec(text);
    const auto options = search_options(globals, 200);
    const auto g = build(spec, options.vertex_cap);
    const auto r = gp_exact(g, options);
    Outcome o;
    o.spec = spec.format();
    o.result = {{"gp", r.gp_value},
                {"witness", coords_json(r.witness.coords())},
                {"status", r.exact() ? "exact" : "skipped-budget"},
                {"nodes", r.nodes_explored}};
    if (!r.exact() && globals.strict)
        o.exit_code = kFailure;
    return o;
}

Outcome cmd_check(const Globals& globals, const std::string& text, const std::string& set_text)
{
    const auto spec = parse_spec(text);
    const auto g = build(spec, globals.cap.value_or(kDefaultBuildCap));
    const auto coords = parse_set_literal(set_text);
    std::vector<VertexId> ids;
    for (const auto& c : coords) {
        if (!g.contains(c))
            throw UsageError("vertex " + to_string(c) + " is not a vertex of " + spec.format());
        ids.push_back(g.encode(c));
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw UsageError("set lists a vertex twice");
    Outcome o;
    o.spec = spec.format();
    const auto violation = find_violation(g, ids);
    std::vector<VertexCoord> sorted;
    for (auto v : ids)
        sorted.push_back(g.decode(v));
    o.result = {{"general_position", !violation.has_value()}, {"size", ids.size()}, {"set", coords_json(sorted)}};
    if (violation) {
        o.result["violation"] = {{"middle", g.decode(violation->middle).values},
                                 {"ends", json::array({g.decode(violation->end_a).values,
                                                       g.decode(violation->end_b).values})}};
        o.exit_code = kFailure;
    } else {
        o.result["violation"] = nullptr;
    }
    return o;
}

Outcome cmd_count(const Globals& globals, const std::string& text)
{
    const auto spec = parse_spec(text);
    const auto cap = globals.cap.value_or(kDefaultCountCap);
    const auto g = build(spec, cap);
    const auto r = count_maximum_gp_sets(g, cap);
    Outcome o;
    o.spec = spec.format();
    o.result = {{"gp", r.gp_value}, {"count", r.count}};
    return o;
}

void expect_params(const std::vector<std::uint32_t>& params, std::size_t n, const std::string& what)
{
    if (params.size() != n)
        throw UsageError(what + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(params.size()));
}

Outcome cmd_formula(const std::string& kind, const std::vector<std::uint32_t>& params)
{
    Outcome o;
    o.result = {{"formula", kind}, {"parameters", params}};
    if (kind == "grid-count") {
        expect_params(params, 2, kind);
        o.result["count"] = big_value(grid_gp_count(params[0], params[1]));
    } else if (kind == "cylinder") {
        expect_params(params, 2, kind);
        o.result["gp"] = cylinder_gp_value(params[0], params[1]);
    } else if (kind == "torus") {
        expect_params(params, 2, kind);
        const auto b = torus_gp_bounds(params[0], params[1]);
        o.result["lower"] = b.lower ? json(*b.lower) : json(nullptr);
        o.result["upper"] = b.upper;
    } else if (kind == "hamming") {
        o.result["lower_bound"] = hamming_lower_bound(params);
    } else {
        throw UsageError("unknown formula " + kind);
    }
    return o;
}

Outcome cmd_construct(const std::string& kind, const std::vector<std::uint32_t>& params)
{
    std::optional<GpSet> set;
    if (kind == "cycle") {
        expect_params(params, 1, kind);
        set = cycle_gp_triple(params[0]);
    } else if (kind == "cylinder") {
        expect_params(params, 2, kind);
        set = cylinder_witness(params[0], params[1]);
    } else if (kind == "torus6") {
        expect_params(params, 2, kind);
        set = torus_witness6(params[0], params[1]);
    } else if (kind == "torus7") {
        expect_params(params, 0, kind);
        set = torus_witness7();
    } else {
        throw UsageError("unknown construction " + kind);
    }
    Outcome o;
    o.spec = set->host.name();
    o.result = {{"construction", kind},
                {"parameters", params},
                {"witness", coords_json(set->coords())},
                {"size", set->size()},
                {"certified", is_general_position(set->host, set->members)},
                {"provenance", set->provenance}};
    return o;
}

Outcome cmd_probability(const std::string& text)
{
    const auto spec = parse_spec(text);
    const auto p = p_exact(spec);
    Outcome o;
    o.spec = spec.format();
    o.result = probability_json(p);
    return o;
}

Outcome cmd_power_sample(const std::string& factor_text, std::uint32_t n, std::uint64_t seed, std::uint32_t retries)
{
    const auto spec = parse_spec(factor_text);
    if (spec.factors.size() != 1 || spec.is_power || spec.factors[0].family == 'Q')
        throw UsageError("power-sample takes a single factor such as K2 or C5");
    const auto g = expand_factors(spec).front();
    const auto run = first_moment_construct(g, n, seed, retries);
    Outcome o;
    o.spec = g.name() + "^" + std::to_string(n);
    o.seed = seed;
    o.result = {{"factor", g.name()},
                {"n", n},
                {"p", probability_json(p_exact(g))},
                {"M", run.sample_size},
                {"target", run.target()},
                {"seed", run.seed},
                {"attempts", run.attempts},
                {"duplicates_removed", run.duplicates_removed},
                {"bad_triples", run.bad_triples},
                {"deletions", run.deletions},
                {"success", run.success},
                {"size", run.output.size()},
                {"witness", coords_json(run.output)}};
    if (!run.success)
        o.exit_code = kFailure;
    return o;
}

Outcome cmd_verify(const Globals& globals, bool quick)
{
    VerifyOptions options;
    options.quick = quick;
    options.threads = globals.threads;
    if (globals.time_limit)
        options.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(*globals.time_limit * 1000.0));
    const auto report = verify_paper(options);
    Outcome o;
    o.result = to_json(report);
    if (!report.passed())
        o.exit_code = kFailure;
    return o;
}

}  // namespace

std::string render_human(const std::string& command, const json& r)
{
    std::ostringstream out;
    if (command == "gp") {
        if (r.at("status") == "exact")
            out << "gp = " << r.at("gp").dump() << "\n";
        else
            out << "gp >= " << r.at("gp").dump() << " (search budget exhausted)\n";
        out << "witness: " << coords_text(r.at("witness")) << "\n";
        out << "status: " << plain(r.at("status")) << "\n";
        out << "nodes: " << r.at("nodes").dump() << "\n";
    } else if (command == "check") {
        out << "general position: " << (r.at("general_position").get<bool>() ? "yes" : "no") << "\n";
        out << "set: " << coords_text(r.at("set")) << " (" << r.at("size").dump() << " vertices)\n";
        if (!r.at("violation").is_null()) {
            const auto& v = r.at("violation");
            out << "violation: " << coords_text(json::array({v.at("middle")})) << " lies on a geodesic between "
                << coords_text(v.at("ends")) << "\n";
        }
    } else if (command == "count") {
        out << "gp = " << r.at("gp").dump() << "\n";
        out << "maximum sets: " << r.at("count").dump() << "\n";
    } else if (command == "formula") {
        const auto kind = r.at("formula").get<std::string>();
        out << kind << " " << r.at("parameters").dump() << ": ";
        if (kind == "grid-count")
            out << "count = " << plain(r.at("count")) << "\n";
        else if (kind == "cylinder")
            out << "gp = " << r.at("gp").dump() << "\n";
        else if (kind == "torus")
            out << "lower = " << (r.at("lower").is_null() ? std::string("not claimed") : r.at("lower").dump())
                << ", upper = " << r.at("upper").dump() << "\n";
        else
            out << "lower bound = " << r.at("lower_bound").dump() << "\n";
    } else if (command == "construct") {
        out << "witness: " << coords_text(r.at("witness")) << "\n";
        out << "size: " << r.at("size").dump() << "\n";
        out << "certified: " << (r.at("certified").get<bool>() ? "yes" : "no") << "\n";
        out << "provenance: " << plain(r.at("provenance")) << "\n";
    } else if (command == "p") {
        out << "p = " << plain(r.at("num")) << "/" << plain(r.at("den")) << " ("
            << decimal_text(r.at("decimal").get<double>()) << ")\n";
    } else if (command == "power-sample") {
        const auto& p = r.at("p");
        out << "host: " << plain(r.at("factor")) << "^" << r.at("n").dump() << ", p = " << plain(p.at("num")) << "/"
            << plain(p.at("den")) << "\n";
        out << "M = " << r.at("M").dump() << ", target = " << r.at("target").dump() << "\n";
        out << "seed = " << r.at("seed").dump() << " after " << r.at("attempts").dump() << " attempt(s)\n";
        out << "duplicates removed = " << r.at("duplicates_removed").dump()
            << ", bad triples = " << r.at("bad_triples").dump() << ", deletions = " << r.at("deletions").dump()
            << "\n";
        out << "success: " << (r.at("success").get<bool>() ? "yes" : "no") << "\n";
        out << "witness (" << r.at("size").dump() << "): " << coords_text(r.at("witness")) << "\n";
    } else if (command == "verify-paper") {
        for (const auto& c : r.at("claims")) {
            out << std::left << std::setw(6) << plain(c.at("id")) << std::setw(24) << plain(c.at("status"))
                << plain(c.at("anchor")) << " [" << plain(c.at("parameters")) << "]\n";
            out << "      expected: " << plain(c.at("expected")) << "\n";
            out << "      computed: " << plain(c.at("computed")) << " (" << c.at("elapsed_ms").dump() << " ms)\n";
        }
        out << "overall: " << plain(r.at("overall")) << "\n";
    } else {
        out << r.dump(2) << "\n";
    }
    return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact general position toolkit for Cartesian products of graphs", "gpcart"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_flag("--json", g.json_output, "Print a single JSON document");
    app.add_option("--threads", g.threads, "Worker threads for exact search")->check(CLI::Range(1U, 1024U));
    app.add_option("--cap", g.cap, "Vertex cap for the command");
    app.add_option("--time-limit", g.time_limit, "Search time limit in seconds")->check(CLI::PositiveNumber);
    app.add_flag("--strict", g.strict, "Exit 1 when a search budget is exhausted");
    app.add_option("--out", g.out_file, "Write output to this file instead of stdout");

    std::string spec_text;
    std::string set_text;
    std::string kind;
    std::vector<std::uint32_t> params;
    std::uint32_t power = 0;
    std::uint64_t seed = 0;
    std::uint32_t retries = 10;
    bool quick = false;

    auto* gp = app.add_subcommand("gp", "Exact gp number and a witness");
    gp->add_option("spec", spec_text, "Graph spec, e.g. P5xC7")->required();

    auto* check = app.add_subcommand("check", "Check a vertex set for general position");
    check->add_option("spec", spec_text)->required();
    check->add_option("set", set_text, "Vertices as \"(0,0);(1,2)\"")->required();

    auto* count = app.add_subcommand("count", "Count maximum general position sets");
    count->add_option("spec", spec_text)->required();

    auto* formula = app.add_subcommand("formula", "Closed-form values and bounds");
    formula->add_option("kind", kind)->required()->check(CLI::IsMember({"grid-count", "cylinder", "torus", "hamming"}));
    formula->add_option("params", params);

    auto* construct = app.add_subcommand("construct", "Certified witness constructions");
    construct->add_option("kind", kind)->required()->check(CLI::IsMember({"cycle", "cylinder", "torus6", "torus7"}));
    construct->add_option("params", params);

    auto* prob = app.add_subcommand("p", "Exact bad-triple probability");
    prob->add_option("spec", spec_text)->required();

    auto* sample = app.add_subcommand("power-sample", "First-moment construction in a Cartesian power");
    sample->add_option("factor", spec_text, "Single factor, e.g. K2")->required();
    sample->add_option("n", power, "Power")->required()->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "Seed");
    sample->add_option("--retries", retries, "Extra attempts with seed+1, seed+2, ...");

    auto* verify = app.add_subcommand("verify-paper", "Run the full verification report");
    verify->add_flag("--quick", quick, "Skip the two torus exact searches");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty())
            reversed.pop_back();
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    const auto* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const auto start = Clock::now();
    Outcome o;
    try {
        if (sub == gp)
            o = cmd_gp(g, spec_text);
        else if (sub == check)
            o = cmd_check(g, spec_text, set_text);
        else if (sub == count)
            o = cmd_count(g, spec_text);
        else if (sub == formula)
            o = cmd_formula(kind, params);
        else if (sub == construct)
            o = cmd_construct(kind, params);
        else if (sub == prob)
            o = cmd_probability(spec_text);
        else if (sub == sample)
            o = cmd_power_sample(spec_text, power, seed, retries);
        else
            o = cmd_verify(g, quick);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    const auto elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

    std::string text;
    if (g.json_output) {
        json doc = {{"tool_version", kToolVersion},
                    {"command", command},
                    {"spec", o.spec},
                    {"result", o.result},
                    {"elapsed_ms", elapsed_ms}};
        if (o.seed)
            doc["seed"] = *o.seed;
        text = doc.dump() + "\n";
    } else {
        text = render_human(command, o.result);
    }

    if (g.out_file.empty()) {
        out << text;
    } else {
        std::ofstream file(g.out_file);
        if (!file) {
            err << "error: cannot open " << g.out_file << "\n";
            return kFailure;
        }
        file << text;
    }
    return o.exit_code;
}

}  // namespace gpcart::cli
