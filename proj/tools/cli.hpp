#ifndef KICOLOR_TOOLS_CLI_HPP
#define KICOLOR_TOOLS_CLI_HPP

#include <kicolor/cnf.hpp>
#include <kicolor/coloring.hpp>
#include <kicolor/errors.hpp>
#include <kicolor/fpt_solver.hpp>
#include <kicolor/fvs.hpp>
#include <kicolor/gadget.hpp>
#include <kicolor/graph.hpp>
#include <kicolor/kk1.hpp>
#include <kicolor/kneser.hpp>
#include <kicolor/oracle.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace kicolor::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_resource = 3;

using Json = nlohmann::ordered_json;

/// Bad flags, unreadable files and the like: exit 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string graph;
    std::string cnf;
    std::string coloring;
    std::string fvs_file;
    std::string out;
    std::string format = "text";
    std::string mode = "decide";
    std::string method = "exact";
    std::optional<unsigned> q;
    std::optional<unsigned> k;
    std::optional<unsigned> i;
    std::optional<unsigned> r;
    std::size_t threads = 1;
    std::uint64_t budget = default_oracle_budget;
};

inline auto read_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline auto write_file(const std::string & path, const std::string & text) -> void
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw UsageError("cannot write '" + path + "'");
}

inline auto sha256_hex(const std::string & data) -> std::string
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream hex;
    for (unsigned j = 0; j < len; ++j)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[j]);
    return hex.str();
}

/**
 * Collects input files in flag order (graph, cnf, coloring, fvs) and hashes
 * "<role> <length>\n<bytes>" for each one present.
 */
class Inputs
{
public:
    explicit Inputs(const Options & opt) : opt_(opt) {}

    auto text(const std::string & role, const std::string & path) -> std::string
    {
        auto data = read_file(path);
        digest_input_ += role + ' ' + std::to_string(data.size()) + '\n' + data;
        return data;
    }

    auto graph() -> Graph
    {
        need(opt_.graph, "--graph");
        if (!graph_)
            graph_ = parse_dimacs_graph(text("graph", opt_.graph));
        return *graph_;
    }

    auto cnf() -> CnfFormula
    {
        need(opt_.cnf, "--cnf");
        return parse_dimacs_cnf(text("cnf", opt_.cnf));
    }

    auto coloring(std::size_t n, const Params & p) -> Coloring
    {
        need(opt_.coloring, "--coloring");
        return parse_coloring(text("coloring", opt_.coloring), n, p.q, p.k);
    }

    auto fvs(std::size_t n) -> std::optional<VertexSet>
    {
        if (opt_.fvs_file.empty())
            return std::nullopt;
        std::istringstream in(text("fvs", opt_.fvs_file));
        return parse_fvs_file(in, n);
    }

    auto digest() const -> std::string { return "sha256:" + sha256_hex(digest_input_); }

    static auto need(const std::string & value, const char * flag) -> void
    {
        if (value.empty())
            throw UsageError(std::string(flag) + " is required");
    }

private:
    const Options & opt_;
    std::optional<Graph> graph_;
    std::string digest_input_;
};

inline auto require(const std::optional<unsigned> & v, const char * flag) -> unsigned
{
    if (!v)
        throw UsageError(std::string(flag) + " is required");
    return *v;
}

inline auto params_of(const Options & opt) -> Params
{
    Params p{require(opt.q, "--q"), require(opt.k, "--k"), require(opt.i, "--i")};
    p.validate();
    return p;
}

inline auto params_json(const Params & p) -> Json
{
    return Json{{"q", p.q}, {"k", p.k}, {"i", p.i}};
}

inline auto fvs_json(const FvsResult & s) -> Json
{
    Json vs = Json::array();
    for (auto v : s.vertices())
        vs.push_back(v + 1);
    return Json{{"vertices", vs}, {"method", to_string(s.method())}, {"certified_minimum", s.certified_minimum()}};
}

inline auto big_string(const BigCount & x) -> std::string { return x.str(); }

inline auto coloring_lines(const Coloring & f) -> Json
{
    Json lines = Json::array();
    std::istringstream in(coloring_to_string(f));
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    return lines;
}

/// Artifact either written to `path` (the report records the path) or
/// embedded in the report as text.
inline auto artifact(const std::string & path, const std::string & body) -> Json
{
    if (path.empty())
        return Json{{"inline", body}};
    write_file(path, body);
    return Json{{"path", path}};
}

struct Report
{
    Json doc;
    /// Extra text appended after the key/value block in text mode.
    std::string text_tail;
};

inline auto run_decide(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    const auto p = params_of(opt);
    const auto s = resolve_fvs(g, in.fvs(g.n()));
    const bool answer = FptSolver(g, p, s.vertices()).decide(opt.threads);
    return {Json{{"parameters", params_json(p)}, {"fvs", fvs_json(s)}, {"answer", answer}}, {}};
}

inline auto run_count(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    const auto p = params_of(opt);
    const auto s = resolve_fvs(g, in.fvs(g.n()));
    const auto answer = FptSolver(g, p, s.vertices()).count(opt.threads);
    return {Json{{"parameters", params_json(p)}, {"fvs", fvs_json(s)}, {"answer", big_string(answer)}}, {}};
}

inline auto run_chromatic(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    const unsigned k = require(opt.k, "--k");
    const unsigned i = require(opt.i, "--i");
    const auto s = resolve_fvs(g, in.fvs(g.n()));
    const auto answer = chromatic_number_ki(g, k, i, s.vertices(), opt.threads);
    return {Json{{"parameters", Json{{"k", k}, {"i", i}}}, {"fvs", fvs_json(s)}, {"answer", answer}}, {}};
}

inline auto run_extract(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    const auto p = params_of(opt);
    const auto s = resolve_fvs(g, in.fvs(g.n()));
    const auto f = FptSolver(g, p, s.vertices()).extract();
    Report rep{Json{{"parameters", params_json(p)}, {"fvs", fvs_json(s)}, {"answer", f.has_value()}}, {}};
    if (f) {
        const auto body = coloring_to_string(*f);
        if (opt.out.empty()) {
            rep.doc["coloring"] = coloring_lines(*f);
            rep.text_tail = body;
        }
        else {
            rep.doc["coloring"] = artifact(opt.out, body);
        }
    }
    return rep;
}

inline auto run_oracle(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    Json doc;
    if (opt.mode == "decide") {
        const auto p = params_of(opt);
        doc["parameters"] = params_json(p);
        doc["answer"] = brute_decide(g, p, opt.budget);
    }
    else if (opt.mode == "count") {
        const auto p = params_of(opt);
        doc["parameters"] = params_json(p);
        doc["answer"] = big_string(brute_count(g, p, opt.budget));
    }
    else if (opt.mode == "chromatic") {
        const unsigned k = require(opt.k, "--k");
        const unsigned i = require(opt.i, "--i");
        doc["parameters"] = Json{{"k", k}, {"i", i}};
        doc["answer"] = brute_chromatic(g, k, i, opt.budget);
    }
    else if (opt.mode == "mis") {
        doc["parameters"] = Json::object();
        doc["answer"] = max_independent_set_size(g, opt.budget);
    }
    else {
        throw UsageError("unknown oracle mode '" + opt.mode + "'");
    }
    doc["mode"] = opt.mode;
    doc["budget"] = opt.budget;
    return {doc, {}};
}

inline auto run_fvs(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    std::optional<FvsResult> s;
    if (!opt.fvs_file.empty())
        s = user_fvs(g, *in.fvs(g.n()));
    else if (opt.method == "exact")
        s = find_fvs(g);
    else if (opt.method == "greedy")
        s = find_fvs_greedy(g);
    else
        throw UsageError("unknown FVS method '" + opt.method + "'");
    Report rep{Json{{"parameters", Json::object()}, {"fvs", fvs_json(*s)}, {"answer", s->size()}}, {}};
    if (!opt.out.empty()) {
        std::ostringstream body;
        write_fvs_file(body, s->vertices());
        rep.doc["fvs_file"] = artifact(opt.out, body.str());
    }
    return rep;
}

inline auto run_kneser(const Options & opt, Inputs &) -> Report
{
    const unsigned r = require(opt.r, "--r");
    const unsigned k = require(opt.k, "--k");
    const auto kg = build_kneser(r, k);
    std::ostringstream labels;
    write_kneser_labels(labels, kg);
    Report rep{Json{{"parameters", Json{{"r", r}, {"k", k}}},
                    {"answer", Json{{"vertices", kg.graph.n()}, {"edges", kg.graph.edge_count()}}}},
               {}};
    const auto graph_text = to_dimacs_string(kg.graph);
    if (opt.out.empty()) {
        rep.doc["graph"] = artifact({}, graph_text);
        rep.doc["labels"] = artifact({}, labels.str());
        rep.text_tail = graph_text + labels.str();
    }
    else {
        rep.doc["graph"] = artifact(opt.out, graph_text);
        rep.doc["labels"] = artifact(opt.out + ".labels", labels.str());
    }
    return rep;
}

inline auto run_kk1(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    const unsigned k = require(opt.k, "--k");
    const auto res = chi_k_kminus1(g, k);
    Json witness = Json::array();
    if (res.chi > 0) {
        witness.push_back("binomial(" + std::to_string(res.q_kk1) + "," + std::to_string(k)
                          + ") = " + std::to_string(binomial(res.q_kk1, k)) + " >= "
                          + std::to_string(res.chi));
        if (res.q_kk1 > 0)
            witness.push_back("binomial(" + std::to_string(res.q_kk1 - 1) + "," + std::to_string(k)
                              + ") = " + std::to_string(binomial(res.q_kk1 - 1, k)) + " < "
                              + std::to_string(res.chi));
    }
    return {Json{{"parameters", Json{{"k", k}, {"i", k - 1}}},
                 {"answer", Json{{"chi", res.chi}, {"q_kk1", res.q_kk1}, {"witness", witness}}}},
            {}};
}

inline auto run_gadget(const Options & opt, Inputs & in) -> Report
{
    const auto f = in.cnf();
    const unsigned k = require(opt.k, "--k");
    const unsigned i = require(opt.i, "--i");
    const auto gg = build_gadget(f, k, i);
    std::ostringstream roles;
    write_gadget_roles(roles, gg);
    const auto graph_text = to_dimacs_string(gg.graph);
    Report rep{Json{{"parameters", Json{{"k", k}, {"i", i}}},
                    {"answer", Json{{"q", gg.q()},
                                    {"vertices", gg.graph.n()},
                                    {"edges", gg.graph.edge_count()},
                                    {"formula_vertex_count",
                                     gadget_vertex_count_formula(f.num_vars, f.clauses.size(), k, i)}}}},
               {}};
    if (opt.out.empty()) {
        rep.doc["graph"] = artifact({}, graph_text);
        rep.doc["roles"] = artifact({}, roles.str());
        rep.text_tail = graph_text + roles.str();
    }
    else {
        rep.doc["graph"] = artifact(opt.out, graph_text);
        rep.doc["roles"] = artifact(opt.out + ".roles", roles.str());
    }
    return rep;
}

inline auto run_verify(const Options & opt, Inputs & in) -> Report
{
    const auto g = in.graph();
    const auto p = params_of(opt);
    const auto f = in.coloring(g.n(), p);
    Json doc{{"parameters", params_json(p)}, {"answer", f.is_total() && is_proper(g, f, p)}};
    doc["total"] = f.is_total();
    return {doc, {}};
}

inline auto text_value(const Json & v) -> std::string
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_object() && v.contains("path"))
        return v["path"].get<std::string>();
    if (v.is_object() && v.contains("inline"))
        return "(below)";
    if (v.is_array()) {
        std::string out;
        for (const auto & x : v)
            out += (out.empty() ? "" : " ") + text_value(x);
        return out;
    }
    if (v.is_object()) {
        std::string out;
        for (const auto & [key, x] : v.items())
            out += (out.empty() ? "" : " ") + key + "=" + text_value(x);
        return out;
    }
    return v.dump();
}

inline auto print_report(std::ostream & out, const Options & opt, const Report & rep) -> void
{
    if (opt.format == "structured") {
        out << rep.doc.dump(2) << '\n';
        return;
    }
    for (const auto & [key, v] : rep.doc.items()) {
        if (key == "coloring" && v.is_array())
            continue;
        if (key == "fvs") {
            out << "fvs: " << text_value(v["vertices"]) << " (" << v["method"].get<std::string>() << ")\n";
            continue;
        }
        if (key == "answer" && v.is_object() && v.contains("witness")) {
            out << "chi: " << v["chi"] << "\nq_kk1: " << v["q_kk1"] << '\n';
            for (const auto & w : v["witness"])
                out << "witness: " << w.get<std::string>() << '\n';
            continue;
        }
        out << key << ": " << text_value(v) << '\n';
    }
    out << rep.text_tail;
}

/**
 * Entry point shared by the executable and the tests. Exit code 0 means the
 * run produced an answer (yes or no), 2 a usage or input error, 3 an
 * exhausted resource budget.
 */
inline auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    Options opt;
    CLI::App app{"Solver suite for (q,k,i)-colorings"};
    app.require_subcommand(1);

    struct Sub
    {
        const char * name;
        const char * help;
        Report (*fn)(const Options &, Inputs &);
    };
    const Sub subs[] = {
        {"decide", "decide (q,k,i)-colorability", run_decide},
        {"chromatic", "least q admitting a (q,k,i)-coloring", run_chromatic},
        {"count", "count proper (q,k,i)-colorings", run_count},
        {"extract", "produce a proper coloring", run_extract},
        {"oracle", "brute-force cross-check", run_oracle},
        {"fvs", "compute a feedback vertex set", run_fvs},
        {"kneser", "emit the Kneser graph K(r,k)", run_kneser},
        {"kk1", "(k,k-1)-chromatic number", run_kk1},
        {"gadget", "build the 3-CNF hardness gadget", run_gadget},
        {"verify", "check a coloring", run_verify},
    };
    for (const auto & s : subs) {
        auto * sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--graph", opt.graph, "DIMACS .col graph");
        sub->add_option("--q", opt.q, "palette size");
        sub->add_option("--k", opt.k, "colors per vertex");
        sub->add_option("--i", opt.i, "allowed overlap on an edge");
        sub->add_option("--r", opt.r, "Kneser ground set size");
        sub->add_option("--cnf", opt.cnf, "DIMACS 3-CNF formula");
        sub->add_option("--coloring", opt.coloring, "coloring file");
        sub->add_option("--fvs-file", opt.fvs_file, "feedback vertex set to replay");
        sub->add_option("--threads", opt.threads, "parallel h-enumeration")->check(CLI::PositiveNumber);
        sub->add_option("--budget", opt.budget, "oracle node cap");
        sub->add_option("--format", opt.format, "text or structured")
            ->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--out", opt.out, "artifact output path");
        if (std::string(s.name) == "oracle")
            sub->add_option("--mode", opt.mode, "decide, count, chromatic or mis")
                ->check(CLI::IsMember({"decide", "count", "chromatic", "mis"}));
        if (std::string(s.name) == "fvs")
            sub->add_option("--method", opt.method, "exact or greedy")
                ->check(CLI::IsMember({"exact", "greedy"}));
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    const Sub * chosen = nullptr;
    for (const auto & s : subs)
        if (app.got_subcommand(s.name))
            chosen = &s;

    try {
        Inputs in(opt);
        const auto start = std::chrono::steady_clock::now();
        auto rep = chosen->fn(opt, in);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        Json doc{{"subcommand", chosen->name}, {"input_digest", in.digest()}};
        for (auto & [key, v] : rep.doc.items())
            doc[key] = v;
        doc["wall_time_seconds"] = elapsed.count();
        rep.doc = std::move(doc);
        print_report(out, opt, rep);
        return exit_ok;
    }
    catch (const ResourceError & e) {
        err << "error: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace kicolor::cli

#endif // KICOLOR_TOOLS_CLI_HPP
