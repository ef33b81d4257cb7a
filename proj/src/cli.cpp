#include "ccp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccp/io.hpp"
#include "ccp/oracle.hpp"
#include "ccp/parallel.hpp"
#include "ccp/pls.hpp"
#include "ccp/reductions.hpp"
#include "ccp/two_color.hpp"
#include "ccp/walk.hpp"

namespace ccp {

namespace {

using ojson = nlohmann::ordered_json;

struct Flags {
    std::string input;
    std::string method = "pls";
    std::size_t k = 0;
    bool trace = false;
    std::optional<std::uint64_t> budget;
    unsigned c_exponent = 12;
    int threads = 0;
    std::string out;
    bool best = false;
    bool oracle = false;
    bool force = false;
};

// ---- json helpers ----------------------------------------------------------

ojson rationals(const Vector& v)
{
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

ojson instance_json(const CcpInstance& inst)
{
    ojson colors = ojson::array();
    for (const auto& C : inst.colors) {
        ojson c = ojson::array();
        for (const auto& p : C) c.push_back(rationals(p));
        colors.push_back(c);
    }
    return {{"dim", inst.dim}, {"b", rationals(inst.b)}, {"colors", colors}};
}

ojson points_json(const PointSet& P)
{
    ojson a = ojson::array();
    for (const auto& p : P) a.push_back(rationals(p));
    return a;
}

ojson indices(const IndexSet& s)
{
    ojson a = ojson::array();
    for (auto i : s) a.push_back(i + 1);
    return a;
}

ojson choice_json(const ColorfulChoice& c)
{
    ojson pts = ojson::array();
    for (const auto& r : c.points) pts.push_back({r.color + 1, r.index + 1});
    return {{"points", pts}, {"coefficients", rationals(c.coefficients)}};
}

ojson encoding_json(const SimplexEncoding& T)
{
    ojson a = ojson::array();
    for (const auto& q : T.entries) a.push_back({{"S", indices(q.S)}, {"I0", indices(q.I0)}, {"I1", indices(q.I1)}});
    return a;
}

ojson certificate_json(const TverbergCertificate& c)
{
    ojson parts = ojson::array(), coef = ojson::array();
    for (const auto& p : c.partition) parts.push_back(indices(p));
    for (const auto& a : c.coefficients) coef.push_back(rationals(a));
    return {{"m", c.m},
            {"core", c.core},
            {"partition", parts},
            {"common_point", rationals(c.common_point)},
            {"coefficients", coef}};
}

// Report readers throw ErrorKind::parse on malformed fields.
const ojson& field(const ojson& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::parse, std::string("report: missing field \"") + key + "\"");
    return j.at(key);
}

Vector read_rationals(const ojson& j)
{
    if (!j.is_array()) fail(ErrorKind::parse, "report: expected an array of rationals");
    Vector v;
    for (const auto& x : j) {
        if (!x.is_string()) fail(ErrorKind::parse, "report: rationals are strings");
        v.push_back(parse_rational(x.get<std::string>()));
    }
    return v;
}

std::size_t read_index(const ojson& j)
{
    if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) fail(ErrorKind::parse, "report: indices are positive integers");
    return j.get<std::size_t>() - 1;
}

ColorfulChoice read_choice(const ojson& j)
{
    ColorfulChoice c;
    for (const auto& p : field(j, "points")) {
        if (!p.is_array() || p.size() != 2) fail(ErrorKind::parse, "report: points are [color, index] pairs");
        c.points.push_back({read_index(p[0]), read_index(p[1])});
    }
    c.coefficients = read_rationals(field(j, "coefficients"));
    return c;
}

TverbergCertificate read_certificate(const ojson& j)
{
    TverbergCertificate c;
    c.m = field(j, "m").get<std::size_t>();
    c.core = field(j, "core").get<std::size_t>();
    for (const auto& part : field(j, "partition")) {
        std::vector<std::size_t> p;
        for (const auto& i : part) p.push_back(read_index(i));
        c.partition.push_back(std::move(p));
    }
    c.common_point = read_rationals(field(j, "common_point"));
    for (const auto& a : field(j, "coefficients")) c.coefficients.push_back(read_rationals(a));
    return c;
}

std::size_t max_bits(const Vector& v)
{
    std::size_t b = 0;
    for (const auto& x : v) b = std::max(b, bit_length(x));
    return b;
}

std::string join_labels(const std::vector<std::size_t>& labels)
{
    std::string s = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + std::to_string(labels[i] + 1);
    return s + "}";
}

// ---- commands -------------------------------------------------------------

struct Outcome {
    ojson report;
    std::string summary;
};

Outcome cmd_solve(const Flags& f, std::ostream& err)
{
    const std::string text = read_file(f.input);
    CcpInstance inst = parse_instance(text);
    require(inst.colors.size() == inst.dim, ErrorKind::parse,
            "colors: expected " + std::to_string(inst.dim) + " colors, found " + std::to_string(inst.colors.size()));
    auto v = validate(inst);
    require(v.ok, ErrorKind::precondition, v.message);

    ojson r;
    r["solver"] = f.method;
    r["instance_digest"] = instance_digest(inst);
    r["instance"] = instance_json(inst);
    if (f.method == "ppad") {
        PerturbOptions po;
        po.c_exponent = f.c_exponent;
        WalkOptions wo;
        if (f.budget) wo.budget = *f.budget;
        if (f.trace)
            wo.trace = [&err](const TraceEvent& e) {
                err << "step=" << e.step << " level=" << e.level << " digest=" << e.digest
                    << " labels=" << join_labels(e.labels) << " sign=" << (e.sign > 0 ? "+1" : e.sign < 0 ? "-1" : "0")
                    << '\n';
            };
        auto sol = solve_ppad(inst, po, wo);
        require(certifies(inst, sol.choice) && is_colorful(inst, sol.choice), ErrorKind::internal,
                "solve: ppad output failed certification");
        const auto& pm = sol.perturbation.map;
        const auto& K = sol.perturbation.ground.constants;
        r["solution"] = choice_json(sol.choice);
        r["stats"] = {{"steps", sol.walk.steps},
                      {"verify_calls", sol.walk.stats.verify_calls},
                      {"region_lps", sol.walk.stats.region_lps},
                      {"max_bits", std::max(sol.walk.stats.max_bits, max_bits(sol.choice.coefficients))},
                      {"inverted", sol.walk.inverted}};
        r["perturbation"] = {{"fast_path", sol.perturbation.fast_path},
                             {"ground_digest", instance_digest(sol.perturbation.ground.as_instance())},
                             {"eps0", to_string(pm.eps0)},
                             {"clearing", pm.clearing.get_str()},
                             {"b_scale", pm.b_scale.get_str()},
                             {"m", K.m.get_str()},
                             {"N", K.N.get_str()},
                             {"c_exponent", K.c_exponent}};
        r["sink"] = encoding_json(sol.walk.sink);
        return {r, "ppad: certified after " + std::to_string(sol.walk.steps) + " steps"};
    }

    PlsOptions po;
    po.best_improvement = f.best;
    if (f.budget) po.budget = *f.budget;
    if (f.trace)
        po.trace = [&err](const PlsStep& s) {
            err << "step=" << s.step << " color=" << s.color + 1 << " swap=" << s.from + 1 << "->" << s.to + 1
                << " potential=" << to_string(s.before) << "->" << to_string(s.after) << '\n';
        };
    auto res = run_local_search(inst, po);
    require(certifies(inst, res.choice) && is_colorful(inst, res.choice), ErrorKind::internal,
            "solve: pls output failed certification");
    ojson steps = ojson::array();
    for (const auto& s : res.steps)
        steps.push_back({{"color", s.color + 1},
                         {"from", s.from + 1},
                         {"to", s.to + 1},
                         {"before", to_string(s.before)},
                         {"after", to_string(s.after)}});
    std::size_t bits = max_bits(res.choice.coefficients);
    for (const auto& p : res.potentials) bits = std::max(bits, bit_length(p));
    r["rule"] = f.best ? "best-improvement" : "first-improvement";
    r["solution"] = choice_json(res.choice);
    r["potentials"] = rationals(res.potentials);
    r["steps"] = steps;
    r["stats"] = {{"steps", res.steps.size()}, {"max_bits", bits}};
    return {r, "pls: certified after " + std::to_string(res.steps.size()) + " steps"};
}

Outcome cmd_two_color(const Flags& f, std::ostream& err)
{
    CcpInstance inst = parse_instance(read_file(f.input), 2);
    TwoColorOptions o;
    o.c_exponent = f.c_exponent;
    if (f.trace)
        o.trace = [&err](const SplitProbe& p) {
            const char* v = p.result.verdict == Verdict::found ? "found" : p.result.verdict == Verdict::go_left ? "left" : "right";
            std::string counts;
            for (auto n : p.result.counts) counts += (counts.empty() ? "" : ",") + std::to_string(n);
            err << "iter=" << p.iteration << " t=" << to_string(p.t) << " support=" << p.result.support.size()
                << " counts={" << counts << "}"
                << " verdict=" << v << '\n';
        };
    auto res = find_split(inst.colors[0], inst.colors[1], inst.b, f.k, o);
    ojson r;
    r["solver"] = "two-color";
    r["instance_digest"] = instance_digest(inst);
    r["instance"] = instance_json(inst);
    r["k"] = f.k;
    r["solution"] = choice_json(res.choice);
    r["stats"] = {{"iterations", res.iterations},
                  {"cap", res.cap},
                  {"pipeline", res.pipeline},
                  {"max_bits", max_bits(res.choice.coefficients)}};
    return {r, "two-color: split found in " + std::to_string(res.iterations) + " iterations (cap " +
                   std::to_string(res.cap) + ")"};
}

Outcome cmd_points(const std::string& which, const Flags& f)
{
    PointSet P = parse_points(read_file(f.input));
    const Backend backend = f.method == "ppad" ? Backend::ppad : Backend::pls;
    const std::size_t d = P.front().size();
    ojson r;
    r["solver"] = which;
    r["backend"] = f.method;
    r["points_digest"] = points_digest(P);
    r["points"] = points_json(P);
    std::string summary;
    if (which == "tverberg") {
        auto c = solve_tverberg(P, backend);
        r["certificate"] = certificate_json(c);
        summary = "tverberg: " + std::to_string(c.m) + " parts";
    } else if (which == "centerpoint") {
        auto c = centerpoint(P, backend);
        r["point"] = rationals(c.point);
        r["depth_bound"] = c.depth_bound;
        r["certificate"] = certificate_json(c.certificate);
        summary = "centerpoint: depth >= " + std::to_string(c.depth_bound);
    } else {
        auto c = simplicial_depth_point(P, backend);
        r["point"] = rationals(c.point);
        r["depth_bound"] = c.bound.get_str();
        r["certificate"] = certificate_json(c.certificate);
        summary = "simdepth: depth >= " + c.bound.get_str();
    }
    r["padding"] = P.size() == (tverberg_parts(P.size(), d) - 1) * (d + 1) + 1 ? "none" : "surplus points join parts with weight 0";
    return {r, summary};
}

ojson map_json(const PerturbResult& pr)
{
    const auto& m = pr.map;
    ojson origin = ojson::array(), scale = ojson::array();
    for (const auto& c : m.origin) {
        ojson row = ojson::array();
        for (const auto& o : c) row.push_back({o.color + 1, o.index + 1});
        origin.push_back(row);
    }
    for (const auto& c : m.point_scale) {
        ojson row = ojson::array();
        for (const auto& s : c) row.push_back(s.get_str());
        scale.push_back(row);
    }
    const auto& K = pr.ground.constants;
    return {{"fast_path", pr.fast_path},
            {"identity", m.identity},
            {"eps0", to_string(m.eps0)},
            {"clearing", m.clearing.get_str()},
            {"b_scale", m.b_scale.get_str()},
            {"origin", origin},
            {"point_scale", scale},
            {"constants", {{"m", K.m.get_str()}, {"N", K.N.get_str()}, {"c_exponent", K.c_exponent}}}};
}

Outcome cmd_perturb(const Flags& f)
{
    CcpInstance inst = parse_instance(read_file(f.input));
    require(inst.colors.size() == inst.dim, ErrorKind::parse,
            "colors: expected " + std::to_string(inst.dim) + " colors, found " + std::to_string(inst.colors.size()));
    PerturbOptions po;
    po.c_exponent = f.c_exponent;
    po.force = f.force;
    auto pr = perturb_to_general_position(inst, po);
    const CcpInstance ground = pr.ground.as_instance();
    ojson r;
    r["solver"] = "perturb";
    r["instance_digest"] = instance_digest(inst);
    r["instance"] = instance_json(inst);
    r["ground_digest"] = instance_digest(ground);
    r["ground"] = instance_json(ground);
    r["map"] = map_json(pr);
    return {r, pr.fast_path ? "perturb: fast path, instance already in general position" : "perturb: pipeline applied"};
}

// ---- verify ---------------------------------------------------------------

std::string check_report(const ojson& r, bool oracle)
{
    const std::string solver = field(r, "solver").get<std::string>();
    if (solver == "ppad" || solver == "pls" || solver == "two-color" || solver == "perturb") {
        CcpInstance inst = parse_instance(field(r, "instance").dump());
        if (field(r, "instance_digest").get<std::string>() != instance_digest(inst)) return "instance digest mismatch";
        if (solver == "perturb") {
            CcpInstance g = parse_instance(field(r, "ground").dump());
            if (field(r, "ground_digest").get<std::string>() != instance_digest(g)) return "ground digest mismatch";
            if (!satisfies_P1(g)) return "ground instance violates P1";
            if (oracle && verify_P2(g)) return "ground instance violates P2";
            const auto& origin = field(field(r, "map"), "origin");
            if (origin.size() != g.colors.size()) return "map does not cover every ground color";
            for (std::size_t c = 0; c < origin.size(); ++c) {
                if (origin[c].size() != g.colors[c].size()) return "map does not cover every ground point";
                for (const auto& o : origin[c]) {
                    const std::size_t oc = read_index(o.at(0)), oi = read_index(o.at(1));
                    if (oc >= inst.colors.size() || oi >= inst.colors[oc].size()) return "map points outside the instance";
                }
            }
            return "";
        }
        ColorfulChoice c = read_choice(field(r, "solution"));
        if (c.points.size() != c.coefficients.size()) return "coefficient count does not match point count";
        for (const auto& p : c.points)
            if (p.color >= inst.colors.size() || p.index >= inst.colors[p.color].size()) return "point reference out of range";
        if (!certifies(inst, c)) return "coefficients do not reproduce b";
        if (solver == "two-color") {
            const std::size_t k = field(r, "k").get<std::size_t>();
            std::size_t n1 = 0;
            for (const auto& p : c.points) n1 += p.color == 0;
            auto sorted = c.points;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "repeated point";
            if (c.points.size() != inst.dim || n1 != k) return "split does not have k points of the first color";
            return "";
        }
        if (!is_colorful(inst, c)) return "choice is not colorful";
        if (oracle) {
            auto all = enumerate_colorful_solutions(inst);
            auto same = [&](const ColorfulChoice& o) {
                auto a = o.points, b = c.points;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                return a == b;
            };
            if (std::none_of(all.begin(), all.end(), same)) return "choice missing from the brute-force enumeration";
        }
        return "";
    }
    if (solver == "tverberg" || solver == "centerpoint" || solver == "simdepth") {
        PointSet P;
        for (const auto& p : field(r, "points")) P.push_back(read_rationals(p));
        if (P.empty()) return "no points";
        if (field(r, "points_digest").get<std::string>() != points_digest(P)) return "points digest mismatch";
        const std::size_t d = P.front().size();
        TverbergCertificate c = read_certificate(field(r, "certificate"));
        if (!check_tverberg(P, c)) return "partition certificate does not check";
        if (c.partition.size() != tverberg_parts(P.size(), d)) return "wrong number of parts";
        if (solver == "centerpoint") {
            if (read_rationals(field(r, "point")) != c.common_point) return "point differs from the common point";
            if (field(r, "depth_bound").get<std::size_t>() != c.partition.size()) return "depth bound does not match";
            if (oracle && d <= 2 && tukey_depth(P, c.common_point) < c.partition.size()) return "Tukey depth below bound";
        } else if (solver == "simdepth") {
            if (read_rationals(field(r, "point")) != c.common_point) return "point differs from the common point";
            const Integer bound = simplicial_depth_bound(P.size(), d);
            if (field(r, "depth_bound").get<std::string>() != bound.get_str()) return "depth bound does not match";
            if (oracle && Integer(static_cast<unsigned long>(simplicial_depth_count(P, c.common_point))) < bound)
                return "simplicial depth below bound";
        }
        return "";
    }
    return "unknown solver \"" + solver + "\"";
}

Outcome cmd_verify(const Flags& f, bool& rejected)
{
    const std::string text = read_file(f.input);
    ojson r;
    try {
        r = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        fail(ErrorKind::parse, e.what());
    }
    std::string why;
    try {
        why = check_report(r, f.oracle);
    } catch (const ojson::exception& e) {
        fail(ErrorKind::parse, std::string("report: ") + e.what());
    }
    rejected = !why.empty();
    ojson out;
    out["solver"] = "verify";
    out["checked"] = field(r, "solver");
    out["valid"] = !rejected;
    if (rejected) out["reason"] = why;
    return {out, rejected ? "rejected: " + why : "valid"};
}

int exit_code_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::parse: return exit_parse;
    case ErrorKind::budget: return exit_budget;
    case ErrorKind::audit: return exit_audit;
    case ErrorKind::precondition:
    case ErrorKind::dimension: return exit_precondition;
    default: return exit_other;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Colorful Caratheodory solvers with exact certificates", "ccp"};
    app.require_subcommand(1, 1);
    Flags f;
    std::uint64_t budget = 0;

    auto common = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", f.input, what)->required();
        sub->add_flag("--trace", f.trace, "Trace to stderr");
        sub->add_option("--budget", budget, "Step budget");
        sub->add_option("--c-exponent", f.c_exponent, "Exponent c in eps = N^(-c d)")->check(CLI::PositiveNumber);
        sub->add_option("--threads", f.threads, "Thread hint for parallel oracles")->check(CLI::NonNegativeNumber);
        sub->add_option("--out", f.out, "Write the report here instead of stdout");
    };
    auto* solve = app.add_subcommand("solve", "Solve a colorful Caratheodory instance");
    common(solve, "Instance file");
    solve->add_option("--method", f.method, "ppad or pls")->check(CLI::IsMember({"ppad", "pls"}));
    solve->add_flag("--best-improvement", f.best, "PLS: take the best swap instead of the first");
    auto* two = app.add_subcommand("two-color", "Find a (k, d-k) split of two colors");
    common(two, "Two-color instance file");
    two->add_option("--k", f.k, "Points taken from the first color")->required();
    std::vector<CLI::App*> pointcmds;
    for (const char* name : {"tverberg", "centerpoint", "simdepth"}) {
        auto* s = app.add_subcommand(name, std::string("Compute a ") + name + " certificate from a point file");
        common(s, "Point file");
        s->add_option("--method", f.method, "CCP backend, ppad or pls")->check(CLI::IsMember({"ppad", "pls"}));
        pointcmds.push_back(s);
    }
    auto* perturb = app.add_subcommand("perturb", "Write the general-position ground instance and its map");
    common(perturb, "Instance file");
    perturb->add_flag("--force", f.force, "Run the full pipeline even when the instance is already in general position");
    auto* verify = app.add_subcommand("verify", "Re-check the certificate embedded in a report");
    common(verify, "Report file");
    verify->add_flag("--oracle", f.oracle, "Also cross-check against the brute-force oracles");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_parse;
    }
    if (budget) f.budget = budget;
    if (f.threads > 0) set_thread_hint(f.threads);

    const auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome o;
        bool rejected = false;
        if (solve->parsed()) o = cmd_solve(f, err);
        else if (two->parsed()) o = cmd_two_color(f, err);
        else if (perturb->parsed()) o = cmd_perturb(f);
        else if (verify->parsed()) o = cmd_verify(f, rejected);
        else
            for (auto* s : pointcmds)
                if (s->parsed()) o = cmd_points(s->get_name(), f);

        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream wall;
        wall.precision(3);
        wall << std::fixed << secs;

        if (perturb->parsed() && !f.out.empty()) {
            // Ground instance in the ordinary instance format, so it can be fed back to solve.
            write_file(f.out + ".ground.json", serialize_instance(parse_instance(o.report["ground"].dump())));
            ojson m = o.report["map"];
            m["instance_digest"] = o.report["instance_digest"];
            m["ground_digest"] = o.report["ground_digest"];
            write_file(f.out + ".map.json", m.dump(2) + "\n");
            out << o.summary << "; wrote " << f.out << ".ground.json and " << f.out << ".map.json (" << wall.str()
                << " s)\n";
            return exit_ok;
        }
        const std::string text = o.report.dump(2) + "\n";
        if (f.out.empty()) {
            out << text;
            err << o.summary << " (" << wall.str() << " s)\n";
        } else {
            write_file(f.out, text);
            out << o.summary << " (" << wall.str() << " s)\n";
        }
        return rejected ? exit_rejected : exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_other;
    }
}

}  // namespace ccp
