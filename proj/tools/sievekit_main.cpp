#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sievekit/io.hpp"
#include "sievekit/projections.hpp"

namespace {

using namespace sievekit;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasibleOrGuard = 3;
constexpr int kExitNoConvergence = 4;

struct CommonOpts {
    std::string input;
    std::string format;  // "", "csv", "json"
    std::string output;
    std::string dot;
    double tol = -1.0;  // >= 0 switches to float mode
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "matrix file, '-' for stdin")->required();
    cmd->add_option("--format", o.format, "csv or json (default: by file extension)");
    cmd->add_option("--output", o.output, "write the main result here instead of stdout");
    cmd->add_option("--dot", o.dot, "also write a DOT rendering to this path");
    cmd->add_option("--tol", o.tol,
                    "switch to floating-point mode with this comparison tolerance");
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path + "'");
    out << text;
}

io::MatrixFormat format_of(const CommonOpts& o) {
    if (o.format == "csv") return io::MatrixFormat::csv;
    if (o.format == "json") return io::MatrixFormat::json;
    if (!o.format.empty()) throw parse_error("unknown format '" + o.format + "'");
    if (o.input.size() > 5 && o.input.substr(o.input.size() - 5) == ".json")
        return io::MatrixFormat::json;
    return io::MatrixFormat::csv;
}

WeightSpace load_space(const CommonOpts& o) {
    WeightSpace u = io::parse_matrix(slurp(o.input), format_of(o));
    if (o.tol >= 0.0) u = u.to_inexact();
    return u;
}

double effective_tol(const CommonOpts& o) { return o.tol >= 0.0 ? o.tol : kDefaultTol; }

std::vector<std::vector<std::string>> parse_classes(const std::string& text) {
    std::vector<std::vector<std::string>> classes;
    std::vector<std::string> cur;
    std::string token;
    auto flush_token = [&] {
        if (!token.empty()) {
            cur.push_back(token);
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',') {
            flush_token();
        } else if (c == '|') {
            flush_token();
            if (!cur.empty()) classes.push_back(std::move(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token.push_back(c);
        }
    }
    flush_token();
    if (!cur.empty()) classes.push_back(std::move(cur));
    if (classes.empty()) throw validation_error("empty class specification");
    return classes;
}

struct DomainParams {
    std::string q = "1";
    std::string rho = "1";
    std::string grid;  // "int" or comma-separated levels
    std::string step = "1";
    bool then_path = false;
    std::string classes;
    int m = 3;
};

double parse_q(const std::string& s) {
    try {
        std::size_t used = 0;
        double q = std::stod(s, &used);
        if (used != s.size()) throw validation_error("bad q value '" + s + "'");
        return q;
    } catch (const std::logic_error&) {
        throw validation_error("bad q value '" + s + "'");
    }
}

ProjectionKind make_kind(const std::string& name, const DomainParams& p, const WeightSpace& u) {
    if (name == "ult" || name == "ultrametric") return ProjectionKind::ultrametric();
    if (name == "path" || name == "metric") return ProjectionKind::path_metric();
    if (name == "qmetric" || name == "q") {
        if (p.q == "inf") return ProjectionKind::q_metric_infinity();
        return ProjectionKind::q_metric(parse_q(p.q));
    }
    if (name == "disc" || name == "discretize") {
        std::vector<Num> grid;
        if (p.grid.empty() || p.grid == "int") {
            grid = integer_grid_for(u, Num::parse(p.step));
        } else {
            std::string cur;
            for (char c : p.grid + ",") {
                if (c == ',') {
                    if (!cur.empty()) grid.push_back(Num::parse(cur));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
        }
        return ProjectionKind::discretize(std::move(grid), p.then_path);
    }
    if (name == "infra" || name == "inframetric")
        return ProjectionKind::rho_inframetric(Num::parse(p.rho));
    if (name == "aspace") return ProjectionKind::a_space();
    if (name == "quotient") return ProjectionKind::quotient(parse_classes(p.classes));
    throw validation_error("unknown projection domain '" + name + "'");
}

DomainPredicate make_predicate(const std::string& name, const DomainParams& p) {
    if (name == "metric") return DomainPredicate::metric();
    if (name == "ult" || name == "ultrametric") return DomainPredicate::ultrametric();
    if (name == "qmetric" || name == "q") {
        if (p.q == "inf") return DomainPredicate::q_metric_infinity();
        return DomainPredicate::q_metric(parse_q(p.q));
    }
    if (name == "infra" || name == "inframetric")
        return DomainPredicate::rho_inframetric(Num::parse(p.rho));
    if (name == "relaxed") return DomainPredicate::rho_relaxed(Num::parse(p.rho));
    if (name == "aspace") return DomainPredicate::a_space();
    if (name == "amspace") return DomainPredicate::a_m_space(p.m);
    if (name == "intgrid") return DomainPredicate::integer_grid(Num::parse(p.step));
    throw validation_error("unknown predicate '" + name + "'");
}

SieveMethod method_of(const std::string& name) {
    if (name == "rips") return SieveMethod::rips;
    if (name == "sl") return SieveMethod::single_linkage;
    if (name == "cech") return SieveMethod::cech;
    throw validation_error("unknown sieve method '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weight-space toolkit: overlapping clustering sieves, clustering-domain "
                 "projections, tight spans and cut/tree diagnostics"};
    app.require_subcommand(1);

    CommonOpts common;
    DomainParams params;

    auto* cmd_validate = app.add_subcommand("validate", "parse and validate a matrix");
    CommonOpts o_validate;
    add_common(cmd_validate, o_validate);

    auto* cmd_check = app.add_subcommand("check", "evaluate a domain membership predicate");
    CommonOpts o_check;
    std::string predicate_name;
    add_common(cmd_check, o_check);
    cmd_check->add_option("--predicate", predicate_name,
                          "metric|ultrametric|qmetric|inframetric|relaxed|aspace|amspace|intgrid")
        ->required();
    cmd_check->add_option("--q", params.q, "q parameter (number or 'inf')");
    cmd_check->add_option("--rho", params.rho, "rho parameter");
    cmd_check->add_option("--m", params.m, "subset size for amspace");
    cmd_check->add_option("--step", params.step, "grid step for intgrid");

    auto* cmd_project = app.add_subcommand("project", "canonical projection onto domains");
    CommonOpts o_project;
    std::vector<std::string> domains;
    int max_iter = 100;
    add_common(cmd_project, o_project);
    cmd_project->add_option("--domain", domains,
                            "ult|path|qmetric|disc|infra|aspace|quotient; repeat for an "
                            "intersection")
        ->required();
    cmd_project->add_option("--q", params.q, "q parameter (number or 'inf')");
    cmd_project->add_option("--rho", params.rho, "rho parameter");
    cmd_project->add_option("--grid", params.grid, "'int' or comma-separated positive levels");
    cmd_project->add_flag("--then-path", params.then_path,
                          "apply the path-metric closure after discretizing");
    cmd_project->add_option("--classes", params.classes, "quotient classes, e.g. 'a,b|c'");
    cmd_project->add_option("--max-iter", max_iter, "round cap for intersections");

    auto* cmd_sieve = app.add_subcommand("sieve", "build a sieve");
    CommonOpts o_sieve;
    std::string sieve_method = "rips";
    std::string sieve_project;
    add_common(cmd_sieve, o_sieve);
    cmd_sieve->add_option("--method", sieve_method, "rips|sl|cech")->required();
    cmd_sieve->add_option("--project", sieve_project, "project onto this domain first");
    cmd_sieve->add_option("--q", params.q, "q parameter (number or 'inf')");
    cmd_sieve->add_option("--rho", params.rho, "rho parameter");
    cmd_sieve->add_option("--grid", params.grid, "'int' or comma-separated positive levels");
    cmd_sieve->add_flag("--then-path", params.then_path,
                        "apply the path-metric closure after discretizing");
    cmd_sieve->add_option("--classes", params.classes, "quotient classes, e.g. 'a,b|c'");

    auto* cmd_iterate = app.add_subcommand(
        "iterate", "iterate weight -> sieve -> weight until the weight stabilizes");
    CommonOpts o_iterate;
    std::string iter_method = "cech";
    bool until_stable = false;
    int iter_cap = 64;
    add_common(cmd_iterate, o_iterate);
    cmd_iterate->add_option("--method", iter_method, "rips|sl|cech");
    cmd_iterate->add_flag("--until-stable", until_stable, "iterate to a fixed point");
    cmd_iterate->add_option("--max-iter", iter_cap, "iteration cap");

    auto* cmd_tightspan = app.add_subcommand("tightspan", "enumerate tight span vertices");
    CommonOpts o_tightspan;
    add_common(cmd_tightspan, o_tightspan);

    auto* cmd_cutdec = app.add_subcommand("cutdec", "cut decomposition or certificate");
    CommonOpts o_cutdec;
    add_common(cmd_cutdec, o_cutdec);

    auto* cmd_treecheck = app.add_subcommand("treecheck", "four-point tree-metric test");
    CommonOpts o_treecheck;
    add_common(cmd_treecheck, o_treecheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (cmd_validate->parsed()) {
            WeightSpace u = load_space(o_validate);
            write_out(o_validate.output, io::emit_matrix_json(u));
            return kExitOk;
        }
        if (cmd_check->parsed()) {
            WeightSpace u = load_space(o_check);
            DomainPredicate p = make_predicate(predicate_name, params);
            bool ok = satisfies(u, p, effective_tol(o_check));
            write_out(o_check.output, std::string("{\"predicate\": \"") + predicate_name +
                                          "\", \"holds\": " + (ok ? "true" : "false") + "}\n");
            return kExitOk;
        }
        if (cmd_project->parsed()) {
            WeightSpace u = load_space(o_project);
            WeightSpace result = u;
            if (domains.size() == 1) {
                result = project(u, make_kind(domains.front(), params, u));
            } else {
                std::vector<ProjectionKind> parts;
                for (const auto& name : domains) parts.push_back(make_kind(name, params, u));
                IntersectionResult r =
                    project_intersection(u, parts, effective_tol(o_project), max_iter);
                if (!r.converged) {
                    std::cerr << "did not stabilize within " << max_iter << " rounds\n";
                    write_out(o_project.output, io::emit_matrix_json(r.result));
                    return kExitNoConvergence;
                }
                result = r.result;
            }
            write_out(o_project.output, io::emit_matrix_json(result));
            return kExitOk;
        }
        if (cmd_sieve->parsed()) {
            WeightSpace u = load_space(o_sieve);
            if (!sieve_project.empty()) u = project(u, make_kind(sieve_project, params, u));
            Sieve s = build_sieve(u, method_of(sieve_method));
            write_out(o_sieve.output, io::emit_sieve(s));
            if (!o_sieve.dot.empty()) write_out(o_sieve.dot, io::sieve_dot(s));
            return kExitOk;
        }
        if (cmd_iterate->parsed()) {
            WeightSpace u = load_space(o_iterate);
            SieveMethod m = method_of(iter_method);
            int steps = 0;
            bool stable = false;
            WeightSpace cur = u;
            while (steps < iter_cap) {
                WeightSpace next = sieve_to_weight(build_sieve(cur, m));
                ++steps;
                if (next == cur) {
                    stable = true;
                    break;
                }
                cur = next;
                if (!until_stable) break;
            }
            std::ostringstream os;
            os << "{\"iterations\": " << steps << ", \"stable\": " << (stable ? "true" : "false")
               << "}\n";
            write_out("", os.str());
            write_out(o_iterate.output, io::emit_matrix_json(cur));
            if (until_stable && !stable) return kExitNoConvergence;
            return kExitOk;
        }
        if (cmd_tightspan->parsed()) {
            WeightSpace u = load_space(o_tightspan);
            TightSpanReport rep = tight_span_vertices(u, effective_tol(o_tightspan));
            write_out(o_tightspan.output, io::emit_tight_span(rep));
            if (!o_tightspan.dot.empty()) write_out(o_tightspan.dot, io::tight_span_dot(rep));
            return kExitOk;
        }
        if (cmd_cutdec->parsed()) {
            WeightSpace u = load_space(o_cutdec);
            DecomposeOutcome out = decompose(u);
            if (out.feasible()) {
                write_out(o_cutdec.output, io::emit_decomposition(*out.decomposition));
                return kExitOk;
            }
            write_out(o_cutdec.output, io::emit_certificate(u, out.certificate));
            return kExitInfeasibleOrGuard;
        }
        if (cmd_treecheck->parsed()) {
            WeightSpace u = load_space(o_treecheck);
            bool ok = is_tree_metric(u, effective_tol(o_treecheck));
            write_out(o_treecheck.output,
                      std::string("{\"tree_metric\": ") + (ok ? "true" : "false") + "}\n");
            return kExitOk;
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const size_guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasibleOrGuard;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitValidation;
}
