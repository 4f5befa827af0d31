// Command-line front end: operator tables, exact CD curvature, CDE' condition
// checks, violation search, and the built-in path-graph reproduction.
//
// Exit codes: 0 success / no violation, 2 input error, 3 violation found,
// 4 reproduction check failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gammacalc/gammacalc.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitViolation = 3;
constexpr int kExitReproFailure = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gammacalc::Graph load_graph(const std::string& path) {
    try {
        return gammacalc::Graph::from_edge_list(read_file(path));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

gammacalc::VertexFunction load_function(const std::string& path, const gammacalc::Graph& g) {
    try {
        return gammacalc::VertexFunction::parse(read_file(path), g);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

double parse_n(const std::string& text, bool allow_infinite) {
    if (text == "inf" || text == "infinity") {
        if (!allow_infinite)
            throw std::invalid_argument("this subcommand needs a finite dimension parameter n");
        return std::numeric_limits<double>::infinity();
    }
    double n = 0.0;
    try {
        std::size_t used = 0;
        n = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse n value '" + text + "'");
    }
    if (!(n > 0.0)) throw std::invalid_argument("n must be positive (or 'inf')");
    return n;
}

void print_json(const json& j) { std::cout << gammacalc::to_canonical_json(j); }

std::string fmt(double v) { return gammacalc::format_sig12(v); }

// ---------------------------------------------------------------- ops ----

int cmd_ops(const std::string& graph_path, const std::string& func_path,
            const std::string& vertex, const std::string& format) {
    gammacalc::Graph g = load_graph(graph_path);
    gammacalc::VertexFunction f = load_function(func_path, g);
    std::vector<std::string> targets;
    if (vertex.empty())
        targets = g.vertices();
    else
        targets.push_back(g.id_of(g.index_of(vertex)));

    struct Row {
        std::string vertex;
        double lap, gam, gam2;
    };
    std::vector<Row> rows;
    for (const auto& v : targets)
        rows.push_back({v, gammacalc::laplacian(g, f, v), gammacalc::gamma(g, f, v),
                        gammacalc::gamma2(g, f, v)});

    if (format == "json") {
        json out;
        out["command"] = "ops";
        out["rows"] = json::array();
        for (const auto& r : rows) {
            json row;
            row["vertex"] = r.vertex;
            row["laplacian"] = r.lap;
            row["gamma"] = r.gam;
            row["gamma2"] = r.gam2;
            out["rows"].push_back(row);
        }
        print_json(out);
    } else if (format == "csv") {
        std::cout << "vertex,laplacian,gamma,gamma2\n";
        for (const auto& r : rows)
            std::cout << r.vertex << ',' << fmt(r.lap) << ',' << fmt(r.gam) << ',' << fmt(r.gam2)
                      << '\n';
    } else {
        std::cout << "vertex  laplacian  gamma  gamma2\n";
        for (const auto& r : rows)
            std::cout << r.vertex << "  " << fmt(r.lap) << "  " << fmt(r.gam) << "  " << fmt(r.gam2)
                      << '\n';
    }
    return kExitOk;
}

// ----------------------------------------------------------------- cd ----

int cmd_cd(const std::string& graph_path, const std::string& n_text, const std::string& format) {
    gammacalc::Graph g = load_graph(graph_path);
    double n = parse_n(n_text, /*allow_infinite=*/true);

    struct Row {
        std::string vertex, n_min, k_max, status;
    };
    std::vector<Row> rows;
    json jrows = json::array();
    for (const auto& v : g.vertices()) {
        gammacalc::CurvatureResult nm = gammacalc::cd_nmin(g, v);
        gammacalc::CurvatureResult km = gammacalc::cd_kmax(g, v, n);
        Row r;
        r.vertex = v;
        json jr;
        jr["vertex"] = v;
        switch (nm.n_min_kind) {
            case gammacalc::NMinKind::finite:
                r.n_min = fmt(nm.n_min);
                jr["n_min"] = nm.n_min;
                break;
            case gammacalc::NMinKind::none_fails:
                r.n_min = "none";
                jr["n_min"] = "none";
                break;
            case gammacalc::NMinKind::any_dimension:
                r.n_min = "any";
                jr["n_min"] = "any";
                break;
        }
        if (km.k_max_kind == gammacalc::KMaxKind::finite) {
            r.k_max = fmt(km.k_max);
            jr["k_max"] = km.k_max;
        } else {
            r.k_max = "-inf";
            jr["k_max"] = "-inf";
        }
        r.status = nm.notes + "; " + km.notes;
        jr["status"] = r.status;
        rows.push_back(r);
        jrows.push_back(jr);
    }

    if (format == "json") {
        json out;
        out["command"] = "cd";
        if (std::isinf(n))
            out["n"] = "inf";
        else
            out["n"] = n;
        out["rows"] = jrows;
        print_json(out);
    } else if (format == "csv") {
        std::cout << "vertex,n_min,k_max,status\n";
        for (const auto& r : rows)
            std::cout << r.vertex << ',' << r.n_min << ',' << r.k_max << ",\"" << r.status
                      << "\"\n";
    } else {
        std::cout << "CD curvature per vertex (n = " << n_text << ")\n";
        std::cout << "vertex  n_min  k_max\n";
        for (const auto& r : rows)
            std::cout << r.vertex << "  " << r.n_min << "  " << r.k_max << "  [" << r.status
                      << "]\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------- cde-prime ----

int cmd_cde_prime(const std::string& graph_path, const std::string& func_path, double K,
                  const std::string& n_text, const std::string& vertex,
                  const std::string& format) {
    gammacalc::Graph g = load_graph(graph_path);
    gammacalc::VertexFunction f = load_function(func_path, g);
    double n = parse_n(n_text, /*allow_infinite=*/false);
    for (const auto& [v, value] : f.values())
        if (!(value > 0.0))
            throw std::invalid_argument("CDE' needs a positive function; f('" + v +
                                        "') = " + fmt(value));

    std::vector<std::string> targets;
    if (vertex.empty())
        targets = g.vertices();
    else
        targets.push_back(g.id_of(g.index_of(vertex)));

    std::vector<gammacalc::SlackReport> reports;
    bool violation = false;
    for (const auto& v : targets) {
        gammacalc::SlackReport r = gammacalc::cde_prime_slack(g, v, K, n, f);
        violation = violation || (r.applicable && r.slack < 0.0);
        reports.push_back(std::move(r));
    }

    if (format == "json") {
        json out;
        out["command"] = "cde-prime";
        out["K"] = K;
        out["n"] = n;
        out["violation"] = violation;
        out["rows"] = json::array();
        for (const auto& r : reports) {
            json jr;
            jr["vertex"] = r.vertex;
            jr["gamma2"] = r.gamma2_value;
            jr["gamma_correction"] = r.gamma_correction;
            jr["rhs_dimension_term"] = r.rhs_dimension_term;
            jr["rhs_curvature_term"] = r.rhs_curvature_term;
            jr["slack"] = r.slack;
            jr["applicable"] = r.applicable;
            jr["reason"] = r.reason;
            out["rows"].push_back(jr);
        }
        print_json(out);
    } else if (format == "csv") {
        std::cout << "vertex,slack,applicable,gamma2,gamma_correction,rhs_dimension_term,"
                     "rhs_curvature_term\n";
        for (const auto& r : reports)
            std::cout << r.vertex << ',' << fmt(r.slack) << ',' << (r.applicable ? "true" : "false")
                      << ',' << fmt(r.gamma2_value) << ',' << fmt(r.gamma_correction) << ','
                      << fmt(r.rhs_dimension_term) << ',' << fmt(r.rhs_curvature_term) << '\n';
    } else {
        std::cout << "CDE'(K=" << fmt(K) << ", n=" << fmt(n) << ") per vertex\n";
        for (const auto& r : reports) {
            std::cout << r.vertex << "  slack=" << fmt(r.slack)
                      << (r.applicable ? "  applicable" : "  not-applicable (" + r.reason + ")")
                      << '\n';
        }
        std::cout << (violation ? "violation found\n" : "no violation\n");
    }
    return violation ? kExitViolation : kExitOk;
}

// -------------------------------------------------------------- search ----

int cmd_search(const std::string& graph_path, const std::string& vertex, double K,
               const std::string& n_text, std::uint64_t seed, int restarts, int iterations,
               double tol, const std::string& out_path, const std::string& format) {
    gammacalc::Graph g = load_graph(graph_path);
    double n = parse_n(n_text, /*allow_infinite=*/false);
    gammacalc::SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iterations = iterations;
    cfg.seed = seed;

    std::vector<std::string> targets;
    if (vertex.empty())
        targets = g.vertices();
    else
        targets.push_back(g.id_of(g.index_of(vertex)));

    std::vector<gammacalc::SearchOutcome> outcomes;
    const gammacalc::SearchOutcome* best = nullptr;
    for (const auto& v : targets) {
        outcomes.push_back(gammacalc::search_violation(g, v, K, n, cfg));
        const auto& o = outcomes.back();
        if (o.found && (!best || o.slack < best->slack)) best = &outcomes.back();
    }
    bool violation = best && best->slack < -tol;

    if (!out_path.empty() && best) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write witness file '" + out_path + "'");
        out << best->witness.to_assignment_text();
    }

    if (format == "json") {
        json out;
        out["command"] = "search";
        out["K"] = K;
        out["n"] = n;
        out["violation"] = violation;
        out["violation_tolerance"] = tol;
        out["outcomes"] = json::array();
        for (const auto& o : outcomes) {
            json jo;
            jo["vertex"] = o.vertex;
            jo["found"] = o.found;
            if (o.found) {
                jo["slack"] = o.slack;
                json jw;
                for (const auto& [id, value] : o.witness.values()) jw[id] = value;
                jo["witness"] = jw;
            }
            jo["restarts"] = o.restarts;
            jo["evaluations"] = o.evaluations;
            jo["seed"] = o.seed;
            out["outcomes"].push_back(jo);
        }
        print_json(out);
    } else if (format == "csv") {
        std::cout << "vertex,found,slack,restarts,evaluations,seed\n";
        for (const auto& o : outcomes)
            std::cout << o.vertex << ',' << (o.found ? "true" : "false") << ','
                      << (o.found ? fmt(o.slack) : "") << ',' << o.restarts << ',' << o.evaluations
                      << ',' << o.seed << '\n';
    } else {
        std::cout << "CDE'(K=" << fmt(K) << ", n=" << fmt(n) << ") violation search (seed " << seed
                  << ", " << restarts << " restarts)\n";
        for (const auto& o : outcomes) {
            if (o.found)
                std::cout << o.vertex << "  best slack " << fmt(o.slack) << "  ("
                          << o.evaluations << " evaluations)\n";
            else
                std::cout << o.vertex << "  no applicable point found\n";
        }
        std::cout << (violation ? "violation found\n" : "no violation found\n");
    }
    return violation ? kExitViolation : kExitOk;
}

// --------------------------------------------------------------- repro ----

int cmd_repro(const std::string& format) {
    gammacalc::ReproReport rep = gammacalc::repro_report();

    if (format == "json") {
        json out;
        out["command"] = "repro";
        out["n"] = rep.n;
        out["n_min_x"] = rep.n_min_x;
        out["k_max_x"] = rep.k_max_x;
        out["cd_extremal_slack"] = rep.cd_extremal_slack;
        out["gap_at_y01"] = rep.gap_at_y01;
        out["closed_form_max_mismatch"] = rep.closed_form_max_mismatch;
        out["q_max_mismatch"] = rep.q_max_mismatch;
        out["q_max_on_unit_interval"] = rep.q_max_on_unit_interval;
        json h;
        h["h_at_one"] = rep.h.h_at_one;
        h["h_prime_at_one"] = rep.h.h_prime_at_one;
        h["min_h"] = rep.h.min_h;
        h["min_h_second"] = rep.h.min_h_second;
        h["certified"] = rep.h.certified;
        out["h_analysis"] = h;
        out["rows"] = json::array();
        for (const auto& r : rep.table) {
            json jr;
            jr["y"] = r.y;
            jr["lhs"] = r.lhs;
            jr["rhs"] = r.rhs;
            jr["gap"] = r.gap;
            jr["applicable"] = r.applicable;
            out["rows"].push_back(jr);
        }
        out["checks_failed"] = rep.failed_checks;
        out["conclusion"] = rep.conclusion;
        print_json(out);
    } else if (format == "csv") {
        std::cout << "y,lhs,rhs,gap,applicable\n";
        for (const auto& r : rep.table)
            std::cout << fmt(r.y) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.gap)
                      << ',' << (r.applicable ? "true" : "false") << '\n';
    } else {
        std::cout << "Path-graph counterexample reproduction (n = " << fmt(rep.n) << ")\n\n";
        std::cout << "n_min at x: " << fmt(rep.n_min_x) << "    k_max(n=2) at x: "
                  << fmt(rep.k_max_x) << "\n";
        std::cout << "CD slack at extremal f=(1,2,3): " << fmt(rep.cd_extremal_slack) << "\n\n";
        std::cout << "family f = (1, y, y^2) at x:\n";
        std::cout << "y  lhs  rhs  gap  applicable\n";
        for (const auto& r : rep.table)
            std::cout << fmt(r.y) << "  " << fmt(r.lhs) << "  " << fmt(r.rhs) << "  " << fmt(r.gap)
                      << "  " << (r.applicable ? "yes" : "no") << '\n';
        std::cout << "\nh(1) = " << fmt(rep.h.h_at_one) << ", h'(1) = " << fmt(rep.h.h_prime_at_one)
                  << ", min h'' = " << fmt(rep.h.min_h_second) << ", min h = " << fmt(rep.h.min_h)
                  << (rep.h.certified ? "  [y > 1 branch certified]" : "  [y > 1 branch FAILED]")
                  << "\n";
        std::cout << "Q(y) factorization max mismatch: " << fmt(rep.q_max_mismatch) << "\n";
        std::cout << "closed-form LHS max mismatch: " << fmt(rep.closed_form_max_mismatch)
                  << "\n\n";
        if (!rep.passed()) {
            std::cout << "FAILED checks:\n";
            for (const auto& c : rep.failed_checks) std::cout << "  - " << c << '\n';
        }
        std::cout << "conclusion: " << rep.conclusion << '\n';
    }
    return rep.passed() ? kExitOk : kExitReproFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Gamma-calculus and Bakry-Emery curvature on finite graphs"};
    app.require_subcommand(1);

    std::string graph_path, func_path, vertex, out_path;
    std::string format = "text";
    std::string n_text = "2";
    double K = 0.0;
    std::uint64_t seed = 0;
    int restarts = 64;
    int iterations = 500;
    double tol = 1e-6;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
    };

    CLI::App* ops = app.add_subcommand("ops", "per-vertex Delta f, Gamma(f), Gamma_2(f)");
    ops->add_option("--graph", graph_path, "edge-list file")->required();
    ops->add_option("--func", func_path, "vertex-value file")->required();
    ops->add_option("--vertex", vertex, "restrict to one vertex");
    add_format(ops);

    CLI::App* cd = app.add_subcommand("cd", "exact CD curvature table (n_min, k_max)");
    cd->add_option("--graph", graph_path, "edge-list file")->required();
    cd->add_option("--n", n_text, "dimension parameter (positive or 'inf')");
    add_format(cd);

    CLI::App* cde = app.add_subcommand("cde-prime", "CDE' slack per vertex");
    cde->add_option("--graph", graph_path, "edge-list file")->required();
    cde->add_option("--func", func_path, "vertex-value file (positive)")->required();
    cde->add_option("--K", K, "curvature parameter");
    cde->add_option("--n", n_text, "dimension parameter");
    cde->add_option("--vertex", vertex, "restrict to one vertex");
    add_format(cde);

    CLI::App* search = app.add_subcommand("search", "multistart CDE' violation search");
    search->add_option("--graph", graph_path, "edge-list file")->required();
    search->add_option("--vertex", vertex, "restrict to one vertex");
    search->add_option("--K", K, "curvature parameter");
    search->add_option("--n", n_text, "dimension parameter");
    search->add_option("--seed", seed, "RNG seed");
    search->add_option("--restarts", restarts, "number of restarts")->check(CLI::PositiveNumber);
    search->add_option("--iters", iterations, "refinement iterations per restart")
        ->check(CLI::PositiveNumber);
    search->add_option("--tol", tol, "violation tolerance on the slack");
    search->add_option("--out", out_path, "write the best witness as a function file");
    add_format(search);

    CLI::App* repro = app.add_subcommand("repro", "reproduce the path-graph counterexample");
    add_format(repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (app.got_subcommand(ops)) return cmd_ops(graph_path, func_path, vertex, format);
        if (app.got_subcommand(cd)) return cmd_cd(graph_path, n_text, format);
        if (app.got_subcommand(cde))
            return cmd_cde_prime(graph_path, func_path, K, n_text, vertex, format);
        if (app.got_subcommand(search))
            return cmd_search(graph_path, vertex, K, n_text, seed, restarts, iterations, tol,
                              out_path, format);
        if (app.got_subcommand(repro)) return cmd_repro(format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
