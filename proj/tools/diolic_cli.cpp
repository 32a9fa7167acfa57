// diolic: check problem files, compute brackets and cohomology.
//
//   diolic check problems/so3_poisson.json
//   diolic bracket --kind symbol "k1" "x1*k1"
//   diolic cohomology --der 1 1 3
//
// Reports go to stdout as one JSON document (or text with --pretty). The exit
// code depends only on the verdict.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "diolic/error.hpp"
#include "diolic/problem.hpp"

using diolic::Json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw diolic::DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// An operand is JSON unless it is a bare symbol string.
Json operand(const std::string& kind, const std::string& text) {
    if (kind == "symbol") return Json(text);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw diolic::ParseError("operand '" + text + "': " + e.what());
    }
}

void print_pretty(const Json& r, std::ostream& out) {
    out << "verdict: " << r.value("verdict", "?") << "\n";
    if (r.contains("error")) {
        out << "error (" << r["error"].value("type", "") << "): " << r["error"].value("message", "") << "\n";
        return;
    }
    if (r.contains("value")) out << "value: " << (r["value"].is_string() ? r["value"].get<std::string>() : r["value"].dump()) << "\n";
    if (r.contains("display")) out << "display: " << r["display"].get<std::string>() << "\n";
    if (r.contains("betti")) {
        out << "betti: " << r["betti"].dump() << "\n";
        out << "cochain dims: " << r["dims"].dump() << "\n";
        out << "euler: " << r["euler"]["from_dims"] << " (dims) / " << r["euler"]["from_betti"] << " (betti)\n";
    }
    for (const auto& x : r.value("residuals", Json::array()))
        out << "  residual " << x["name"].get<std::string>() << " = " << x["value"].get<std::string>() << "\n";
    for (const auto& x : r.value("notes", Json::array()))
        out << "  note " << x["name"].get<std::string>() << " = " << x["value"].get<std::string>() << "\n";
    if (r.contains("timing_ms")) out << "time: " << r["timing_ms"] << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus on diolic algebras A + P, A = Q[x1..xn], P = A^m"};
    app.require_subcommand(1);

    bool pretty = false, timing = false;
    std::string max_dim;
    app.add_flag("--pretty", pretty, "Human-readable report instead of JSON");
    app.add_flag("--timing", timing, "Add wall-clock milliseconds to the report");
    app.add_option("--max-dim", max_dim, "Caps, e.g. n=4,m=3,order=4,D=6,cochain=20000");

    auto* check = app.add_subcommand("check", "Run the checker for a problem file");
    std::string check_path;
    check->add_option("file", check_path, "Problem file (JSON)")->required();

    auto* bracket = app.add_subcommand("bracket", "Bracket of two operators or symbols");
    std::string kind, left, right;
    std::size_t nvars = 0;
    bracket->add_option("--kind", kind, "symbol, der, der0, der0-der1, der1-der1, diff, diolic-symbol, schouten")
        ->required();
    bracket->add_option("-n,--nvars", nvars, "Number of variables (inferred when omitted)");
    bracket->add_option("left", left)->required();
    bracket->add_option("right", right)->required();

    auto* coh = app.add_subcommand("cohomology", "Chevalley-Eilenberg or truncated Der-complex cohomology");
    std::string ce_path;
    std::vector<std::size_t> der_args;
    auto* ce_opt = coh->add_option("--ce", ce_path, "Problem file of kind ce");
    auto* der_opt = coh->add_option("--der", der_args, "n m D")->expected(3);
    ce_opt->excludes(der_opt);
    coh->require_option(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json r = diolic::error_report(diolic::ParseError(e.what()));
        std::cout << (pretty ? r.dump(2) : r.dump()) << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Json report;
    try {
        diolic::Limits lim = diolic::parse_limits(max_dim);
        if (*check) {
            report = diolic::check_problem(diolic::parse_problem(read_file(check_path)), lim);
        } else if (*bracket) {
            std::optional<std::size_t> n;
            if (bracket->count("--nvars")) n = nvars;
            report = diolic::bracket_report(kind, operand(kind, left), operand(kind, right), n, lim);
        } else if (*ce_opt) {
            report = diolic::ce_report(diolic::parse_problem(read_file(ce_path)), lim);
        } else {
            report = diolic::der_cohomology_report(der_args[0], der_args[1], der_args[2], lim);
        }
    } catch (const std::exception& e) {
        report = diolic::error_report(e);
    }
    if (timing) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report["timing_ms"] = ms;
    }
    if (pretty) print_pretty(report, std::cout);
    else std::cout << report.dump() << "\n";
    return diolic::exit_code(report);
}
