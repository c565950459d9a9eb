// pibell: batch front end for the permutation-invariant Bell toolkit.
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using pibell::cli::json;
using pibell::cli::Report;

enum Exit { ok = 0, domain = 1, budget = 2, internal = 3 };

std::vector<int> parse_range(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw pibell::InputError("--n-range: '" + text + "' is not of the form a:b[:step]");
        }
    }
    if (parts.size() < 2 || parts.size() > 3) throw pibell::InputError("--n-range: expected a:b or a:b:step");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step < 1 || parts[0] < 1 || parts[1] < parts[0]) throw pibell::InputError("--n-range: need 1 <= a <= b, step >= 1");
    std::vector<int> ns;
    for (int n = parts[0]; n <= parts[1]; n += step) ns.push_back(n);
    return ns;
}

pibell::polytope::Coeffs parse_coeffs(const std::string& text) {
    pibell::polytope::Coeffs a{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= 5) throw pibell::InputError("--coeffs: expected 5 integers");
        try {
            std::size_t used = 0;
            a[k++] = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw pibell::InputError("--coeffs: '" + item + "' is not an integer");
        }
    }
    if (k != 5) throw pibell::InputError("--coeffs: expected 5 integers");
    return a;
}

json cell_json(const std::string& s) {
    if (s == "nan") return nullptr;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end && *end == '\0' && std::isfinite(v)) return v;
    return s;
}

std::string render(const Report& r, const std::string& format) {
    if (format == "csv") return r.table.str();
    json rows = json::array();
    for (const auto& row : r.table.rows()) {
        json jr = json::array();
        for (const auto& c : row) jr.push_back(cell_json(c));
        rows.push_back(jr);
    }
    json doc = r.summary;
    doc["columns"] = r.table.header();
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

void emit(const Report& r, const std::string& format, const std::string& out) {
    const std::string body = render(r, format);
    const std::string summary = r.summary.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << body;
        std::cerr << summary;
        return;
    }
    pibell::io::write_atomic(out, body);
    pibell::io::write_atomic(out + ".summary.json", summary);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permutation-invariant three-outcome Bell inequalities for qutrit ensembles"};
    app.require_subcommand(1);

    std::string out, format = "csv";
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", out, "Output file (stdout when omitted); a .summary.json is written next to it");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    int n = 5;
    std::string n_range, coeffs = "1,1,0,0,-2", settings = "qutrit", surface = "pseudospin";
    long long shift = 0;
    std::uint64_t strategy_budget = pibell::polytope::kDefaultBudget;
    long max_dim = 60000;
    std::optional<double> theta;
    int theta_grid = 21, d = 2, restarts = 50, t_steps = 400, grid = 21;
    std::uint64_t seed = 1;
    double c = -1.0, g = 0.2, t_max = 10.0, beta = -0.25;

    auto* poly = app.add_subcommand("polytope", "Classical bound, PSD certificate and facet check");
    poly->add_option("--n", n, "Number of parties")->required();
    poly->add_option("--coeffs", coeffs, "Five integer coefficients a0,a1,a2,a3,a4");
    poly->add_option("--shift", shift, "Classical shift");
    poly->add_option("--budget", strategy_budget, "Maximum number of strategies to enumerate");
    common(poly);

    auto* bounds = app.add_subcommand("bounds-vs-n", "Minimum eigenvalue of the Bell operator against n");
    bounds->add_option("--n", n, "Single party count");
    bounds->add_option("--n-range", n_range, "Range a:b[:step]");
    bounds->add_option("--settings", settings, "qubit or qutrit");
    bounds->add_option("--max-dim", max_dim, "Largest symmetric-subspace dimension allowed");
    common(bounds);

    auto* ground = app.add_subcommand("ground-state", "Dicke overlaps of the Bell-operator ground state");
    ground->add_option("--n", n, "Number of parties")->required();
    ground->add_option("--theta", theta, "Use the spin-plane settings at this angle instead of the qutrit optimum");
    ground->add_option("--max-dim", max_dim, "Largest symmetric-subspace dimension allowed");
    common(ground);

    auto* becc = app.add_subcommand("bec", "Spin-mixing trajectory with witness data");
    becc->add_option("--n", n, "Number of atoms")->capture_default_str();
    becc->add_option("--c", c, "Interaction strength")->capture_default_str();
    becc->add_option("--g", g, "Quadratic Zeeman shift")->capture_default_str();
    becc->add_option("--t-max", t_max, "Final time")->capture_default_str();
    becc->add_option("--t-steps", t_steps, "Number of time points")->capture_default_str();
    common(becc);

    auto* dimb = app.add_subcommand("dim-bound", "Variational single-particle bound in dimension d");
    dimb->add_option("--d", d, "Local dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    dimb->add_option("--restarts", restarts, "Simplex runs")->check(CLI::PositiveNumber);
    dimb->add_option("--seed", seed, "Random seed");
    common(dimb);

    auto* scan = app.add_subcommand("type1-scan", "Spin-plane witness data over the measurement angle");
    scan->add_option("--n", n, "Number of parties")->required();
    scan->add_option("--theta-grid", theta_grid, "Number of angles on [0, pi/2]");
    scan->add_option("--theta", theta, "Single angle instead of a grid");
    scan->add_option("--beta", beta, "Bound tested by the witness")->capture_default_str();
    scan->add_option("--max-dim", max_dim, "Largest symmetric-subspace dimension allowed");
    common(scan);

    auto* wgrid = app.add_subcommand("witness-grid", "Witness values on a grid of (x, y, z)");
    wgrid->add_option("--surface", surface, "pseudospin, wineland or type1");
    wgrid->add_option("--grid", grid, "Points per axis");
    wgrid->add_option("--beta", beta, "Bound for the type1 surface");
    common(wgrid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Exit::ok : Exit::domain;
    }

    try {
        namespace cmd = pibell::cli;
        Report r;
        if (app.got_subcommand(poly)) {
            r = cmd::cmd_polytope(n, parse_coeffs(coeffs), shift, strategy_budget);
        } else if (app.got_subcommand(bounds)) {
            const std::vector<int> ns = n_range.empty() ? std::vector<int>{n} : parse_range(n_range);
            r = cmd::cmd_bounds_vs_n(ns, cmd::parse_settings(settings), max_dim);
        } else if (app.got_subcommand(ground)) {
            r = cmd::cmd_ground_state(n, theta, max_dim);
        } else if (app.got_subcommand(becc)) {
            pibell::bec::SpinMixParams p{n, c, g, pibell::bec::uniform_times(t_max, t_steps)};
            r = cmd::cmd_bec(p);
        } else if (app.got_subcommand(dimb)) {
            r = cmd::cmd_dim_bound(d, restarts, seed);
        } else if (app.got_subcommand(scan)) {
            const std::vector<double> th = theta ? std::vector<double>{*theta} : cmd::theta_grid(theta_grid);
            r = cmd::cmd_type1_scan(n, th, beta, max_dim);
        } else if (app.got_subcommand(wgrid)) {
            r = cmd::cmd_witness_grid(cmd::parse_surface(surface), grid, beta);
        }
        emit(r, format, out);
        return Exit::ok;
    } catch (const pibell::ResourceError& e) {
        std::cerr << "budget exceeded: " << e.what() << " (requires " << e.required() << ")\n";
        return Exit::budget;
    } catch (const pibell::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return Exit::domain;
    } catch (const pibell::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return Exit::domain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Exit::internal;
    }
}
