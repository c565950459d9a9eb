#ifndef PIBELL_TOOLS_COMMANDS_HPP
#define PIBELL_TOOLS_COMMANDS_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <pibell/pibell.hpp>

namespace pibell::cli {

using json = nlohmann::json;

// Tabular data plus the key scalars of a run.
struct Report {
    io::CsvTable table{{}};
    json summary = json::object();
};

inline json complex_matrix_json(const OpX& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

inline json lds_json(const polytope::LdsCounts& s) {
    json j = json::array();
    for (auto v : s.c) j.push_back(v);
    return j;
}

inline Report cmd_polytope(int n, const polytope::Coeffs& alpha, polytope::i64 shift, std::uint64_t budget) {
    using namespace polytope;
    const ClassicalMinimum cm = classical_minimum(n, alpha, shift, budget);
    const PsdCertificate cert = verify_psd_certificate();
    const FacetReport facet = facet_check(n, alpha, shift, budget);

    Report r;
    r.table = io::CsvTable({"c_00", "c_01", "c_02", "c_10", "c_11", "c_12", "c_20", "c_21", "c_22", "p0", "p00",
                            "p10", "p11", "p01", "bell_value"});
    for (const auto& s : facet.saturating) {
        const PiPoint q = lds_to_pipoint(s);
        r.table.add(s.c[0], s.c[1], s.c[2], s.c[3], s.c[4], s.c[5], s.c[6], s.c[7], s.c[8], q.p0, q.p00, q.p10,
                    q.p11, q.p01, bell_value<i64>(q, alpha, shift));
    }
    r.summary = {{"command", "polytope"},
                 {"n", n},
                 {"coeffs", alpha},
                 {"shift", shift},
                 {"strategies", cm.strategies},
                 {"classical_minimum", cm.value},
                 {"argmin", lds_json(cm.argmin)},
                 {"psd", cert.psd},
                 {"i_lds_min_eigenvalue", cert.min_eigenvalue},
                 {"certificate_identity_holds", cert.identity_holds},
                 {"saturating_strategies", facet.saturating.size()},
                 {"saturating_points", facet.saturating_points.size()},
                 {"affine_rank", facet.affine_rank},
                 {"tight", facet.tight()}};
    return r;
}

enum class Settings { qubit, qutrit };

inline Settings parse_settings(const std::string& s) {
    if (s == "qubit") return Settings::qubit;
    if (s == "qutrit") return Settings::qutrit;
    throw InputError("settings must be 'qubit' or 'qutrit', got '" + s + "'");
}

inline void check_dimension(int n, Eigen::Index max_dim) {
    const Eigen::Index d = sym::DickeBasis::dimension(n);
    if (d > max_dim)
        throw ResourceError("n=" + std::to_string(n) + " gives dimension " + std::to_string(d) + " above the limit " +
                                std::to_string(max_dim),
                            static_cast<std::uint64_t>(d));
}

inline Report cmd_bounds_vs_n(const std::vector<int>& ns, Settings settings, Eigen::Index max_dim) {
    for (int n : ns) check_dimension(n, max_dim);
    const int d = settings == Settings::qubit ? 2 : 3;
    const auto povms = d == 2 ? su3::qubit_optimal_settings() : su3::qutrit_optimal_settings();
    std::vector<double> lam(ns.size());
    parallel_for(ns.size(), [&](std::size_t k) {
        lam[k] = sym::min_eigenvalue(sym::bell_operator_from_povms(povms, sym::DickeBasis::make(ns[k])));
    });
    Report r;
    r.table = io::CsvTable({"n", "lambda_min", "hp_bound", "qubit_line"});
    json crossing = nullptr;
    json gaps = json::array();
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const double hp = dim::hp_bound(d, ns[k]);
        const double line = -ns[k] / 4.0;
        r.table.add(ns[k], lam[k], hp, line);
        if (crossing.is_null() && lam[k] < line) crossing = ns[k];
        gaps.push_back(std::abs(lam[k] - hp) / ns[k]);
    }
    r.summary = {{"command", "bounds-vs-n"},
                 {"settings", d == 2 ? "qubit" : "qutrit"},
                 {"first_n_below_qubit_line", crossing},
                 {"relative_hp_gap", gaps}};
    return r;
}

inline Report cmd_ground_state(int n, std::optional<double> theta, Eigen::Index max_dim) {
    check_dimension(n, max_dim);
    const auto basis = sym::DickeBasis::make(n);
    const auto povms = theta ? su3::type1_settings(*theta) : su3::qutrit_optimal_settings();
    const sym::EigenPair e = sym::min_eigenpair(sym::bell_operator_from_povms(povms, basis));
    const sym::AnsatzFit fit = sym::fit_gaussian_ansatz(e.state);
    Report r;
    r.table = io::CsvTable({"mu0", "mu1", "mu2", "re_amp", "im_amp", "magnitude"});
    for (Eigen::Index i = 0; i < basis->dim(); ++i) {
        const auto& mu = basis->state(i);
        const cplx a = e.state.amplitudes()(i);
        r.table.add(mu.mu0, mu.mu1, mu.mu2, a.real(), a.imag(), std::abs(a));
    }
    r.summary = {{"command", "ground-state"},
                 {"n", n},
                 {"settings", theta ? "type1" : "qutrit"},
                 {"theta", theta ? json(*theta) : json(nullptr)},
                 {"lambda_min", e.value},
                 {"lambda_min_over_n", e.value / n},
                 {"residual", e.residual},
                 {"basis_order", "lexicographic descending in (mu0, mu1)"},
                 {"ansatz_width", fit.s},
                 {"ansatz_fidelity", fit.fidelity}};
    return r;
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline Report cmd_bec(const bec::SpinMixParams& p) {
    const auto traj = bec::run_trajectory(p);
    Report r;
    r.table = io::CsvTable({"t", "x", "y", "z", "r", "lambda_min_C", "xi_inv2", "theta_opt", "bell_value",
                            "wineland_value"});
    std::vector<double> t, bell, wine;
    double max_xi = 0.0;
    for (const auto& rec : traj) {
        r.table.add(rec.t, rec.x, rec.y, rec.z, rec.r, rec.lambda_min_c, rec.xi_inv2, rec.theta_opt, rec.bell_value,
                    rec.wineland_value);
        t.push_back(rec.t);
        bell.push_back(rec.bell_value);
        wine.push_back(rec.wineland_value);
        max_xi = std::max(max_xi, rec.xi_inv2);
    }
    r.summary = {{"command", "bec"},
                 {"n", p.n},
                 {"c", p.c},
                 {"g", p.g},
                 {"points", traj.size()},
                 {"first_wineland_violation", optional_json(bec::first_violation_time(t, wine))},
                 {"first_bell_violation", optional_json(bec::first_violation_time(t, bell))},
                 {"max_xi_inv2", max_xi},
                 {"min_bell_value", bell.empty() ? json(nullptr) : json(*std::min_element(bell.begin(), bell.end()))}};
    return r;
}

inline Report cmd_dim_bound(int d, int restarts, std::uint64_t seed) {
    const dim::VariationalResult v = dim::variational_bound(d, restarts, seed);
    json povms = json::array();
    for (const auto& p : v.povms) {
        json m = json::array();
        for (const auto& e : p.elements) m.push_back(complex_matrix_json(e));
        povms.push_back(m);
    }
    json history = json::array();
    for (const auto& [k, val] : v.best_history) history.push_back({k, val});
    Report r;
    r.table = io::CsvTable({"restart", "best_value"});
    for (const auto& [k, val] : v.best_history) r.table.add(k, val);
    r.summary = {{"command", "dim-bound"},
                 {"d", d},
                 {"bound", v.bound},
                 {"local_beta", dim::local_beta<Eigen::Dynamic>(v.povms)},
                 {"restarts", v.restarts_used},
                 {"chains", v.chains},
                 {"seed", seed},
                 {"generator_basis", v.generator_basis},
                 {"cleanup_delta", v.cleanup_delta},
                 {"evaluations", v.evaluations},
                 {"povm_elements", povms},
                 {"best_history", history}};
    return r;
}

inline std::vector<double> theta_grid(int k) {
    if (k < 2) throw InputError("theta grid needs at least 2 points");
    std::vector<double> th(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) th[static_cast<std::size_t>(i)] = (std::numbers::pi / 2.0) * i / (k - 1);
    return th;
}

inline Report cmd_type1_scan(int n, const std::vector<double>& thetas, double beta, Eigen::Index max_dim) {
    check_dimension(n, max_dim);
    const auto basis = sym::DickeBasis::make(n);
    const sym::Type1Observables obs(basis);
    struct Row {
        double lam = 0.0;
        WitnessData d;
    };
    std::vector<Row> rows(thetas.size());
    parallel_for(thetas.size(), [&](std::size_t k) {
        const auto e = sym::min_eigenpair(sym::bell_operator_from_povms(su3::type1_settings(thetas[k]), basis));
        rows[k] = {e.value / n, obs.extract(e.state)};
    });
    Report r;
    r.table = io::CsvTable({"theta", "x", "y", "z", "witness", "witness_beta0", "lambda_min_over_n", "bell_from_data",
                            "sin2_opt", "valid"});
    int violations = 0;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const WitnessData& d = rows[k].d;
        double w = std::nan(""), w0 = std::nan(""), s2 = std::nan("");
        bool valid = true;
        try {
            w = witness::type1_witness(d, beta);
            w0 = witness::type1_witness(d, 0.0);
            s2 = witness::type1_optimal_sin2(d);
            valid = s2 >= 0.0 && s2 <= 1.0;
        } catch (const DomainError&) {
            valid = false;
        }
        if (valid && w < 0.0) ++violations;
        r.table.add(thetas[k], d.x, d.y, d.z, w, w0, rows[k].lam, witness::type1_bell_value(thetas[k], d), s2,
                    valid ? 1 : 0);
    }
    r.summary = {{"command", "type1-scan"}, {"n", n}, {"beta", beta}, {"rows", thetas.size()},
                 {"violations", violations}};
    return r;
}

enum class Surface { pseudospin, wineland, type1 };

inline Surface parse_surface(const std::string& s) {
    if (s == "pseudospin") return Surface::pseudospin;
    if (s == "wineland") return Surface::wineland;
    if (s == "type1") return Surface::type1;
    throw InputError("surface must be pseudospin, wineland or type1, got '" + s + "'");
}

// Witness values on a uniform grid of (x, y, z) in (0, 1]^3; points outside
// a formula's domain are skipped.
inline Report cmd_witness_grid(Surface kind, int k, double beta) {
    if (k < 2) throw InputError("witness grid needs at least 2 points per axis");
    Report r;
    r.table = io::CsvTable({"x", "y", "z", "witness"});
    std::size_t skipped = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 1; l <= k; ++l) {
                const double x = static_cast<double>(i) / (k - 1), y = static_cast<double>(j) / (k - 1),
                             z = static_cast<double>(l) / k;
                try {
                    double w = 0.0;
                    if (kind == Surface::pseudospin) w = witness::pseudospin_witness({x, y, z, WitnessContext::pseudospin});
                    else if (kind == Surface::wineland) w = witness::wineland_witness({x, y, z, WitnessContext::pseudospin});
                    else w = witness::type1_witness({x, y, z, WitnessContext::type1}, beta);
                    r.table.add(x, y, z, w);
                } catch (const DomainError&) {
                    ++skipped;
                }
            }
    r.summary = {{"command", "witness-grid"}, {"points", r.table.size()}, {"skipped", skipped}};
    return r;
}

}  // namespace pibell::cli

#endif
