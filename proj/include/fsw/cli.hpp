#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "fsw/model.hpp"
#include "fsw/moments.hpp"
#include "fsw/momentum.hpp"
#include "fsw/position.hpp"
#include "fsw/spectrum.hpp"
#include "fsw/verify.hpp"

namespace fsw::cli {

using ordered_json = nlohmann::ordered_json;

enum class Format { Csv, Json };

struct RunConfig {
    double v0 = 10.0;
    double a = 2.0;
    double mass = 0.5;  // 2m = 1
    double hbar = 1.0;
    int state_index = -1;  // -1: all states
    double pmax = 100.0;
    int samples = 2001;
    double tol = 1e-9;
    Format format = Format::Csv;
    std::string output;  // empty: stdout

    WellSpec well() const { return WellSpec{v0, a, UnitSystem{mass, hbar}}; }
};

inline void validate(const RunConfig& c) {
    if (!(c.v0 > 0.0)) throw std::invalid_argument("config: v0 must be positive");
    if (!(c.a > 0.0)) throw std::invalid_argument("config: a must be positive");
    if (!(c.mass > 0.0)) throw std::invalid_argument("config: mass must be positive");
    if (!(c.hbar > 0.0)) throw std::invalid_argument("config: hbar must be positive");
    if (!(c.pmax > 0.0)) throw std::invalid_argument("config: pmax must be positive");
    if (c.samples < 3) throw std::invalid_argument("config: samples must be at least 3");
    if (!(c.tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
}

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_table(const std::vector<std::string>& columns,
                             const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

inline ordered_json well_json(const RunConfig& c) {
    return ordered_json{{"v0", c.v0}, {"a", c.a}, {"mass", c.mass}, {"hbar", c.hbar}};
}

inline std::string json_table(const RunConfig& c, const std::string& kind,
                              const std::vector<std::string>& columns,
                              const std::vector<std::vector<double>>& rows) {
    ordered_json j;
    j["kind"] = kind;
    j["well"] = well_json(c);
    j["columns"] = columns;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return g;
}

inline std::string render(const RunConfig& c, const std::string& kind,
                          const std::vector<std::string>& columns,
                          const std::vector<std::vector<double>>& rows) {
    if (c.format == Format::Json) return json_table(c, kind, columns, rows);
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> r;
        r.reserve(row.size());
        for (double v : row) r.push_back(fmt(v));
        cells.push_back(std::move(r));
    }
    return csv_table(columns, cells);
}

}  // namespace detail

/// One row per bound state: n, parity (0 even / 1 odd), beta, E, alpha, d, A.
inline std::string cmd_spectrum(const RunConfig& c) {
    validate(c);
    const auto states = solve_all(c.well());
    std::vector<std::vector<double>> rows;
    for (const auto& s : states)
        rows.push_back({static_cast<double>(s.n), s.parity == Parity::Even ? 0.0 : 1.0,
                        s.beta, s.energy, s.alpha, s.d, s.norm});
    return detail::render(c, "spectrum", {"n", "parity", "beta", "energy", "alpha", "d", "norm"},
                          rows);
}

/// Figure datasets:
///   fig1/fig2: (p, I_analytic, I_oracle) for state 0/1 on a symmetric p grid
///   fig3/fig4: (p, p4I) for state 0/1
///   fig5/fig6: (v0, n, parity, closed_form, momentum_integral, tail_estimate,
///              total) for states 0 and 1 over a log-spaced v0 sweep in [2, 50],
///              s = 2 for fig5 and s = 4 for fig6
inline std::string cmd_figure(const RunConfig& c, const std::string& which, int sweep_points = 40) {
    validate(c);
    if (sweep_points < 2) throw std::invalid_argument("figure: sweep needs at least 2 points");

    if (which == "fig1" || which == "fig2") {
        const int index = which == "fig1" ? 0 : 1;
        const auto states = solve_all(c.well());
        if (index >= static_cast<int>(states.size()))
            throw std::invalid_argument("figure: requested state does not exist for this well");
        const auto& s = states[index];
        std::vector<std::vector<double>> rows;
        for (double p : detail::linspace(-c.pmax, c.pmax, c.samples)) {
            const auto oracle = fourier_oracle(s, p, std::min(c.tol, 1e-10));
            rows.push_back({p, intensity(s, p), std::norm(oracle)});
        }
        return detail::render(c, which, {"p", "I_analytic", "I_oracle"}, rows);
    }

    if (which == "fig3" || which == "fig4") {
        const int index = which == "fig3" ? 0 : 1;
        const auto states = solve_all(c.well());
        if (index >= static_cast<int>(states.size()))
            throw std::invalid_argument("figure: requested state does not exist for this well");
        const auto& s = states[index];
        std::vector<std::vector<double>> rows;
        for (double p : detail::linspace(-c.pmax, c.pmax, c.samples)) {
            const double p2 = p * p;
            rows.push_back({p, p2 * p2 * intensity(s, p)});
        }
        return detail::render(c, which, {"p", "p4I"}, rows);
    }

    if (which == "fig5" || which == "fig6") {
        const int order = which == "fig5" ? 2 : 4;
        std::vector<std::vector<double>> rows;
        for (double v0 : detail::logspace(2.0, 50.0, sweep_points)) {
            RunConfig cw = c;
            cw.v0 = v0;
            const auto states = solve_all(cw.well());
            for (const auto& s : states) {
                if (s.n > 1) break;
                const double closed = order == 2 ? p2_expectation(s) : p4_expectation(s);
                MomentRequest req;
                req.s = order;
                req.P = c.pmax;
                req.tol = c.tol;
                const auto m = momentum_moment(s, req);
                rows.push_back({v0, static_cast<double>(s.n),
                                s.parity == Parity::Even ? 0.0 : 1.0, closed,
                                m.quadrature.value, m.tail_estimate, m.value()});
            }
        }
        return detail::render(c, which,
                              {"v0", "n", "parity", "closed_form", "momentum_integral",
                               "tail_estimate", "total"},
                              rows);
    }

    throw std::invalid_argument("figure: unknown figure id '" + which +
                                "' (expected fig1..fig6)");
}

/// Closed-form moment next to the truncated momentum integral for each bound
/// state (or just --state when given).
inline std::string cmd_moments(const RunConfig& c, int order) {
    validate(c);
    if (order != 2 && order != 4) throw std::invalid_argument("moments: --s must be 2 or 4");
    const auto states = solve_all(c.well());
    if (c.state_index >= static_cast<int>(states.size()))
        throw std::invalid_argument("moments: requested state does not exist for this well");
    std::vector<std::vector<double>> rows;
    for (const auto& s : states) {
        if (c.state_index >= 0 && s.n != c.state_index) continue;
        const double closed = order == 2 ? p2_expectation(s) : p4_expectation(s);
        MomentRequest req;
        req.s = order;
        req.P = c.pmax;
        req.tol = c.tol;
        const auto m = momentum_moment(s, req);
        if (!m.quadrature.converged)
            throw convergence_error("moments: momentum integral did not converge at the requested tol",
                                    m.quadrature.value);
        rows.push_back({static_cast<double>(s.n), s.parity == Parity::Even ? 0.0 : 1.0,
                        static_cast<double>(order), closed, m.quadrature.value, m.tail_estimate,
                        m.value(), (m.value() - closed) / closed});
    }
    return detail::render(c, "moments",
                          {"n", "parity", "s", "closed_form", "momentum_integral", "tail_estimate",
                           "total", "relative_difference"},
                          rows);
}

struct VerifyOutcome {
    std::string text;
    bool all_passed = false;
    std::vector<std::string> failing;
};

/// Runs the whole verification suite for the configured well; pmax and tol
/// come from the config, everything else from the suite defaults.
inline VerifyOutcome cmd_verify(const RunConfig& c) {
    validate(c);
    VerifyOptions opt;
    opt.pmax = c.pmax;
    opt.quad_tol = c.tol;
    const auto report = full_report(c.well(), opt);

    VerifyOutcome out;
    out.all_passed = report.all_passed();
    for (const auto& e : report.checks)
        if (!e.passed) out.failing.push_back(e.name);

    if (c.format == Format::Json) {
        ordered_json j;
        j["well"] = detail::well_json(c);
        j["checks"] = ordered_json::array();
        for (const auto& e : report.checks)
            j["checks"].push_back(ordered_json{{"name", e.name},
                                               {"value", e.value},
                                               {"tolerance", e.tolerance},
                                               {"passed", e.passed}});
        j["all_passed"] = out.all_passed;
        out.text = j.dump(2) + "\n";
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : report.checks)
            rows.push_back({e.name, detail::fmt(e.value), detail::fmt(e.tolerance),
                            e.passed ? "true" : "false"});
        out.text = detail::csv_table({"name", "value", "tolerance", "passed"}, rows);
    }
    return out;
}

}  // namespace fsw::cli
