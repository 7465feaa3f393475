#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fsw/model.hpp"
#include "fsw/moments.hpp"
#include "fsw/momentum.hpp"
#include "fsw/numerics.hpp"
#include "fsw/position.hpp"
#include "fsw/spectrum.hpp"

namespace fsw {

struct CheckEntry {
    std::string name;
    double value;
    double tolerance;
    bool passed;
};

inline CheckEntry make_entry(std::string name, double value, double tolerance) {
    const bool passed = std::abs(value) <= tolerance;
    return {std::move(name), value, tolerance, passed};
}

struct VerificationReport {
    WellSpec well;
    std::vector<CheckEntry> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

inline std::string state_tag(const BoundState& s) {
    return "state" + std::to_string(s.n);
}

/// Transform of the shifted potential W(x) = V(x) - v0, which is -v0 on
/// |x| < a/2 and zero outside (the raw well is not integrable, the shift
/// is exact):  U_W(q) = -v0 sqrt(2/(pi hbar)) hbar sin(q a / 2 hbar) / q,
/// with value -v0 a / sqrt(2 pi hbar) at q = 0.
inline double shifted_potential_ft(const WellSpec& w, double q) {
    const double hbar = w.units.hbar;
    const double x = q * w.a / (2.0 * hbar);
    double sinc;
    if (std::abs(x) < 1e-4)
        sinc = (w.a / 2.0) * (1.0 - x * x / 6.0 * (1.0 - x * x / 20.0));
    else
        sinc = hbar * std::sin(x) / q;
    return -w.v0 * std::sqrt(2.0 / (std::numbers::pi * hbar)) * sinc;
}

/// Momentum-space residual at one grid point, for an arbitrary amplitude
/// component. With the shifted potential and E' = E - v0 the eigenfunctions
/// are unchanged and the residual of the true amplitude is zero:
///   r(p) = [p^2/2m - E'] f(p) + (2 pi hbar)^(-1/2) Int U_W(p-p') f(p') dp'.
template <class F>
double momentum_residual_at(const WellSpec& w, double energy, double p, F&& component,
                            double P_conv, double quad_tol) {
    const double hbar = w.units.hbar;
    const double e_shift = energy - w.v0;
    const double step = 2.0 * std::numbers::pi * hbar / w.a;
    std::vector<double> seams{0.0};
    for (double q = step; q < P_conv; q += step) {
        seams.push_back(q);
        seams.push_back(-q);
    }
    auto conv = integrate(
        [&](double pp) { return shifted_potential_ft(w, p - pp) * component(pp); },
        -P_conv, P_conv, quad_tol, seams);
    if (!conv.converged)
        throw convergence_error("momentum_residual_at: convolution quadrature did not converge",
                                conv.value);
    const double kinetic = p * p / (2.0 * w.units.mass) - e_shift;
    return kinetic * component(p) + conv.value / std::sqrt(2.0 * std::numbers::pi * hbar);
}

}  // namespace detail

/// |Int_{-P}^{P} I(p) dp - 1|, the truncated-norm deviation.
inline CheckEntry parseval_check(const BoundState& s, double P, double tolerance = 1e-4,
                                 double quad_tol = 1e-9) {
    MomentRequest req;
    req.s = 0;
    req.P = P;
    req.tol = quad_tol;
    req.include_tail_estimate = false;
    const auto m = momentum_moment(s, req);
    return make_entry(detail::state_tag(s) + ".parseval", m.quadrature.value - 1.0, tolerance);
}

/// Relative difference between the closed-form moment and the truncated
/// momentum integral (tail estimate included). Tolerances follow the
/// cross-representation agreement targets: 1e-3 for s = 2, 2e-2 for s = 4
/// at P = 100.
inline CheckEntry cross_representation_check(const BoundState& s, int order, double P,
                                             double quad_tol = 1e-9, double tolerance = -1.0) {
    if (order != 2 && order != 4)
        throw std::domain_error("cross_representation_check: order must be 2 or 4");
    if (tolerance < 0.0) tolerance = order == 2 ? 1e-3 : 2e-2;
    const double closed = order == 2 ? p2_expectation(s) : p4_expectation(s);
    MomentRequest req;
    req.s = order;
    req.P = P;
    req.tol = quad_tol;
    const auto m = momentum_moment(s, req);
    const double rel = (m.value() - closed) / closed;
    return make_entry(detail::state_tag(s) + ".p" + std::to_string(order) + "_cross_representation",
                      rel, tolerance);
}

/// Max |r(p)| over the grid, normalized by max |p^2/(2m) phi(p)|.
inline CheckEntry integral_equation_residual(const BoundState& s, std::span<const double> p_grid,
                                             double P_conv = 200.0, double tolerance = 1e-3,
                                             double quad_tol = 1e-8) {
    auto component = [&](double p) { return phi_component(s, p); };
    double worst = 0.0;
    double scale = 0.0;
    for (double p : p_grid)
        scale = std::max(scale, std::abs(p * p / (2.0 * s.well.units.mass) * component(p)));
    for (double p : p_grid) {
        const double r = detail::momentum_residual_at(s.well, s.energy, p, component, P_conv, quad_tol);
        worst = std::max(worst, std::abs(r));
    }
    return make_entry(detail::state_tag(s) + ".integral_equation_residual", worst / scale, tolerance);
}

/// Deep-well behaviour along an ascending v0 ladder: the closed-form <p^2>
/// approaches hbar^2 beta^2 with monotonically shrinking relative error and
/// beta_0 approaches pi/a, while <p^4> keeps growing like sqrt(v0).
inline std::vector<CheckEntry> isw_limit_check(double a, std::span<const double> v0_ladder,
                                               UnitSystem units = {}) {
    if (v0_ladder.size() < 2)
        throw std::domain_error("isw_limit_check: need an ascending ladder of at least two depths");
    std::vector<double> p2_err, p4_val, log_v0, log_p4;
    double beta_last = 0.0;
    for (std::size_t i = 0; i < v0_ladder.size(); ++i) {
        if (i > 0 && !(v0_ladder[i] > v0_ladder[i - 1]))
            throw std::domain_error("isw_limit_check: ladder must ascend");
        const WellSpec well{v0_ladder[i], a, units};
        const auto ground = solve_all(well).front();
        const double h2b2 = units.hbar * units.hbar * ground.beta * ground.beta;
        p2_err.push_back(std::abs(p2_expectation(ground) / h2b2 - 1.0));
        p4_val.push_back(p4_expectation(ground));
        log_v0.push_back(std::log(v0_ladder[i]));
        log_p4.push_back(std::log(p4_val.back()));
        beta_last = ground.beta;
    }

    double worst_increase = 0.0;
    double worst_decay = 0.0;
    for (std::size_t i = 1; i < p2_err.size(); ++i) {
        worst_increase = std::max(worst_increase, p2_err[i] / p2_err[i - 1] - 1.0);
        worst_decay = std::max(worst_decay, 1.0 - p4_val[i] / p4_val[i - 1]);
    }
    const auto fit = linear_fit(log_v0, log_p4);

    std::vector<CheckEntry> entries;
    entries.push_back(make_entry("isw_limit.p2_error_decreasing", std::max(0.0, worst_increase), 0.0));
    entries.push_back(make_entry("isw_limit.beta0_to_pi_over_a",
                                 beta_last * a / std::numbers::pi - 1.0, 1e-2));
    entries.push_back(make_entry("isw_limit.p4_growth_exponent", fit.slope - 0.5, 0.05));
    entries.push_back(make_entry("isw_limit.p4_increasing", std::max(0.0, worst_decay), 0.0));
    return entries;
}

/// Log-log slope of the oscillation peaks of a distribution over [pmin, pmax]:
/// samples densely, keeps strict local maxima, fits log I against log p.
/// -6 for the well distribution, -4 for the box one.
template <class F>
double fit_tail_exponent(F&& intensity_fn, double pmin, double pmax, int samples = 7001) {
    std::vector<double> grid(samples), val(samples);
    for (int i = 0; i < samples; ++i) {
        grid[i] = pmin + (pmax - pmin) * i / (samples - 1);
        val[i] = intensity_fn(grid[i]);
    }
    std::vector<double> logp, logi;
    for (int i = 1; i + 1 < samples; ++i) {
        if (val[i] > val[i - 1] && val[i] > val[i + 1] && val[i] > 0.0) {
            logp.push_back(std::log(grid[i]));
            logi.push_back(std::log(val[i]));
        }
    }
    if (logp.size() < 3)
        throw std::domain_error("fit_tail_exponent: too few oscillation peaks in range");
    return linear_fit(logp, logi).slope;
}

struct VerifyOptions {
    double pmax = 100.0;
    double quad_tol = 1e-9;
    double parseval_tol = 1e-4;
    double p2_tol = 1e-3;
    double p4_tol = 2e-2;
    double residual_tol = 1e-3;
    double residual_grid_half = 20.0;
    int residual_grid_points = 81;
    double residual_quad_tol = 1e-8;
    double P_conv = 200.0;
    std::vector<double> v0_ladder{1e2, 1e4, 1e6};
};

/// Runs every check for every bound state of the well, plus the deep-well
/// ladder entries.
inline VerificationReport full_report(const WellSpec& well, const VerifyOptions& opt = {}) {
    VerificationReport report;
    report.well = well;
    const auto states = solve_all(well);

    std::vector<double> grid(opt.residual_grid_points);
    for (int i = 0; i < opt.residual_grid_points; ++i)
        grid[i] = -opt.residual_grid_half +
                  2.0 * opt.residual_grid_half * i / (opt.residual_grid_points - 1);

    for (const auto& s : states) {
        report.checks.push_back(parseval_check(s, opt.pmax, opt.parseval_tol, opt.quad_tol));
        report.checks.push_back(cross_representation_check(s, 2, opt.pmax, opt.quad_tol, opt.p2_tol));
        report.checks.push_back(cross_representation_check(s, 4, opt.pmax, opt.quad_tol, opt.p4_tol));
        report.checks.push_back(integral_equation_residual(s, grid, opt.P_conv, opt.residual_tol,
                                                           opt.residual_quad_tol));
    }
    for (auto& e : isw_limit_check(well.a, opt.v0_ladder, well.units))
        report.checks.push_back(std::move(e));
    return report;
}

}  // namespace fsw
