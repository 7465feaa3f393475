#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fsw/model.hpp"
#include "fsw/momentum.hpp"
#include "fsw/numerics.hpp"
#include "fsw/position.hpp"

namespace fsw {

/// Numerical transform (2 pi hbar)^(-1/2) Int psi(x) exp(-i p x / hbar) dx,
/// real and imaginary parts integrated separately with panel seams at the
/// well edges. The domain is truncated at |x| = a/2 + 40/alpha, where the
/// exterior remainder is below e^-40 of the edge amplitude. This is the
/// independent check the analytic amplitudes are held against.
inline std::complex<double> fourier_oracle(const BoundState& s, double p, double tol = 1e-11) {
    const double hbar = s.well.units.hbar;
    const double half = s.well.a / 2.0;
    const double cut = half + 40.0 / s.alpha;
    const double seams[] = {-half, half};
    auto re = integrate([&](double x) { return psi(s, x).value * std::cos(p * x / hbar); },
                        -cut, cut, tol, seams);
    auto im = integrate([&](double x) { return -psi(s, x).value * std::sin(p * x / hbar); },
                        -cut, cut, tol, seams);
    if (!re.converged || !im.converged)
        throw convergence_error("fourier_oracle: quadrature did not converge", re.value);
    const double root = std::sqrt(2.0 * std::numbers::pi * hbar);
    return {re.value / root, im.value / root};
}

struct MomentRequest {
    int s = 2;          // moment order: 0, 2 or 4
    double P = 100.0;   // truncation half-width of the p integral
    double tol = 1e-9;  // quadrature tolerance
    bool include_tail_estimate = true;
};

/// Quadrature value and the modeled beyond-truncation tail, reported
/// separately so both can be checked.
struct MomentResult {
    QuadratureResult quadrature;
    double tail_estimate = 0.0;
    double value() const { return quadrature.value + tail_estimate; }
};

namespace detail {

inline double int_pow(double p, int s) {
    if (s == 0) return 1.0;
    const double p2 = p * p;
    return s == 2 ? p2 : p2 * p2;
}

/// Panel seams for the oscillatory moment integrands: the removable points
/// at +-hbar*beta plus seams every 2 pi hbar / a, the period of the
/// sin^2/cos^2 oscillation, so the error estimator sees whole oscillations.
inline std::vector<double> moment_seams(double beta_p, double a, double hbar, double P) {
    std::vector<double> seams{0.0, beta_p, -beta_p};
    const double step = 2.0 * std::numbers::pi * hbar / a;
    for (double q = step; q < P; q += step) {
        seams.push_back(q);
        seams.push_back(-q);
    }
    return seams;
}

}  // namespace detail

/// Int_{-P}^{P} p^s I(p) dp. With include_tail_estimate the mean-value tail
/// of the p^-6 envelope beyond P is added: C/P for s = 4 (integrand tail
/// ~ C sin^2/p^2), C/(3 P^3) for s = 2; the s = 0 tail is negligible and
/// not modeled.
inline MomentResult momentum_moment(const BoundState& st, const MomentRequest& req) {
    if (req.s != 0 && req.s != 2 && req.s != 4)
        throw std::domain_error("momentum_moment: moment order must be 0, 2 or 4");
    const double hbar = st.well.units.hbar;
    if (!(req.P > hbar * st.beta))
        throw std::domain_error("momentum_moment: truncation P must exceed hbar*beta");

    const auto seams = detail::moment_seams(hbar * st.beta, st.well.a, hbar, req.P);
    const int order = req.s;
    MomentResult out;
    out.quadrature = integrate(
        [&](double p) { return detail::int_pow(p, order) * intensity(st, p); },
        -req.P, req.P, req.tol, seams);
    if (req.include_tail_estimate) {
        const double env = asymptotic_envelope(st);
        if (req.s == 4)
            out.tail_estimate = env / req.P;
        else if (req.s == 2)
            out.tail_estimate = env / (3.0 * req.P * req.P * req.P);
    }
    return out;
}

/// Same machinery for the box distribution (p^-4 envelope). The s = 2 tail
/// is C/P and the s = 0 tail C/(3 P^3); s = 4 gets no tail because that
/// integral grows without bound in P.
inline MomentResult isw_moment(const IswState& st, int s, double P, double tol = 1e-9,
                               bool include_tail_estimate = true) {
    if (s != 0 && s != 2 && s != 4)
        throw std::domain_error("isw_moment: moment order must be 0, 2 or 4");
    const double hbar = st.units.hbar;
    if (!(P > hbar * st.beta_n))
        throw std::domain_error("isw_moment: truncation P must exceed n pi hbar / a");

    const auto seams = detail::moment_seams(hbar * st.beta_n, st.a, hbar, P);
    MomentResult out;
    out.quadrature = integrate(
        [&](double p) { return detail::int_pow(p, s) * isw_intensity(st, p); },
        -P, P, tol, seams);
    if (include_tail_estimate) {
        const double env = isw_asymptotic_envelope(st);
        if (s == 2)
            out.tail_estimate = env / P;
        else if (s == 0)
            out.tail_estimate = env / (3.0 * P * P * P);
    }
    return out;
}

}  // namespace fsw
